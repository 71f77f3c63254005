#include "qgw/tensor.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <map>
#include <sstream>

#include "qgw/kernels.hpp"

namespace qgw {

namespace {
std::atomic<Exec> g_exec{Exec::Parallel};
}

Exec default_exec()
{
    return g_exec.load();
}

void set_default_exec(Exec e)
{
    g_exec.store(e);
}

// ---- SMat ----

SMat SMat::identity(size_t n)
{
    return scalar(n, CoeffElem(1));
}

SMat SMat::scalar(size_t n, const CoeffElem& c)
{
    SMat m(n);
    if (!c.is_zero())
        for (size_t i = 0; i < n; ++i)
            m.rows_[i].emplace_back(static_cast<uint32_t>(i), c);
    return m;
}

SMat SMat::from_triplets(size_t n, std::vector<std::tuple<uint32_t, uint32_t, CoeffElem>> t)
{
    std::sort(t.begin(), t.end(), [](const auto& a, const auto& b) {
        return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
    });
    SMat m(n);
    for (auto& [r, c, v] : t) {
        if (r >= n || c >= n)
            throw DimensionMismatch("triplet index out of range");
        auto& row = m.rows_[r];
        if (!row.empty() && row.back().first == c)
            row.back().second += v;
        else
            row.emplace_back(c, std::move(v));
    }
    for (auto& row : m.rows_)
        row.erase(std::remove_if(row.begin(), row.end(),
                                 [](const Entry& e) { return e.second.is_zero(); }),
                  row.end());
    return m;
}

const CoeffElem* SMat::find(size_t r, size_t c) const
{
    const Row& row = rows_.at(r);
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const Entry& e, size_t col) { return e.first < col; });
    if (it != row.end() && it->first == c)
        return &it->second;
    return nullptr;
}

CoeffElem SMat::get(size_t r, size_t c) const
{
    const CoeffElem* p = find(r, c);
    return p ? *p : CoeffElem();
}

void SMat::set(size_t r, size_t c, const CoeffElem& v)
{
    if (c >= n_)
        throw DimensionMismatch("column index out of range");
    Row& row = rows_.at(r);
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const Entry& e, size_t col) { return e.first < col; });
    bool present = it != row.end() && it->first == c;
    if (v.is_zero()) {
        if (present)
            row.erase(it);
    } else if (present) {
        it->second = v;
    } else {
        row.insert(it, Entry(static_cast<uint32_t>(c), v));
    }
}

size_t SMat::nnz() const
{
    size_t s = 0;
    for (const auto& r : rows_)
        s += r.size();
    return s;
}

bool SMat::is_diagonal() const
{
    for (size_t i = 0; i < n_; ++i)
        for (const auto& e : rows_[i])
            if (e.first != i)
                return false;
    return true;
}

SMat SMat::transposed() const
{
    SMat t(n_);
    for (size_t i = 0; i < n_; ++i)
        for (const auto& [c, v] : rows_[i])
            t.rows_[c].emplace_back(static_cast<uint32_t>(i), v);
    return t;
}

SMat SMat::scaled(const CoeffElem& c) const
{
    SMat r(n_);
    if (c.is_zero())
        return r;
    for (size_t i = 0; i < n_; ++i) {
        r.rows_[i].reserve(rows_[i].size());
        for (const auto& [col, v] : rows_[i]) {
            CoeffElem x = v * c;
            if (!x.is_zero())
                r.rows_[i].emplace_back(col, std::move(x));
        }
    }
    return r;
}

SMat operator+(const SMat& a, const SMat& b)
{
    if (a.n_ != b.n_)
        throw DimensionMismatch("sum of differently sized matrices");
    SMat r(a.n_);
    for (size_t i = 0; i < a.n_; ++i) {
        const auto& x = a.rows_[i];
        const auto& y = b.rows_[i];
        auto& out = r.rows_[i];
        size_t p = 0, q = 0;
        while (p < x.size() || q < y.size()) {
            if (q == y.size() || (p < x.size() && x[p].first < y[q].first)) {
                out.push_back(x[p++]);
            } else if (p == x.size() || y[q].first < x[p].first) {
                out.push_back(y[q++]);
            } else {
                CoeffElem s = x[p].second + y[q].second;
                if (!s.is_zero())
                    out.emplace_back(x[p].first, std::move(s));
                ++p;
                ++q;
            }
        }
    }
    return r;
}

SMat operator-(const SMat& a, const SMat& b)
{
    return a + (-b);
}

SMat operator*(const SMat& a, const SMat& b)
{
    return spgemm(a, b, default_exec());
}

bool operator==(const SMat& a, const SMat& b)
{
    return a.n_ == b.n_ && a.rows_ == b.rows_;
}

std::pair<long, long> SMat::first_difference(const SMat& a, const SMat& b)
{
    SMat d = a - b;
    for (size_t i = 0; i < d.n_; ++i)
        if (!d.rows_[i].empty())
            return {static_cast<long>(i), static_cast<long>(d.rows_[i].front().first)};
    return {-1, -1};
}

SMat kron(const SMat& a, const SMat& b)
{
    const size_t nb = b.size();
    std::vector<std::tuple<uint32_t, uint32_t, CoeffElem>> t;
    for (size_t i = 0; i < a.size(); ++i)
        for (const auto& [j, x] : a.row(i))
            for (size_t k = 0; k < nb; ++k)
                for (const auto& [l, y] : b.row(k))
                    t.emplace_back(static_cast<uint32_t>(i * nb + k),
                                   static_cast<uint32_t>(j * nb + l), x * y);
    return SMat::from_triplets(a.size() * nb, std::move(t));
}

// Gauss-Jordan on [M | I] over the fraction field with sparse rows. Monomial pivots
// are preferred, so triangular-up-to-permutation inputs never leave the Laurent ring.
SMat invert(const SMat& m)
{
    const size_t n = m.size();
    using FRow = std::map<uint32_t, FracElem>;
    std::vector<FRow> a(n), b(n);
    for (size_t i = 0; i < n; ++i) {
        for (const auto& [c, v] : m.row(i))
            a[i].emplace(c, FracElem(v));
        b[i].emplace(static_cast<uint32_t>(i), FracElem(1));
    }
    std::vector<char> used(n, 0);
    std::vector<size_t> pivot_row(n);
    auto is_unit = [](const FracElem& x) { return x.is_integral() && x.num().is_monomial(); };

    for (size_t c = 0; c < n; ++c) {
        long best = -1;
        bool best_unit = false;
        size_t best_len = 0;
        for (size_t r = 0; r < n; ++r) {
            if (used[r])
                continue;
            auto it = a[r].find(static_cast<uint32_t>(c));
            if (it == a[r].end())
                continue;
            bool u = is_unit(it->second);
            size_t len = a[r].size() + b[r].size();
            if (best < 0 || (u && !best_unit) || (u == best_unit && len < best_len)) {
                best = static_cast<long>(r);
                best_unit = u;
                best_len = len;
            }
        }
        if (best < 0)
            throw SingularMatrix("matrix is singular (no pivot in column " + std::to_string(c + 1) +
                                 ")");
        const size_t p = static_cast<size_t>(best);
        used[p] = 1;
        pivot_row[c] = p;
        FracElem inv = a[p].at(static_cast<uint32_t>(c)).inv();
        for (auto& [k, v] : a[p])
            v = v * inv;
        for (auto& [k, v] : b[p])
            v = v * inv;
        for (size_t r = 0; r < n; ++r) {
            if (r == p)
                continue;
            auto it = a[r].find(static_cast<uint32_t>(c));
            if (it == a[r].end())
                continue;
            FracElem f = it->second;
            for (const auto& [k, v] : a[p]) {
                FracElem x = a[r][k] - f * v;
                if (x.is_zero())
                    a[r].erase(k);
                else
                    a[r][k] = x;
            }
            for (const auto& [k, v] : b[p]) {
                FracElem x = b[r][k] - f * v;
                if (x.is_zero())
                    b[r].erase(k);
                else
                    b[r][k] = x;
            }
        }
    }
    SMat out(n);
    for (size_t c = 0; c < n; ++c)
        for (const auto& [k, v] : b[pivot_row[c]])
            out.row(c).emplace_back(k, v.to_coeff());
    return out;
}

// ---- TensorMatrix / TripleMatrix ----

TensorMatrix::TensorMatrix(int d, SMat mat) : dim(d), m(std::move(mat))
{
    if (m.size() != static_cast<size_t>(d) * d)
        throw DimensionMismatch("tensor matrix size does not match dim^2");
}

TripleMatrix::TripleMatrix(int d, SMat mat) : dim(d), m(std::move(mat))
{
    if (m.size() != static_cast<size_t>(d) * d * d)
        throw DimensionMismatch("triple matrix size does not match dim^3");
}

TensorMatrix identity(int dim)
{
    return TensorMatrix(dim, SMat::identity(static_cast<size_t>(dim) * dim));
}

TensorMatrix permutation(int dim)
{
    TensorMatrix P(dim);
    for (int i = 1; i <= dim; ++i)
        for (int j = 1; j <= dim; ++j)
            P.set(i, j, j, i, CoeffElem(1));
    return P;
}

TensorMatrix k0(int dim)
{
    TensorMatrix K(dim);
    for (int i = 1; i <= dim; ++i)
        for (int k = 1; k <= dim; ++k)
            K.set(i, i, k, k, CoeffElem(1));
    return K;
}

namespace {

// Move entry M^{ab}_{cd} to the position chosen by f(a,b,c,d) -> (row pair, col pair).
template <typename F>
TensorMatrix remap(const TensorMatrix& M, F f)
{
    const int n = M.dim;
    std::vector<std::tuple<uint32_t, uint32_t, CoeffElem>> t;
    for (size_t r = 0; r < M.m.size(); ++r) {
        int a = static_cast<int>(r) / n + 1, b = static_cast<int>(r) % n + 1;
        for (const auto& [col, v] : M.m.row(r)) {
            int c = static_cast<int>(col) / n + 1, d = static_cast<int>(col) % n + 1;
            auto [i, k, j, l] = f(a, b, c, d);
            t.emplace_back(static_cast<uint32_t>(M.flat(i, k)), static_cast<uint32_t>(M.flat(j, l)),
                           v);
        }
    }
    return TensorMatrix(n, SMat::from_triplets(M.m.size(), std::move(t)));
}

void same_dim(int a, int b)
{
    if (a != b)
        throw DimensionMismatch("tensor matrices over different spaces");
}

}  // namespace

TensorMatrix transpose_t(const TensorMatrix& M)
{
    return remap(M, [](int a, int b, int c, int d) { return std::tuple(c, d, a, b); });
}

// (M^{t1})^{ij}_{kl} = M^{kj}_{il}
TensorMatrix transpose_t1(const TensorMatrix& M)
{
    return remap(M, [](int a, int b, int c, int d) { return std::tuple(c, b, a, d); });
}

// (M^{t2})^{ij}_{kl} = M^{il}_{kj}
TensorMatrix transpose_t2(const TensorMatrix& M)
{
    return remap(M, [](int a, int b, int c, int d) { return std::tuple(a, d, c, b); });
}

TensorMatrix matrix_mul(const TensorMatrix& a, const TensorMatrix& b)
{
    same_dim(a.dim, b.dim);
    return TensorMatrix(a.dim, a.m * b.m);
}

TensorMatrix matrix_add(const TensorMatrix& a, const TensorMatrix& b)
{
    same_dim(a.dim, b.dim);
    return TensorMatrix(a.dim, a.m + b.m);
}

TensorMatrix matrix_sub(const TensorMatrix& a, const TensorMatrix& b)
{
    same_dim(a.dim, b.dim);
    return TensorMatrix(a.dim, a.m - b.m);
}

TensorMatrix matrix_scale(const TensorMatrix& a, const CoeffElem& c)
{
    return TensorMatrix(a.dim, a.m.scaled(c));
}

TensorMatrix invert(const TensorMatrix& M)
{
    return TensorMatrix(M.dim, invert(M.m));
}

TensorMatrix conjugate_p(const TensorMatrix& M)
{
    return remap(M, [](int a, int b, int c, int d) { return std::tuple(b, a, d, c); });
}

namespace {

template <typename F>
TripleMatrix embed(const TensorMatrix& M, F place)
{
    const int n = M.dim;
    TripleMatrix T;
    T.dim = n;
    std::vector<std::tuple<uint32_t, uint32_t, CoeffElem>> t;
    for (size_t r = 0; r < M.m.size(); ++r) {
        int a = static_cast<int>(r) / n + 1, b = static_cast<int>(r) % n + 1;
        for (const auto& [col, v] : M.m.row(r)) {
            int c = static_cast<int>(col) / n + 1, d = static_cast<int>(col) % n + 1;
            for (int s = 1; s <= n; ++s) {
                auto [row, cl] = place(a, b, c, d, s);
                t.emplace_back(static_cast<uint32_t>(T.flat(row[0], row[1], row[2])),
                               static_cast<uint32_t>(T.flat(cl[0], cl[1], cl[2])), v);
            }
        }
    }
    T.m = SMat::from_triplets(static_cast<size_t>(n) * n * n, std::move(t));
    return T;
}

using Idx3 = std::array<int, 3>;

}  // namespace

TripleMatrix embed12(const TensorMatrix& M)
{
    return embed(M, [](int a, int b, int c, int d, int s) {
        return std::pair(Idx3{a, b, s}, Idx3{c, d, s});
    });
}

TripleMatrix embed13(const TensorMatrix& M)
{
    return embed(M, [](int a, int b, int c, int d, int s) {
        return std::pair(Idx3{a, s, b}, Idx3{c, s, d});
    });
}

TripleMatrix embed23(const TensorMatrix& M)
{
    return embed(M, [](int a, int b, int c, int d, int s) {
        return std::pair(Idx3{s, a, b}, Idx3{s, c, d});
    });
}

TripleMatrix triple_mul(const TripleMatrix& a, const TripleMatrix& b)
{
    same_dim(a.dim, b.dim);
    return TripleMatrix(a.dim, a.m * b.m);
}

SMat trace2(const TensorMatrix& M)
{
    const int n = M.dim;
    std::vector<std::tuple<uint32_t, uint32_t, CoeffElem>> t;
    for (size_t r = 0; r < M.m.size(); ++r) {
        int i = static_cast<int>(r) / n, a = static_cast<int>(r) % n;
        for (const auto& [col, v] : M.m.row(r)) {
            int j = static_cast<int>(col) / n, b = static_cast<int>(col) % n;
            if (a == b)
                t.emplace_back(i, j, v);
        }
    }
    return SMat::from_triplets(n, std::move(t));
}

TripleMatrix qybe_residual(const TensorMatrix& R, Exec e)
{
    TripleMatrix R12 = embed12(R), R13 = embed13(R), R23 = embed23(R);
    SMat lhs = triple_product(R12.m, R13.m, R23.m, e);
    SMat rhs = triple_product(R23.m, R13.m, R12.m, e);
    return TripleMatrix(R.dim, lhs - rhs);
}

// ---- serialization ----

json to_json(const SMat& m)
{
    json entries = json::array();
    for (size_t r = 0; r < m.size(); ++r)
        for (const auto& [c, v] : m.row(r))
            entries.push_back({{"row", r + 1}, {"col", c + 1}, {"coeff", to_json(v)}});
    return json{{"size", m.size()}, {"entries", entries}};
}

SMat smat_from_json(const json& j)
{
    size_t n = j.at("size").get<size_t>();
    std::vector<std::tuple<uint32_t, uint32_t, CoeffElem>> t;
    for (const auto& e : j.at("entries"))
        t.emplace_back(e.at("row").get<uint32_t>() - 1, e.at("col").get<uint32_t>() - 1,
                       coeff_from_json(e.at("coeff")));
    return SMat::from_triplets(n, std::move(t));
}

json to_json(const TensorMatrix& M)
{
    json entries = json::array();
    const int n = M.dim;
    for (size_t r = 0; r < M.m.size(); ++r)
        for (const auto& [c, v] : M.m.row(r))
            entries.push_back({{"row", {r / n + 1, r % n + 1}},
                               {"col", {c / n + 1, c % n + 1}},
                               {"coeff", to_json(v)}});
    return json{{"dim", n}, {"entries", entries}};
}

TensorMatrix tensor_from_json(const json& j)
{
    int n = j.at("dim").get<int>();
    if (n < 1)
        throw DimensionMismatch("dim must be positive");
    TensorMatrix M(n);
    std::vector<std::tuple<uint32_t, uint32_t, CoeffElem>> t;
    for (const auto& e : j.at("entries")) {
        auto row = e.at("row").get<std::vector<int>>();
        auto col = e.at("col").get<std::vector<int>>();
        if (row.size() != 2 || col.size() != 2)
            throw DimensionMismatch("tensor entry needs 2-element index pairs");
        for (int x : {row[0], row[1], col[0], col[1]})
            if (x < 1 || x > n)
                throw DimensionMismatch("tensor index out of range");
        t.emplace_back(static_cast<uint32_t>(M.flat(row[0], row[1])),
                       static_cast<uint32_t>(M.flat(col[0], col[1])), coeff_from_json(e.at("coeff")));
    }
    M.m = SMat::from_triplets(M.m.size(), std::move(t));
    return M;
}

json to_json(const TripleMatrix& M)
{
    json entries = json::array();
    const size_t n = M.dim;
    for (size_t r = 0; r < M.m.size(); ++r)
        for (const auto& [c, v] : M.m.row(r))
            entries.push_back({{"row", {r / (n * n) + 1, (r / n) % n + 1, r % n + 1}},
                               {"col", {c / (n * n) + 1, (c / n) % n + 1, c % n + 1}},
                               {"coeff", to_json(v)}});
    return json{{"dim", M.dim}, {"entries", entries}};
}

TripleMatrix triple_from_json(const json& j)
{
    int n = j.at("dim").get<int>();
    TripleMatrix T;
    T.dim = n;
    std::vector<std::tuple<uint32_t, uint32_t, CoeffElem>> t;
    for (const auto& e : j.at("entries")) {
        auto row = e.at("row").get<std::vector<int>>();
        auto col = e.at("col").get<std::vector<int>>();
        if (row.size() != 3 || col.size() != 3)
            throw DimensionMismatch("triple entry needs 3-element indices");
        t.emplace_back(static_cast<uint32_t>(T.flat(row[0], row[1], row[2])),
                       static_cast<uint32_t>(T.flat(col[0], col[1], col[2])),
                       coeff_from_json(e.at("coeff")));
    }
    T.m = SMat::from_triplets(static_cast<size_t>(n) * n * n, std::move(t));
    return T;
}

std::string fingerprint(const SMat& m)
{
    // FNV-1a over the canonical JSON text
    std::string s = to_json(m).dump();
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

}  // namespace qgw
