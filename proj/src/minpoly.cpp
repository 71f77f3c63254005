#include "qgw/minpoly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace qgw {

namespace {

using SparseVec = std::map<size_t, FracElem>;

// cost used to prefer cheap pivots
size_t weight(const FracElem& x)
{
    size_t w = x.den_poly().terms().size();
    for (int i = 0; i < 4; ++i) w += x.num().part(i).terms().size() * (i == 0 ? 1 : 2);
    return w;
}

void axpy(SparseVec& v, const FracElem& f, const SparseVec& w)
{
    for (const auto& [k, x] : w) {
        auto it = v.find(k);
        FracElem nv = (it == v.end() ? FracElem() : it->second) - f * x;
        if (nv.is_zero()) {
            if (it != v.end()) v.erase(it);
        } else if (it == v.end()) {
            v.emplace(k, nv);
        } else {
            it->second = nv;
        }
    }
}

SparseVec vectorize(const SMat& m)
{
    SparseVec v;
    const size_t n = m.size();
    for (size_t r = 0; r < n; ++r)
        for (const auto& [c, x] : m.row(r)) v.emplace(r * n + c, FracElem(x));
    return v;
}

// Incremental echelon basis; each row remembers its combination of the inserted vectors.
struct Echelon {
    struct Row {
        size_t pivot;
        SparseVec vec;
        std::vector<FracElem> combo;
    };
    std::vector<Row> rows;

    // Reduces v (the k-th inserted vector). Returns the dependency combo if v is dependent.
    bool insert(SparseVec v, size_t k, std::vector<FracElem>& dependency)
    {
        std::vector<FracElem> combo(k + 1);
        combo[k] = FracElem(1);
        for (const Row& r : rows) {
            auto it = v.find(r.pivot);
            if (it == v.end()) continue;
            FracElem f = it->second / r.vec.at(r.pivot);
            axpy(v, f, r.vec);
            for (size_t j = 0; j < r.combo.size(); ++j)
                if (!r.combo[j].is_zero()) combo[j] -= f * r.combo[j];
        }
        if (v.empty()) {
            dependency = std::move(combo);
            return true;
        }
        size_t best = v.begin()->first, bw = weight(v.begin()->second);
        for (const auto& [i, x] : v) {
            size_t w = weight(x);
            if (w < bw) {
                best = i;
                bw = w;
            }
        }
        rows.push_back({best, std::move(v), std::move(combo)});
        return false;
    }
};

std::vector<CoeffElem> clear_denominators(const Poly& p)
{
    LaurentV d(1);
    for (const auto& c : p)
        if (!c.is_integral()) {
            LaurentV g = LaurentV::gcd(d, c.den_poly());
            d = d * c.den_poly().divexact(g);
        }
    std::vector<CoeffElem> out;
    for (const auto& c : p) out.push_back((c * FracElem(CoeffElem(d))).to_coeff());
    return out;
}

FracElem eval_poly(const Poly& p, const FracElem& x)
{
    FracElem acc;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

// p / (t - x), assuming x is a root
Poly deflate(const Poly& p, const FracElem& x)
{
    Poly q(p.size() - 1);
    FracElem carry;
    for (size_t i = p.size() - 1; i >= 1; --i) {
        carry = p[i] + carry * x;
        q[i - 1] = carry;
    }
    return q;
}

std::vector<FracElem> row_of_power(const SMat& M, size_t row, int k)
{
    const size_t n = M.size();
    std::vector<CoeffElem> v(n);
    v[row] = CoeffElem(1);
    for (int s = 0; s < k; ++s) {
        std::vector<CoeffElem> w(n);
        for (size_t i = 0; i < n; ++i) {
            if (v[i].is_zero()) continue;
            for (const auto& [c, x] : M.row(i)) w[c] += v[i] * x;
        }
        v = std::move(w);
    }
    std::vector<FracElem> out(v.begin(), v.end());
    return out;
}

}  // namespace

TensorMatrix braiding(const TensorMatrix& R)
{
    return matrix_mul(permutation(R.dim), R);
}

MinPolyResult minpoly_generic(const SMat& M)
{
    const size_t n = M.size();
    Echelon ech;
    SMat pw = SMat::identity(n);
    std::vector<FracElem> dep;
    for (size_t k = 0;; ++k) {
        if (ech.insert(vectorize(pw), k, dep)) break;
        pw = pw * M;
    }
    MinPolyResult r;
    r.degree = static_cast<int>(dep.size()) - 1;
    r.coefficients = dep;
    r.elementary_symmetric = deltas_from_poly(r.coefficients);
    return r;
}

MinPolyResult minpoly_generic(const TensorMatrix& M)
{
    return minpoly_generic(M.m);
}

MinPolyResult minpoly_probe(const TensorMatrix& M, int degree, const std::vector<std::pair<int, int>>& probe_rows,
                            bool extend)
{
    if (degree < 1) throw std::invalid_argument("degree must be positive");
    const size_t n = M.m.size();
    std::vector<std::pair<int, int>> rows = probe_rows;
    std::vector<std::pair<int, int>> order;
    for (int a = 1; a <= M.dim; ++a)
        for (int b = 1; b <= M.dim; ++b) order.emplace_back(a, b);

    // Equation per (row, column): sum_{k=1..d} (-1)^k Delta_k (M^{d-k})_{row,c} = -(M^d)_{row,c}
    std::vector<std::vector<FracElem>> eqs;  // d coefficients + rhs
    auto add_row = [&](std::pair<int, int> ab) {
        size_t row = M.flat(ab.first, ab.second);
        std::vector<std::vector<FracElem>> pw;
        for (int k = 0; k <= degree; ++k) pw.push_back(row_of_power(M.m, row, k));
        for (size_t c = 0; c < n; ++c) {
            std::vector<FracElem> e(degree + 1);
            bool any = false;
            for (int k = 1; k <= degree; ++k) {
                FracElem v = pw[degree - k][c];
                e[k - 1] = (k % 2 ? -v : v);
                any = any || !v.is_zero();
            }
            e[degree] = -pw[degree][c];
            any = any || !e[degree].is_zero();
            if (any) eqs.push_back(std::move(e));
        }
    };

    // Gaussian elimination on the augmented system; returns rank of the coefficient part.
    auto solve = [&](std::vector<FracElem>& sol) -> int {
        auto a = eqs;
        int rank = 0;
        std::vector<int> pivcol;
        for (int col = 0; col < degree; ++col) {
            int best = -1;
            for (size_t r = rank; r < a.size(); ++r)
                if (!a[r][col].is_zero() && (best < 0 || weight(a[r][col]) < weight(a[best][col])))
                    best = static_cast<int>(r);
            if (best < 0) continue;
            std::swap(a[rank], a[best]);
            FracElem inv = a[rank][col].inv();
            for (auto& x : a[rank]) x = x * inv;
            for (size_t r = 0; r < a.size(); ++r) {
                if (static_cast<int>(r) == rank || a[r][col].is_zero()) continue;
                FracElem f = a[r][col];
                for (int c = col; c <= degree; ++c) a[r][c] -= f * a[rank][c];
            }
            pivcol.push_back(col);
            ++rank;
        }
        for (size_t r = rank; r < a.size(); ++r)
            if (!a[r][degree].is_zero())
                throw InconsistentSystem("probe equations are inconsistent; the degree hypothesis is wrong");
        if (rank == degree) {
            sol.assign(degree, FracElem());
            for (int r = 0; r < rank; ++r) sol[pivcol[r]] = a[r][degree];
        }
        return rank;
    };

    for (const auto& ab : rows) add_row(ab);
    std::vector<FracElem> sol;
    int rank = solve(sol);
    size_t next = 0;
    while (rank < degree) {
        if (!extend)
            throw UnderdeterminedSystem("probe rows determine only " + std::to_string(rank) + " of " +
                                        std::to_string(degree) + " symmetric functions");
        while (next < order.size() && std::find(rows.begin(), rows.end(), order[next]) != rows.end()) ++next;
        if (next == order.size()) throw UnderdeterminedSystem("all rows used and the system is still underdetermined");
        rows.push_back(order[next]);
        add_row(order[next]);
        rank = solve(sol);
    }

    MinPolyResult r;
    r.degree = degree;
    r.elementary_symmetric = sol;
    r.coefficients = poly_from_deltas(sol);
    r.probe_rows_used = rows;
    if (!annihilates(M.m, r.coefficients))
        throw InconsistentSystem("solved polynomial does not annihilate the matrix; the degree hypothesis is wrong");
    return r;
}

std::vector<CoeffElem> factor_monomial_roots(const Poly& p0, int bound)
{
    Poly p = p0;
    std::vector<CoeffElem> roots;
    for (int k = bound; k >= -bound && p.size() > 1; --k)
        for (int s : {1, -1}) {
            CoeffElem x = LaurentV::mono(k, s);
            while (p.size() > 1 && eval_poly(p, x).is_zero()) {
                roots.push_back(x);
                p = deflate(p, x);
            }
        }
    if (p.size() > 1)
        throw NonMonomialRoot("polynomial has a factor of degree " + std::to_string(p.size() - 1) +
                              " without roots of the form +-q^{k/4}, |k| <= " + std::to_string(bound));
    if (poly_from_roots(roots) != p0) throw NonMonomialRoot("root product does not reproduce the polynomial");
    return roots;
}

void attach_roots(MinPolyResult& r, int bound)
{
    r.eigenvalues = factor_monomial_roots(r.coefficients, bound);
}

Poly poly_from_roots(const std::vector<CoeffElem>& roots)
{
    Poly p{FracElem(1)};
    for (const auto& x : roots) {
        Poly q(p.size() + 1);
        for (size_t i = 0; i < p.size(); ++i) {
            q[i + 1] += p[i];
            q[i] -= p[i] * FracElem(x);
        }
        p = std::move(q);
    }
    return p;
}

std::vector<FracElem> deltas_from_poly(const Poly& p)
{
    const size_t d = p.size() - 1;
    std::vector<FracElem> out;
    for (size_t k = 1; k <= d; ++k) out.push_back(k % 2 ? -p[d - k] : p[d - k]);
    return out;
}

Poly poly_from_deltas(const std::vector<FracElem>& deltas)
{
    const size_t d = deltas.size();
    Poly p(d + 1);
    p[d] = FracElem(1);
    for (size_t k = 1; k <= d; ++k) p[d - k] = k % 2 ? -deltas[k - 1] : deltas[k - 1];
    return p;
}

std::vector<CoeffElem> elementary_symmetric(const std::vector<CoeffElem>& roots)
{
    std::vector<CoeffElem> e(roots.size() + 1);
    e[0] = CoeffElem(1);
    for (const auto& x : roots)
        for (size_t k = roots.size(); k >= 1; --k) e[k] += e[k - 1] * x;
    return {e.begin() + 1, e.end()};
}

bool annihilates(const SMat& M, const Poly& p)
{
    auto c = clear_denominators(p);
    const size_t n = M.size();
    SMat acc(n);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * M + SMat::scalar(n, *it);
    return acc.is_zero();
}

bool annihilates_roots(const SMat& M, const std::vector<CoeffElem>& roots)
{
    const size_t n = M.size();
    SMat acc = SMat::identity(n);
    for (const auto& x : roots) acc = acc * (M - SMat::scalar(n, x));
    return acc.is_zero();
}

bool is_minimal(const SMat& M, const std::vector<CoeffElem>& roots)
{
    for (size_t i = 0; i < roots.size(); ++i) {
        if (std::find(roots.begin(), roots.begin() + i, roots[i]) != roots.begin() + i) continue;
        std::vector<CoeffElem> rest = roots;
        rest.erase(rest.begin() + i);
        if (annihilates_roots(M, rest)) return false;
    }
    return true;
}

std::string poly_str(const Poly& p)
{
    std::ostringstream os;
    const size_t d = p.size() - 1;
    bool first = true;
    for (size_t k = d + 1; k-- > 0;) {
        if (p[k].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        std::string t = k == 0 ? "" : (k == 1 ? "t" : "t^" + std::to_string(k));
        if (p[k] == FracElem(1) && k > 0) os << t;
        else os << "(" << p[k].str() << ")" << (k ? " " + t : "");
    }
    return first ? "0" : os.str();
}

json to_json(const MinPolyResult& r)
{
    json j;
    j["degree"] = r.degree;
    json c = json::array();
    for (const auto& x : r.coefficients) c.push_back(to_json(x));
    j["coefficients"] = c;
    j["polynomial"] = poly_str(r.coefficients);
    json d = json::array(), ds = json::array();
    for (const auto& x : r.elementary_symmetric) {
        d.push_back(to_json(x));
        ds.push_back(x.str());
    }
    j["delta"] = d;
    j["delta_text"] = ds;
    json e = json::array(), es = json::array();
    for (const auto& x : r.eigenvalues) {
        e.push_back(to_json(x));
        es.push_back(x.str());
    }
    j["eigenvalues"] = e;
    j["eigenvalues_text"] = es;
    if (!r.probe_rows_used.empty()) {
        json pr = json::array();
        for (auto [a, b] : r.probe_rows_used) pr.push_back({a, b});
        j["probe_rows"] = pr;
    }
    return j;
}

}  // namespace qgw
