#include "qgw/rmatrix.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace qgw {

Letter parse_letter(const std::string& s)
{
    Letter l;
    size_t p = 0;
    if (s.empty() || (s[0] != 'E' && s[0] != 'F'))
        throw std::invalid_argument("bad generator symbol: " + s);
    l.kind = s[0];
    p = 1;
    size_t q = p;
    while (q < s.size() && std::isdigit(static_cast<unsigned char>(s[q]))) ++q;
    if (q == p) throw std::invalid_argument("missing generator index: " + s);
    l.index = std::stoi(s.substr(p, q - p));
    if (q == s.size()) return l;
    if (s[q] != '^') throw std::invalid_argument("bad generator symbol: " + s);
    std::string e = s.substr(q + 1);
    if (e.size() > 2 && e.front() == '(' && e.back() == ')') {
        l.divided = true;
        e = e.substr(1, e.size() - 2);
    }
    if (e.empty() || !std::all_of(e.begin(), e.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw std::invalid_argument("bad exponent: " + s);
    l.power = std::stoi(e);
    return l;
}

std::string letter_str(const Letter& l)
{
    std::string s(1, l.kind);
    s += std::to_string(l.index);
    if (l.divided) s += "^(" + std::to_string(l.power) + ")";
    else if (l.power != 1) s += "^" + std::to_string(l.power);
    return s;
}

namespace {

std::vector<Letter> parse_word(const std::string& w)
{
    std::vector<Letter> out;
    size_t i = 0;
    while (i < w.size()) {
        if (w[i] == ' ') {
            ++i;
            continue;
        }
        size_t j = i + 1;
        while (j < w.size() && std::isdigit(static_cast<unsigned char>(w[j]))) ++j;
        if (j < w.size() && w[j] == '^') {
            ++j;
            if (j < w.size() && w[j] == '(') {
                while (j < w.size() && w[j] != ')') ++j;
                ++j;
            } else {
                while (j < w.size() && std::isdigit(static_cast<unsigned char>(w[j]))) ++j;
            }
        }
        out.push_back(parse_letter(w.substr(i, j - i)));
        i = j;
    }
    return out;
}

int vexp_of(const Rational& e)
{
    Rational x = e * 4;
    if (x.get_den() != 1) throw DomainError("exponent is not a quarter-integer: " + rational_str(e));
    return static_cast<int>(x.get_num().get_si());
}

Weight weight_diff(const Weight& a, const Weight& b)
{
    Weight r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

SMat weight_form(const ModuleData& m)
{
    const size_t n = static_cast<size_t>(m.dim);
    std::vector<std::tuple<uint32_t, uint32_t, CoeffElem>> t;
    for (int a = 1; a <= m.dim; ++a)
        for (int b = 1; b <= m.dim; ++b) {
            size_t f = static_cast<size_t>(a - 1) * n + (b - 1);
            t.emplace_back(f, f, CoeffElem::qpow(m.weight_pairing(a, b)));
        }
    return SMat::from_triplets(n * n, std::move(t));
}

}  // namespace

SMat eval_word(const ModuleData& m, const std::vector<Letter>& word)
{
    SMat out = SMat::identity(static_cast<size_t>(m.dim));
    for (const Letter& l : word) {
        if (l.index < 1 || l.index > m.cartan.rank)
            throw std::invalid_argument("generator " + letter_str(l) + " not in module " + m.name);
        const SMat& g = (l.kind == 'E' ? m.E : m.F)[l.index - 1];
        SMat p = SMat::identity(g.size());
        for (int k = 0; k < l.power; ++k) p = p * g;
        if (l.divided) {
            LaurentV f = qfactorial_base(l.power, vexp_of(m.cartan.d[l.index - 1]));
            SMat d(p.size());
            for (size_t r = 0; r < p.size(); ++r)
                for (const auto& [c, v] : p.row(r)) d.set(r, c, v.divexact(f));
            p = std::move(d);
        }
        out = out * p;
    }
    return out;
}

SMat eval_root_vector(const ModuleData& m, const RootVectorSpec& spec, Polarity pol)
{
    const auto& terms = pol == Polarity::E ? spec.E_terms : spec.F_terms;
    SMat acc(static_cast<size_t>(m.dim));
    for (const WordTerm& t : terms) acc = acc + eval_word(m, t.word).scaled(t.coeff);
    for (size_t r = 0; r < acc.size(); ++r)
        for (const auto& [c, v] : acc.row(r)) {
            Weight shift = weight_diff(m.weights[r], m.weights[c]);
            Weight want = spec.root;
            if (pol == Polarity::F)
                for (auto& x : want) x = -x;
            if (shift != want) {
                std::ostringstream os;
                os << (pol == Polarity::E ? "E" : "F") << "-vector for " << spec.name << " maps v" << c + 1
                   << " to v" << r + 1 << " (weight shift " << weight_str(shift) << ", expected "
                   << weight_str(want) << ")";
                throw GradingError(os.str());
            }
        }
    return acc;
}

SMat qexp_truncated(const SMat& x, const Rational& qbeta_exponent)
{
    const int e = vexp_of(qbeta_exponent);
    const size_t n = x.size();
    SMat sum = SMat::identity(n);
    SMat pw = SMat::identity(n);
    for (size_t r = 1;; ++r) {
        pw = pw * x;
        if (pw.is_zero()) return sum;
        if (r > n * n) throw DomainError("q-exponential argument is not nilpotent");
        const long rr = static_cast<long>(r);
        LaurentV num = LaurentV::mono(e * static_cast<int>(rr * (rr + 1) / 2));
        LaurentV den = qfactorial_base(static_cast<int>(r), e);
        SMat term(n);
        for (size_t i = 0; i < n; ++i)
            for (const auto& [c, v] : pw.row(i)) term.set(i, c, v.scaled(num).divexact(den));
        sum = sum + term;
    }
}

RMatrixBundle build_rvv(const ModuleData& m, const std::vector<RootVectorSpec>& roots, BuildOptions opts)
{
    const size_t n2 = static_cast<size_t>(m.dim) * m.dim;
    SMat prod = SMat::identity(n2);
    for (const RootVectorSpec& spec : roots) {
        SMat e = eval_root_vector(m, spec, Polarity::E);
        SMat f = eval_root_vector(m, spec, Polarity::F);
        const int qe = vexp_of(spec.qbeta_exponent);
        CoeffElem scale = CoeffElem(1) - CoeffElem(LaurentV::mono(-2 * qe));
        prod = prod * qexp_truncated(kron(e, f).scaled(scale), spec.qbeta_exponent);
    }
    RMatrixBundle b;
    b.module = m;
    b.positive_root_order = roots;
    b.r_std = TensorMatrix(m.dim, weight_form(m) * prod);
    b.r_paper = conjugate_p(b.r_std);
    if (opts.require_qybe) {
        size_t nz = qybe_residual(b.r_std).m.nnz();
        if (nz != 0)
            throw BuildError("QYBE fails for " + m.name + " (" + std::to_string(nz) +
                             " nonzero residual entries); the root data is inconsistent");
    }
    return b;
}

BundleChecks verify_bundle(const RMatrixBundle& b)
{
    BundleChecks c;
    std::ostringstream why;
    c.qybe_residual_nnz = qybe_residual(b.r_std).m.nnz();
    c.qybe_std = c.qybe_residual_nnz == 0;
    c.qybe_paper = qybe_residual(b.r_paper).m.nnz() == 0;
    if (!c.qybe_std) why << "QYBE residual (std) has " << c.qybe_residual_nnz << " entries; ";
    if (!c.qybe_paper) why << "QYBE residual (paper) nonzero; ";

    const SMat& R = b.r_paper.m;
    c.triangular = true;
    for (size_t r = 0; r < R.size() && c.triangular; ++r)
        for (const auto& e : R.row(r))
            if (e.first < r) {
                c.triangular = false;
                why << "entry below the diagonal at (" << r + 1 << "," << e.first + 1 << "); ";
                break;
            }

    const int n = b.r_paper.dim;
    c.diagonal_law = true;
    for (int i = 1; i <= n && c.diagonal_law; ++i)
        for (int j = 1; j <= n; ++j)
            if (b.r_paper.at(i, j, i, j) != CoeffElem::qpow(b.module.weight_pairing(i, j))) {
                c.diagonal_law = false;
                why << "diagonal (" << i << j << "," << i << j << ") differs from q^(mu_i,mu_j); ";
                break;
            }

    c.ja_ai_pattern = true;
    for (int a = 1; a <= n && c.ja_ai_pattern; ++a)
        for (int i = 1; i <= n && c.ja_ai_pattern; ++i)
            for (int j = 1; j <= n; ++j)
                if (i != j && !b.r_paper.at(j, a, a, i).is_zero()) {
                    c.ja_ai_pattern = false;
                    why << "R^{" << j << a << "}_{" << a << i << "} nonzero; ";
                    break;
                }
    c.detail = why.str();
    return c;
}

namespace {

TensorMatrix pr_matrix(const RMatrixBundle& b)
{
    return matrix_mul(permutation(b.r_paper.dim), b.r_paper);
}

}  // namespace

SymmetryReport symmetry_check(const RMatrixBundle& b)
{
    SymmetryReport rep;
    TensorMatrix pr = pr_matrix(b);
    const int n = pr.dim;
    SMat t = pr.m.transposed();
    for (size_t r = 0; r < pr.m.size(); ++r) {
        // union of the column sets of both rows
        std::vector<uint32_t> cols;
        for (const auto& e : pr.m.row(r)) cols.push_back(e.first);
        for (const auto& e : t.row(r)) cols.push_back(e.first);
        std::sort(cols.begin(), cols.end());
        cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
        for (uint32_t c : cols) {
            if (pr.m.get(r, c) == t.get(r, c)) continue;
            ++rep.asymmetric_entries;
            if (rep.symmetric) {
                rep.symmetric = false;
                rep.a = static_cast<int>(r / n) + 1;
                rep.b = static_cast<int>(r % n) + 1;
                rep.c = static_cast<int>(c / n) + 1;
                rep.d = static_cast<int>(c % n) + 1;
            }
        }
    }
    return rep;
}

bool pr_symmetric_at(const RMatrixBundle& b, int a, int bb, int c, int d)
{
    TensorMatrix pr = pr_matrix(b);
    return pr.at(a, bb, c, d) == pr.at(c, d, a, bb);
}

// ---- shipped root data ----

namespace {

CoeffElem hq(const Rational& e, const Rational& c = 1) { return CoeffElem::qpow(e, c); }

WordTerm wt(const CoeffElem& c, const std::string& w) { return WordTerm{c, parse_word(w)}; }

Weight wv(std::initializer_list<int> xs)
{
    Weight w;
    for (int x : xs) w.emplace_back(x);
    return w;
}

const Rational kHalf(1, 2);

RootVectorSpec simple_root(const std::string& name, Weight root, const Rational& qe, int i)
{
    std::string s = std::to_string(i);
    return {name, std::move(root), qe, {wt(1, "E" + s)}, {wt(1, "F" + s)}};
}

// B3 order: a3, a2+2a3, a2+a3, a2, a1+2a2+2a3, a1+a2+2a3, a1+a2+a3, a1+a2, a1
std::vector<RootVectorSpec> b3_roots(const std::string& variant)
{
    const Rational h = kHalf, one = 1;
    std::vector<RootVectorSpec> r;
    r.push_back(simple_root("a3", wv({0, 0, 1}), h, 3));
    r.push_back({"a2+2a3", wv({0, 1, 1}), one, {wt(hq(-h, -1), "E3E2E3")}, {}});
    r.push_back({"a2+a3", wv({0, 1, 0}), h, {wt(-1, "E3E2"), wt(hq(-1), "E2E3")}, {}});
    r.push_back(simple_root("a2", wv({0, 1, -1}), one, 2));
    r.push_back({"a1+2a2+2a3", wv({1, 1, 0}), one,
                 {wt(hq(Rational(-3, 2), -1), "E2E1E3E2E3"), wt(hq(Rational(-3, 2), -1), "E3E2E3E1E2")}, {}});
    r.push_back({"a1+a2+2a3", wv({1, 0, 1}), one,
                 {wt(hq(-h, -1), "E3E2E1E3"), wt(hq(Rational(-3, 2)), "E3E1E2E3")}, {}});
    r.push_back({"a1+a2+a3", wv({1, 0, 0}), h,
                 {wt(-1, "E3E2E1"), wt(hq(-1), "E2E3E1"), wt(hq(-1), "E1E3E2"), wt(hq(-2, -1), "E1E2E3")}, {}});
    r.push_back({"a1+a2", wv({1, 0, -1}), one, {wt(-1, "E2E1"), wt(hq(-1), "E1E2")}, {}});
    r.push_back(simple_root("a1", wv({1, -1, 0}), one, 1));

    auto F = [&](const std::string& name) -> std::vector<WordTerm>& {
        for (auto& s : r)
            if (s.name == name) return s.F_terms;
        throw std::logic_error(name);
    };
    if (variant == "default") {
        // each E-word reversed, q -> q^{-1} on the coefficient
        F("a2+2a3") = {wt(hq(h, -1), "F3F2F3")};
        F("a2+a3") = {wt(-1, "F2F3"), wt(hq(1), "F3F2")};
        F("a1+2a2+2a3") = {wt(hq(Rational(3, 2), -1), "F3F2F3F1F2"), wt(hq(Rational(3, 2), -1), "F2F1F3F2F3")};
        F("a1+a2+2a3") = {wt(hq(h, -1), "F3F1F2F3"), wt(hq(Rational(3, 2)), "F3F2F1F3")};
        F("a1+a2+a3") = {wt(-1, "F1F2F3"), wt(hq(1), "F1F3F2"), wt(hq(1), "F2F3F1"), wt(hq(2, -1), "F3F2F1")};
        F("a1+a2") = {wt(-1, "F1F2"), wt(hq(1), "F2F1")};
    } else if (variant == "comp1-printed" || variant == "lusztig") {
        F("a2+2a3") = {wt(hq(h, -1), "F3F2F3")};
        if (variant == "lusztig")
            F("a2+a3") = {wt(-1, "F2F3"), wt(hq(1), "F3F2")};
        else
            F("a2+a3") = {wt(hq(1) - hq(Rational(3, 2), h), "F3F2"),
                          wt(hq(Rational(5, 2), h) - hq(2), "F2F3")};
        F("a1+2a2+2a3") = {wt(hq(Rational(3, 2), -1), "F2F1F3F2F3"), wt(hq(Rational(3, 2), -1), "F3F2F3F1F2")};
        F("a1+a2+2a3") = {wt(hq(h, h), "F3F2F1F3"), wt(hq(Rational(3, 2), -h), "F3F1F2F3")};
        F("a1+a2+a3") = {wt(hq(-2, -1), "F3F2F1"), wt(hq(-1), "F2F3F1"), wt(hq(-1), "F1F3F2"), wt(-1, "F1F2F3")};
        F("a1+a2") = {wt(hq(1, h), "F2F1"), wt(hq(2, -h), "F1F2")};
    } else {
        throw std::invalid_argument("unknown root variant for b3-spin: " + variant);
    }
    return r;
}

}  // namespace

std::vector<RootVectorSpec> builtin_roots(const std::string& module, const std::string& variant)
{
    if (module == "b3-spin") return b3_roots(variant);
    if (variant != "default") throw std::invalid_argument("unknown root variant for " + module + ": " + variant);
    if (module == "a1-spin32") return {simple_root("a", wv({1}), 1, 1)};
    if (module == "a1-vector") return {simple_root("a", wv({1, -1}), 1, 1)};
    throw std::invalid_argument("no shipped roots for module " + module);
}

namespace {

json terms_json(const std::vector<WordTerm>& ts)
{
    json a = json::array();
    for (const WordTerm& t : ts) {
        json w = json::array();
        for (const Letter& l : t.word) w.push_back(letter_str(l));
        a.push_back({{"coeff", to_json(t.coeff)}, {"word", w}});
    }
    return a;
}

std::vector<WordTerm> terms_from(const json& a)
{
    std::vector<WordTerm> out;
    for (const json& t : a) {
        WordTerm w;
        w.coeff = coeff_from_json(t.at("coeff"));
        for (const json& l : t.at("word")) w.word.push_back(parse_letter(l.get<std::string>()));
        out.push_back(std::move(w));
    }
    return out;
}

}  // namespace

json to_json(const RootVectorSpec& s)
{
    json root = json::array();
    for (const auto& x : s.root) root.push_back(rational_str(x));
    return {{"name", s.name},
            {"root", root},
            {"qbeta_exponent", rational_str(s.qbeta_exponent)},
            {"E_word", terms_json(s.E_terms)},
            {"F_word", terms_json(s.F_terms)}};
}

RootVectorSpec root_from_json(const json& j)
{
    RootVectorSpec s;
    s.name = j.value("name", std::string());
    for (const json& x : j.at("root"))
        s.root.push_back(x.is_string() ? parse_rational(x.get<std::string>()) : Rational(x.get<long>()));
    const json& q = j.at("qbeta_exponent");
    s.qbeta_exponent = q.is_string() ? parse_rational(q.get<std::string>()) : Rational(q.get<long>());
    s.E_terms = terms_from(j.at("E_word"));
    s.F_terms = terms_from(j.at("F_word"));
    return s;
}

json roots_to_json(const std::vector<RootVectorSpec>& v)
{
    json a = json::array();
    for (const auto& s : v) a.push_back(to_json(s));
    return a;
}

std::vector<RootVectorSpec> roots_from_json(const json& j)
{
    std::vector<RootVectorSpec> out;
    for (const json& s : j) out.push_back(root_from_json(s));
    return out;
}

}  // namespace qgw
