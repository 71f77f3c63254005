#include "qgw/repmod.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace qgw {

Rational CartanData::pair(const Weight& a, const Weight& b) const
{
    Rational s = 0;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            if (gram[i][j] != 0)
                s += a[i] * gram[i][j] * b[j];
    return s;
}

SMat ModuleData::K(int root, const Rational& p) const
{
    SMat k(dim);
    for (int j = 1; j <= dim; ++j)
        k.set(j - 1, j - 1, CoeffElem::qpow(p * root_weight(root, j)));
    return k;
}

Rational weight_pairing(const ModuleData& m, int i, int j)
{
    return m.weight_pairing(i, j);
}

std::string weight_str(const Weight& w)
{
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < w.size(); ++i)
        os << (i ? "," : "") << w[i].get_str();
    os << ")";
    return os.str();
}

namespace {

std::vector<std::vector<Rational>> unit_gram(int n)
{
    std::vector<std::vector<Rational>> g(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i)
        g[i][i] = 1;
    return g;
}

// arrows v_a -> v_b with coefficient c: E(row b, col a)
SMat arrows(int dim, const std::vector<std::tuple<int, int, CoeffElem>>& edges, bool reverse)
{
    SMat m(dim);
    for (const auto& [a, b, c] : edges) {
        if (reverse)
            m.set(a - 1, b - 1, c);
        else
            m.set(b - 1, a - 1, c);
    }
    return m;
}

}  // namespace

ModuleData builtin_b3_spin()
{
    ModuleData m;
    m.name = "b3-spin";
    m.dim = 8;
    m.cartan.rank = 3;
    m.cartan.gram = unit_gram(3);
    m.cartan.simple_roots = {{1, -1, 0}, {0, 1, -1}, {0, 0, 1}};
    m.cartan.d = {1, 1, Rational(1, 2)};
    const int signs[8][3] = {{-1, -1, -1}, {-1, -1, 1}, {-1, 1, -1}, {-1, 1, 1},
                             {1, -1, -1},  {1, -1, 1},  {1, 1, -1},  {1, 1, 1}};
    for (const auto& s : signs) {
        m.weights.push_back({Rational(s[0], 2), Rational(s[1], 2), Rational(s[2], 2)});
        std::string l = "(";
        for (int k = 0; k < 3; ++k)
            l += (k ? "," : "") + std::string(s[k] < 0 ? "-" : "+");
        m.labels.push_back(l + ")");
    }
    const std::vector<std::vector<std::tuple<int, int, CoeffElem>>> edges = {
        {{3, 5, 1}, {4, 6, 1}},
        {{2, 3, 1}, {6, 7, 1}},
        {{1, 2, 1}, {3, 4, 1}, {5, 6, 1}, {7, 8, 1}},
    };
    for (const auto& e : edges) {
        m.E.push_back(arrows(8, e, false));
        m.F.push_back(arrows(8, e, true));
    }
    return m;
}

ModuleData builtin_a1_spin32()
{
    ModuleData m;
    m.name = "a1-spin32";
    m.dim = 4;
    m.cartan.rank = 1;
    m.cartan.gram = {{2}};
    m.cartan.simple_roots = {{1}};
    m.cartan.d = {1};
    for (int k : {-3, -1, 1, 3})
        m.weights.push_back({Rational(k, 2)});
    m.labels = {"x^0y^3", "x^1y^2", "x^2y^1", "x^3y^0"};
    const CoeffElem r3 = CoeffElem::r3();
    const CoeffElem two = qint(2);
    auto q = [](int num, int den) { return CoeffElem::qpow(Rational(num, den)); };
    SMat E(4), F(4);
    E.set(1, 0, q(-3, 2) * r3);
    E.set(2, 1, q(-1, 2) * two);
    E.set(3, 2, q(1, 2) * r3);
    F.set(0, 1, q(3, 2) * r3);
    F.set(1, 2, q(1, 2) * two);
    F.set(2, 3, q(-1, 2) * r3);
    m.E.push_back(E);
    m.F.push_back(F);
    return m;
}

ModuleData builtin_a1_vector()
{
    ModuleData m;
    m.name = "a1-vector";
    m.dim = 2;
    m.cartan.rank = 1;
    m.cartan.gram = unit_gram(2);
    m.cartan.simple_roots = {{1, -1}};
    m.cartan.d = {1};
    m.weights = {{0, 1}, {1, 0}};
    m.labels = {"y", "x"};
    m.E.push_back(arrows(2, {{1, 2, 1}}, false));
    m.F.push_back(arrows(2, {{1, 2, 1}}, true));
    return m;
}

std::vector<std::string> builtin_module_names()
{
    return {"b3-spin", "a1-spin32", "a1-vector"};
}

ModuleData builtin_module(const std::string& name)
{
    if (name == "b3-spin")
        return builtin_b3_spin();
    if (name == "a1-spin32")
        return builtin_a1_spin32();
    if (name == "a1-vector")
        return builtin_a1_vector();
    throw std::invalid_argument("unknown builtin module '" + name + "'");
}

// ---- validation ----

namespace {

int nilpotency(const SMat& x, int cap)
{
    SMat p = x;
    for (int k = 1; k <= cap; ++k) {
        if (p.is_zero())
            return k;
        p = p * x;
    }
    return -1;
}

Weight add_scaled(const Weight& a, const Weight& b, int s)
{
    Weight r = a;
    for (size_t i = 0; i < r.size(); ++i)
        r[i] += s * b[i];
    return r;
}

}  // namespace

ModuleReport validate_module(const ModuleData& m)
{
    ModuleReport rep;
    auto fail = [&](std::string kind, std::string detail) {
        rep.ok = false;
        rep.violations.push_back({std::move(kind), std::move(detail)});
    };
    try {
        const int r = m.cartan.rank;
        if (static_cast<int>(m.E.size()) != r || static_cast<int>(m.F.size()) != r) {
            fail("shape", "need one E and one F matrix per simple root");
            return rep;
        }
        if (static_cast<int>(m.weights.size()) != m.dim) {
            fail("shape", "weight list length differs from dim");
            return rep;
        }
        for (size_t i = 0; i < m.cartan.gram.size(); ++i)
            for (size_t j = 0; j < m.cartan.gram.size(); ++j)
                if (m.cartan.gram[i][j] != m.cartan.gram[j][i])
                    fail("gram", "Gram matrix not symmetric");
        for (int i = 0; i < r; ++i) {
            const Weight& a = m.cartan.simple_roots[i];
            if (m.cartan.pair(a, a) != 2 * m.cartan.d[i])
                fail("cartan", "(alpha_" + std::to_string(i + 1) + ", alpha) != 2 d_i");
        }
        for (int i = 0; i < r; ++i) {
            const Weight& a = m.cartan.simple_roots[i];
            for (int pol = 0; pol < 2; ++pol) {
                const SMat& X = pol == 0 ? m.E[i] : m.F[i];
                if (X.size() != static_cast<size_t>(m.dim)) {
                    fail("shape", "generator matrix has wrong size");
                    return rep;
                }
                for (size_t row = 0; row < X.size(); ++row)
                    for (const auto& [col, v] : X.row(row)) {
                        Weight expect = add_scaled(m.weights[col], a, pol == 0 ? 1 : -1);
                        if (m.weights[row] != expect)
                            fail("grading", std::string(pol == 0 ? "E" : "F") + std::to_string(i + 1) +
                                                " maps v" + std::to_string(col + 1) + " to v" +
                                                std::to_string(row + 1) + " off the weight lattice shift");
                    }
            }
        }
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                SMat lhs = m.E[i] * m.F[j] - m.F[j] * m.E[i];
                SMat rhs(m.dim);
                if (i == j) {
                    LaurentV qi = LaurentV::qpow(m.cartan.d[i]) - LaurentV::qpow(-m.cartan.d[i]);
                    for (int v = 1; v <= m.dim; ++v) {
                        Rational x = m.root_weight(i, v);
                        LaurentV num = LaurentV::qpow(x) - LaurentV::qpow(-x);
                        rhs.set(v - 1, v - 1, CoeffElem(num.divexact(qi)));
                    }
                }
                if (lhs != rhs) {
                    auto [a, b] = SMat::first_difference(lhs, rhs);
                    fail("commutator", "[E" + std::to_string(i + 1) + ",F" + std::to_string(j + 1) +
                                           "] wrong at (" + std::to_string(a + 1) + "," +
                                           std::to_string(b + 1) + ")");
                }
            }
        for (int i = 0; i < r; ++i) {
            rep.nilpotency_E.push_back(nilpotency(m.E[i], m.dim + 1));
            rep.nilpotency_F.push_back(nilpotency(m.F[i], m.dim + 1));
        }
    } catch (const std::exception& ex) {
        fail("exception", ex.what());
    }
    return rep;
}

// ---- Lemma-style weight check ----

LemmaReport lemma_weight_check(const ModuleData& m)
{
    LemmaReport rep;
    const int r = m.cartan.rank;
    using Key = std::vector<int>;
    std::map<Key, std::set<std::pair<int, int>>> emaps, fmaps;

    // enumerate nonzero words, letters prepended on the left; transitions (source, target)
    std::function<void(const std::vector<SMat>&, const SMat&, std::vector<int>&,
                       std::map<Key, std::set<std::pair<int, int>>>&)>
        walk = [&](const std::vector<SMat>& gens, const SMat& w, std::vector<int>& word,
                   std::map<Key, std::set<std::pair<int, int>>>& out) {
            if (!word.empty()) {
                Key key = word;
                std::sort(key.begin(), key.end());
                for (size_t row = 0; row < w.size(); ++row)
                    for (const auto& e : w.row(row))
                        out[key].insert({static_cast<int>(e.first) + 1, static_cast<int>(row) + 1});
            }
            if (static_cast<int>(word.size()) >= m.dim)
                return;
            for (int g = 0; g < r; ++g) {
                SMat nw = gens[g] * w;
                if (nw.is_zero())
                    continue;
                word.push_back(g);
                walk(gens, nw, word, out);
                word.pop_back();
            }
        };
    std::vector<int> word;
    walk(m.E, SMat::identity(m.dim), word, emaps);
    walk(m.F, SMat::identity(m.dim), word, fmaps);

    for (const auto& [key, es] : emaps) {
        auto it = fmaps.find(key);
        if (it == fmaps.end())
            continue;
        for (const auto& [i, k] : es)
            for (const auto& [j, l] : it->second) {
                ++rep.quadruples;
                if (m.weight_pairing(i, j) != m.weight_pairing(k, l)) {
                    rep.ok = false;
                    if (rep.failures.size() < 20) {
                        std::ostringstream os;
                        os << "(mu" << i << ",mu" << j << ")=" << m.weight_pairing(i, j).get_str()
                           << " but (mu" << k << ",mu" << l << ")=" << m.weight_pairing(k, l).get_str();
                        rep.failures.push_back(os.str());
                    }
                }
            }
    }
    return rep;
}

// ---- serialization ----

namespace {

json weight_json(const Weight& w)
{
    json a = json::array();
    for (const auto& x : w)
        a.push_back(rational_str(x));
    return a;
}

Weight weight_from(const json& j)
{
    Weight w;
    for (const auto& x : j)
        w.push_back(parse_rational(x.is_string() ? x.get<std::string>() : x.dump()));
    return w;
}

}  // namespace

json to_json(const CartanData& c)
{
    json roots = json::array(), gram = json::array(), d = json::array();
    for (const auto& r : c.simple_roots)
        roots.push_back(weight_json(r));
    for (const auto& r : c.gram)
        gram.push_back(weight_json(r));
    for (const auto& x : c.d)
        d.push_back(rational_str(x));
    return json{{"roots", roots}, {"gram", gram}, {"d", d}};
}

CartanData cartan_from_json(const json& j)
{
    CartanData c;
    for (const auto& r : j.at("roots"))
        c.simple_roots.push_back(weight_from(r));
    for (const auto& r : j.at("gram"))
        c.gram.push_back(weight_from(r));
    for (const auto& x : j.at("d"))
        c.d.push_back(parse_rational(x.is_string() ? x.get<std::string>() : x.dump()));
    c.rank = static_cast<int>(c.simple_roots.size());
    if (c.d.size() != c.simple_roots.size())
        throw std::invalid_argument("cartan: d and roots differ in length");
    for (const auto& r : c.simple_roots)
        if (r.size() != c.gram.size())
            throw std::invalid_argument("cartan: root dimension differs from gram size");
    return c;
}

json to_json(const ModuleData& m)
{
    json w = json::array(), E = json::array(), F = json::array();
    for (const auto& x : m.weights)
        w.push_back(weight_json(x));
    for (const auto& x : m.E)
        E.push_back(to_json(x));
    for (const auto& x : m.F)
        F.push_back(to_json(x));
    return json{{"name", m.name}, {"cartan", to_json(m.cartan)}, {"dim", m.dim},
                {"weights", w},   {"E", E},                      {"F", F},
                {"labels", m.labels}};
}

ModuleData module_from_json(const json& j)
{
    ModuleData m;
    m.name = j.value("name", std::string("module"));
    m.cartan = cartan_from_json(j.at("cartan"));
    for (const auto& w : j.at("weights"))
        m.weights.push_back(weight_from(w));
    m.dim = j.contains("dim") ? j.at("dim").get<int>() : static_cast<int>(m.weights.size());
    for (const auto& x : j.at("E"))
        m.E.push_back(smat_from_json(x));
    for (const auto& x : j.at("F"))
        m.F.push_back(smat_from_json(x));
    if (j.contains("labels"))
        m.labels = j.at("labels").get<std::vector<std::string>>();
    return m;
}

}  // namespace qgw
