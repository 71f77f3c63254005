// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <cstdio>
#include <set>
#include <sstream>
#include <string>

#include "bundles.hpp"
#include "golden.hpp"
#include "qgw/frt.hpp"
#include "support.hpp"

using namespace qgw;
using namespace qgw::testing_support;

namespace {

int failures = 0;

void report(int n, const std::string& title, bool pass, const std::string& detail)
{
    failures += !pass;
    std::printf("%s criterion %2d  %-24s %s\n", pass ? "PASS" : "FAIL", n, title.c_str(), detail.c_str());
    std::fflush(stdout);
}

const char* const kModules[] = {"b3-spin", "a1-spin32", "a1-vector"};

std::set<std::string> strs(const std::vector<CoeffElem>& v)
{
    std::set<std::string> s;
    for (const auto& c : v)
        s.insert(c.str());
    return s;
}

std::string join(const std::vector<CoeffElem>& v)
{
    std::string s;
    for (const auto& c : v)
        s += (s.empty() ? "" : ", ") + c.str();
    return "{" + s + "}";
}

void criterion1()
{
    bool ok = true;
    std::ostringstream d;
    for (const char* m : kModules) {
        size_t nz = qybe_residual(bundle(m).r_paper).m.nnz();
        ok &= nz == 0;
        d << m << " residual " << nz << "; ";
    }
    report(1, "QYBE", ok, d.str());
}

void criterion2()
{
    const RMatrixBundle& b = bundle("b3-spin");
    CoeffElem a = b.r_paper.at(5, 3, 7, 1), c = b.r_paper.at(1, 7, 3, 5);
    bool ok = a == golden::b3_r53_71_printed() && c == golden::b3_r17_35_printed();
    report(2, "golden entries", ok,
           "R^{53}_{71} = " + a.str() + " (printed " + golden::b3_r53_71_printed().str() + "); R^{17}_{35} = " +
               c.str() + " (printed " + golden::b3_r17_35_printed().str() + ")");
}

void criterion3()
{
    const TensorMatrix& R = bundle("a1-spin32").r_paper;
    TensorMatrix G = golden::spin32_printed();
    bool ok = R == G;
    std::string d = "nnz " + std::to_string(R.m.nnz()) + " vs " + std::to_string(G.m.nnz());
    if (!ok) {
        auto [r, c] = SMat::first_difference(R.m, G.m);
        d += ", first difference at flat (" + std::to_string(r + 1) + "," + std::to_string(c + 1) + ")";
    }
    report(3, "golden 16x16 matrix", ok, d);
}

void criterion4()
{
    bool b3 = symmetry_check(bundle("b3-spin")).symmetric;
    bool spin = symmetry_check(bundle("a1-spin32")).symmetric;
    const RMatrixBundle& lb = bundle("b3-spin", "lusztig");
    SymmetryReport ls = symmetry_check(lb);
    bool counter = !pr_symmetric_at(lb, 3, 5, 7, 1);
    std::ostringstream d;
    d << "b3-spin " << (b3 ? "symmetric" : "asymmetric") << ", a1-spin32 " << (spin ? "symmetric" : "asymmetric")
      << "; alternative F-side: pair ((35),(71)) " << (counter ? "asymmetric" : "symmetric") << ", "
      << ls.asymmetric_entries << " asymmetric entries, first ((" << ls.a << ls.b << "),(" << ls.c << ls.d << "))";
    report(4, "symmetry", b3 && spin && counter, d.str());
}

void criterion5()
{
    const MinPolyResult& mp = generic_minpoly("b3-spin");
    bool eig = strs(mp.eigenvalues) == strs(golden::b3_roots_printed());
    std::vector<CoeffElem> printed = golden::b3_deltas_printed();
    bool deltas = mp.elementary_symmetric.size() == printed.size();
    std::vector<CoeffElem> computed;
    for (size_t k = 0; k < mp.elementary_symmetric.size(); ++k) {
        computed.push_back(mp.elementary_symmetric[k].to_coeff());
        deltas = deltas && k < printed.size() && computed.back() == printed[k];
    }
    bool oracle = true;
    for (const char* m : kModules) {
        std::vector<std::pair<int, int>> rows;
        if (std::string(m) == "b3-spin")
            rows = {{1, 2}, {8, 8}, {5, 8}};
        const MinPolyResult& g = generic_minpoly(m);
        oracle &= minpoly_probe(braiding(bundle(m).r_paper), g.degree, rows, true).coefficients == g.coefficients;
    }
    std::ostringstream d;
    d << "eigenvalues " << join(mp.eigenvalues) << (eig ? "" : " (printed " + join(golden::b3_roots_printed()) + ")")
      << "; Delta " << join(computed) << (deltas ? "" : " (printed " + join(printed) + ")")
      << "; probe == generic: " << (oracle ? "yes" : "no");
    report(5, "minimal polynomial", eig && deltas && oracle, d.str());
}

void criterion6()
{
    const Stage& f4 = stage("b3-spin");
    const Stage& g2 = stage("a1-spin32");
    bool ok = f4.nd.lambda == golden::q(Rational(-1, 4)) && g2.nd.lambda == golden::q(Rational(-3, 2));
    for (const Stage* s : {&f4, &g2})
        ok = ok && s->rp.minus_one_index >= 0 && s->rp.eigenvalues_normalized[s->rp.minus_one_index] == CoeffElem(-1);
    report(6, "normalization", ok,
           "lambda " + f4.nd.lambda.str() + " (F4), " + g2.nd.lambda.str() + " (G2); normalized F4 spectrum " +
               join(f4.rp.eigenvalues_normalized) + ", G2 spectrum " + join(g2.rp.eigenvalues_normalized));
}

void criterion7()
{
    const RPrimePair& f4 = stage("b3-spin").rp;
    const RPrimePair& g2 = stage("a1-spin32").rp;
    RPrimeChecks cf = check_rprime(f4), cg = check_rprime(g2);
    bool expansion = rprime_expanded(f4.R, golden::f4_expansion_printed()) == f4.Rprime;
    auto rels_f4 = braided_relations(f4);
    auto rels_g2 = braided_relations(g2);
    auto r87 = find_relation(rels_f4, 8, 7);
    auto r43 = find_relation(rels_g2, 4, 3);
    bool e87 = r87 && r87->binomial && *r87->binomial == FracElem(golden::q(Rational(1, 2)));
    bool e43 = r43 && r43->binomial && *r43->binomial == FracElem(golden::q(3));
    std::ostringstream d;
    d << "F4 identities " << (cf.all() ? "hold" : "fail at " + cf.first_failure()) << ", G2 identities "
      << (cg.all() ? "hold" : "fail at " + cg.first_failure()) << "; printed expansion "
      << (expansion ? "equals" : "differs from") << " the product (computed coefficients " << join(f4.expansion)
      << "); " << (r87 ? r87->str() : "no e8e7 relation") << "; " << (r43 ? r43->str() : "no e4e3 relation");
    report(7, "(R,R') pair", cf.all() && cg.all() && expansion && e87 && e43, d.str());
}

void criterion8()
{
    bool ok = true;
    std::ostringstream d;
    for (const char* m : kModules) {
        DerivedMatrices dm = derive(bundle(m).r_paper);
        FrtConditionResult f = frt_condition(dm);
        InvertibilityReport inv = transpose_invertibility(dm);
        IdentityReport ids = identity_suite(dm);
        std::string failed;
        for (const auto& name : printed_identity_names()) {
            const CheckLine* c = ids.find(name);
            if (!c || !c->pass)
                failed += (failed.empty() ? "" : ",") + name;
        }
        ok &= f.ok && inv.ok && failed.empty();
        d << m << ": const " << (f.ok ? f.constant.str() : "none") << ", transposes "
          << (inv.ok ? "invertible" : "singular") << ", identities "
          << (failed.empty() ? "all pass" : "failing " + failed) << "; ";
    }
    report(8, "FRT suite", ok, d.str());
}

void criterion9()
{
    bool ok = true;
    std::ostringstream d;
    for (const char* m : {"b3-spin", "a1-spin32"}) {
        LFunctionalReport r = lfunctional_check(bundle(m), builtin_lclaim(m));
        ok &= r.all_match() && r.diagonal_ok;
        d << m << ": " << r.entries.size() - r.mismatches() << "/" << r.entries.size() << " match, diagonal "
          << (r.diagonal_ok ? "ok" : "wrong");
        for (const auto& e : r.entries)
            if (!e.match) {
                d << ", first mismatch (m" << e.sign << ")^" << e.i << "_" << e.j;
                if (e.ratio)
                    d << " computed = " << e.ratio->str() << " * claimed";
                break;
            }
        d << "; ";
    }
    report(9, "L-functionals", ok, d.str());
}

void criterion10()
{
    const DBosReport& f4 = stage("b3-spin").rep;
    const DBosReport& g2 = stage("a1-spin32").rep;
    const DBosReport& a2 = stage("a1-vector").rep;
    bool ok = f4.cartan_matrix == golden::f4_cartan() && g2.cartan_matrix == golden::g2_cartan() &&
              a2.cartan_matrix == golden::a2_cartan() && f4.theta.at(2) == Rational(-1, 2) &&
              g2.theta.at(0) == Rational(-3);
    report(10, "Cartan matrices", ok,
           "E4K3 = " + golden::q(f4.theta.at(2)).str() + " K3E4, E2K1 = " + golden::q(g2.theta.at(0)).str() +
               " K1E2; F4, G2, A2 " + (ok ? "reproduced" : "differ"));
}

void criterion11()
{
    CovectorReport r = covector_check(stage("a1-spin32").rp);
    report(11, "co-vector relations", r.pairs == 16 && r.failures == 0,
           std::to_string(r.pairs - r.failures) + "/" + std::to_string(r.pairs) + " hold under " + r.exchange);
}

void criterion12()
{
    Rng g(20260101);
    int bad = 0;
    // ring axioms
    for (int it = 0; it < 100; ++it) {
        CoeffElem a = random_coeff(g), b = random_coeff(g), c = random_coeff(g);
        bad += !(a + b == b + a && a * b == b * a && (a * b) * c == a * (b * c) && a * (b + c) == a * b + a * c);
    }
    for (int it = 0; it < 30; ++it) {
        FracElem a = random_frac(g), b = random_frac(g);
        if (b.is_zero())
            b = 1;
        bad += !((a * b) / b == a && (a + b) - b == a);
    }
    int ring = bad;
    // transpose involutions
    for (int it = 0; it < 20; ++it) {
        TensorMatrix M = random_tensor(g, 2 + it % 3);
        bad += !(transpose_t(transpose_t(M)) == M && transpose_t1(transpose_t1(M)) == M &&
                 transpose_t2(transpose_t2(M)) == M);
    }
    int transposes = bad - ring;
    // Vieta
    for (int it = 0; it < 30; ++it) {
        std::vector<CoeffElem> roots;
        for (int k = 0; k < 1 + it % 5; ++k)
            roots.push_back(random_monomial(g));
        Poly p = poly_from_roots(roots);
        std::vector<CoeffElem> e = elementary_symmetric(roots);
        std::vector<FracElem> dl = deltas_from_poly(p);
        bool same = dl.size() == e.size();
        for (size_t k = 0; same && k < e.size(); ++k)
            same = dl[k] == FracElem(e[k]);
        bad += !(same && poly_from_deltas(dl) == p);
    }
    int vieta = bad - ring - transposes;
    // generic and probe minimal polynomials
    std::vector<CoeffElem> pool = {golden::q(1), golden::q(-1, -1), golden::q(Rational(3, 4)), golden::q(-2, -1)};
    for (int it = 0; it < 8; ++it) {
        TensorMatrix M = random_diagonalizable(g, 2, pool);
        MinPolyResult a = minpoly_generic(M);
        bad += !(minpoly_probe(M, a.degree, {}, true).coefficients == a.coefficients && annihilates(M.m, a.coefficients));
    }
    int oracle = bad - ring - transposes - vieta;
    // serialization round trips
    for (int it = 0; it < 20; ++it) {
        FracElem f = random_frac(g);
        TensorMatrix M = random_tensor(g, 3);
        bad += !(frac_from_json(to_json(f)) == f && tensor_from_json(to_json(M)) == M);
    }
    for (const char* m : kModules) {
        json j = to_json(builtin_module(m));
        json r = roots_to_json(builtin_roots(m));
        bad += !(to_json(module_from_json(j)).dump() == j.dump() && roots_to_json(roots_from_json(r)).dump() == r.dump());
    }
    int serial = bad - ring - transposes - vieta - oracle;
    std::ostringstream d;
    d << "failures: ring " << ring << ", transposes " << transposes << ", Vieta " << vieta << ", minpoly oracle "
      << oracle << ", round trip " << serial;
    report(12, "property suites", bad == 0, d.str());
}

}  // namespace

int main()
{
    void (*all[])() = {criterion1, criterion2, criterion3, criterion4,  criterion5,  criterion6,
                       criterion7, criterion8, criterion9, criterion10, criterion11, criterion12};
    int n = 1;
    for (auto f : all) {
        try {
            f();
        } catch (const std::exception& ex) {
            report(n, "exception", false, ex.what());
        }
        ++n;
    }
    std::printf("%d of 12 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
