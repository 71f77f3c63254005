#include "qgw/frt.hpp"

#include "qgw/kernels.hpp"

#include <sstream>

namespace qgw {

bool IdentityReport::ok() const
{
    for (const auto& c : checks)
        if (!c.informational && !c.pass) return false;
    return true;
}

const CheckLine* IdentityReport::find(const std::string& name) const
{
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

std::string triple_index_str(int dim, size_t flat)
{
    const size_t n = static_cast<size_t>(dim);
    std::ostringstream os;
    os << "(" << flat / (n * n) + 1 << "," << (flat / n) % n + 1 << "," << flat % n + 1 << ")";
    return os.str();
}

namespace {

std::string pair_index_str(int dim, size_t flat)
{
    std::ostringstream os;
    os << "(" << flat / dim + 1 << "," << flat % dim + 1 << ")";
    return os.str();
}

std::optional<TensorMatrix> try_invert(const TensorMatrix& m, const std::string& name, std::vector<std::string>& bad)
{
    try {
        return invert(m);
    } catch (const SingularMatrix&) {
        bad.push_back(name);
    } catch (const DomainError&) {
        bad.push_back(name + " (inverse not Laurent)");
    }
    return std::nullopt;
}

CheckLine compare_triple(const std::string& name, const TripleMatrix& a, const TripleMatrix& b)
{
    CheckLine c{name, a == b, {}, false};
    if (!c.pass) {
        auto [r, col] = SMat::first_difference(a.m, b.m);
        c.witness = triple_index_str(a.dim, static_cast<size_t>(r)) + "," + triple_index_str(a.dim, static_cast<size_t>(col));
    }
    return c;
}

CheckLine compare_pair(const std::string& name, const SMat& a, const SMat& b, int dim)
{
    CheckLine c{name, a == b, {}, false};
    if (!c.pass) {
        auto [r, col] = SMat::first_difference(a, b);
        c.witness = pair_index_str(dim, static_cast<size_t>(r)) + "," + pair_index_str(dim, static_cast<size_t>(col));
    }
    return c;
}

CheckLine missing(const std::string& name, const std::string& what)
{
    return {name, false, "undefined: " + what + " is singular", false};
}

TripleMatrix prod3(const TripleMatrix& a, const TripleMatrix& b, const TripleMatrix& c)
{
    return TripleMatrix(a.dim, triple_product(a.m, b.m, c.m, default_exec()));
}

}  // namespace

DerivedMatrices derive(const TensorMatrix& R)
{
    DerivedMatrices d;
    d.R = R;
    d.Rinv = invert(R);
    d.Rt = transpose_t(R);
    d.Rt1 = transpose_t1(R);
    d.Rt2 = transpose_t2(R);
    d.Rinv_t1 = transpose_t1(d.Rinv);
    d.Rinv_t2 = transpose_t2(d.Rinv);
    d.Rt1_inv = try_invert(d.Rt1, "R^{t1}", d.singular);
    d.Rt2_inv = try_invert(d.Rt2, "R^{t2}", d.singular);
    d.Rinv_t1_inv = try_invert(d.Rinv_t1, "(R^{-1})^{t1}", d.singular);
    d.Rinv_t2_inv = try_invert(d.Rinv_t2, "(R^{-1})^{t2}", d.singular);
    return d;
}

InvertibilityReport transpose_invertibility(const DerivedMatrices& d)
{
    InvertibilityReport r;
    r.items = {{"R^{t1}", d.Rt1_inv.has_value()},
               {"R^{t2}", d.Rt2_inv.has_value()},
               {"(R^{-1})^{t1}", d.Rinv_t1_inv.has_value()},
               {"(R^{-1})^{t2}", d.Rinv_t2_inv.has_value()}};
    for (auto& [n, ok] : r.items) r.ok = r.ok && ok;
    return r;
}

FrtConditionResult frt_condition(const DerivedMatrices& d)
{
    FrtConditionResult res;
    if (!d.Rt2_inv) {
        res.detail = "R^{t2} is singular";
        return res;
    }
    const int n = d.R.dim;
    TensorMatrix P = permutation(n), K = k0(n);
    TensorMatrix X = matrix_mul(matrix_mul(matrix_mul(matrix_mul(d.Rinv_t1, P), *d.Rt2_inv), P), K);
    for (int i = 1; i <= n; ++i) res.constants.push_back(X.at(i, i, 1, 1));
    // X = D K0 with D diagonal: column (kk) equals column (11) for every k, and column (kl), k != l, vanishes
    TensorMatrix DK(n);
    for (int i = 1; i <= n; ++i)
        for (int k = 1; k <= n; ++k) DK.set(i, i, k, k, res.constants[i - 1]);
    res.k0_shape = X == DK;
    bool same = true;
    for (const auto& c : res.constants) same = same && c == res.constants.front();
    res.ok = res.k0_shape && same && !res.constants.front().is_zero();
    if (res.ok) res.constant = res.constants.front();
    if (!res.k0_shape) {
        auto [r, c] = SMat::first_difference(X.m, DK.m);
        res.detail = "not of the form D K0 at " + pair_index_str(n, r) + "," + pair_index_str(n, c);
    } else if (!same) {
        res.detail = "diagonal constants differ";
    }
    return res;
}

FrtConditionResult frt_condition(const TensorMatrix& R)
{
    return frt_condition(derive(R));
}

const std::vector<std::string>& printed_identity_names()
{
    static const std::vector<std::string> v = {"R000", "R0", "R1", "R2", "R3", "R4", "R5", "R6", "R7", "R00"};
    return v;
}

IdentityReport identity_suite(const DerivedMatrices& d)
{
    IdentityReport rep;
    rep.subject = fingerprint(d.R.m);
    auto e12 = embed12(d.R), e13 = embed13(d.R), e23 = embed23(d.R);
    rep.checks.push_back(compare_triple("QYBE", prod3(e12, e13, e23), prod3(e23, e13, e12)));

    auto t12 = embed12(d.Rt), t13 = embed13(d.Rt), t23 = embed23(d.Rt);
    rep.checks.push_back(compare_triple("R000", prod3(t12, t13, t23), prod3(t23, t13, t12)));

    const bool have_a = d.Rt2_inv.has_value(), have_b = d.Rinv_t1_inv.has_value();
    TripleMatrix a12, a13, a23, b12, b13, b23;
    if (have_a) {
        a12 = embed12(*d.Rt2_inv);
        a13 = embed13(*d.Rt2_inv);
        a23 = embed23(*d.Rt2_inv);
    }
    if (have_b) {
        b12 = embed12(*d.Rinv_t1_inv);
        b13 = embed13(*d.Rinv_t1_inv);
        b23 = embed23(*d.Rinv_t1_inv);
    }
    auto s12 = embed12(d.Rt2), s13 = embed13(d.Rt2), s23 = embed23(d.Rt2);
    auto i13 = embed13(d.Rinv);
    auto c12 = embed12(d.Rinv_t1);

    // A = (R^{t2})^{-1}, B = ((R^{-1})^{t1})^{-1}
    if (have_a) rep.checks.push_back(compare_triple("R0", prod3(e12, a13, a23), prod3(a23, a13, e12)));
    else rep.checks.push_back(missing("R0", "R^{t2}"));
    rep.checks.push_back(compare_triple("R1", prod3(s13, s23, e12), prod3(e12, s23, s13)));
    if (have_a && have_b) rep.checks.push_back(compare_triple("R2", prod3(e13, a12, b23), prod3(b23, a12, e13)));
    else rep.checks.push_back(missing("R2", "a partial transpose"));
    if (have_b) rep.checks.push_back(compare_triple("R3", prod3(e23, b12, b13), prod3(b13, b12, e23)));
    else rep.checks.push_back(missing("R3", "(R^{-1})^{t1}"));
    if (have_a) rep.checks.push_back(compare_triple("R4", prod3(t23, a13, a12), prod3(a12, a13, t23)));
    else rep.checks.push_back(missing("R4", "R^{t2}"));
    if (have_b) rep.checks.push_back(compare_triple("R5", prod3(t12, b23, b13), prod3(b13, b23, t12)));
    else rep.checks.push_back(missing("R5", "(R^{-1})^{t1}"));
    if (have_a && have_b) {
        rep.checks.push_back(compare_triple("R6", prod3(a23, b13, e12), prod3(e12, a13, b23)));
        rep.checks.push_back(compare_triple("R7", prod3(a12, b23, i13), prod3(i13, b23, a12)));
    } else {
        rep.checks.push_back(missing("R6", "a partial transpose"));
        rep.checks.push_back(missing("R7", "a partial transpose"));
    }
    if (have_a) rep.checks.push_back(compare_triple("R00", prod3(a23, t13, c12), prod3(c12, t13, a23)));
    else rep.checks.push_back(missing("R00", "R^{t2}"));
    if (have_a && have_b) {
        CheckLine c = compare_triple("R6-corrected", prod3(b23, a13, e12), prod3(e12, a13, b23));
        c.informational = true;
        rep.checks.push_back(c);
    }
    return rep;
}

IdentityReport identity_suite(const TensorMatrix& R)
{
    return identity_suite(derive(R));
}

SMat d_matrix(const DerivedMatrices& d)
{
    if (!d.Rt2_inv) throw SingularMatrix("R^{t2} is singular");
    return trace2(matrix_mul(permutation(d.R.dim), transpose_t1(*d.Rt2_inv)));
}

WeakAntipodeData weak_antipode(const DerivedMatrices& d)
{
    if (!d.Rt2_inv || !d.Rinv_t2_inv) throw SingularMatrix("R^{t2} or (R^{-1})^{t2} is singular");
    return {transpose_t2(*d.Rt2_inv), transpose_t2(*d.Rinv_t2_inv)};
}

IdentityReport antipode_identities(const DerivedMatrices& d)
{
    IdentityReport rep;
    rep.subject = fingerprint(d.R.m);
    if (!d.Rt2_inv || !d.Rinv_t2_inv) {
        rep.checks.push_back(missing("weak", "R^{t2} or (R^{-1})^{t2}"));
        return rep;
    }
    const int n = d.R.dim;
    const SMat I = SMat::identity(static_cast<size_t>(n) * n);
    const TensorMatrix& X = *d.Rt2_inv;
    const TensorMatrix& Y = *d.Rinv_t2_inv;
    rep.checks.push_back(compare_pair("weak1", (d.Rt2.m * X.m), I, n));
    rep.checks.push_back(compare_pair("weak2", (Y.m * d.Rinv_t2.m), I, n));
    rep.checks.push_back(compare_pair("weak3", (X.m * d.Rt2.m), I, n));
    rep.checks.push_back(compare_pair("weak4", (d.Rinv_t2.m * Y.m), I, n));

    // The same reductions with the summation indices written out entry by entry.
    // Each contraction must equal delta_ij delta_kl at position (k,j,l,i) / (i,l,j,k).
    using Fn = std::function<CoeffElem(int, int, int, int)>;
    auto contraction = [&](const std::string& name, const Fn& f) {
        CheckLine c{name, true, {}, false};
        for (int i = 1; i <= n && c.pass; ++i)
            for (int j = 1; j <= n && c.pass; ++j)
                for (int k = 1; k <= n && c.pass; ++k)
                    for (int l = 1; l <= n && c.pass; ++l) {
                        CoeffElem want = (i == j && k == l) ? CoeffElem(1) : CoeffElem(0);
                        if (f(i, j, k, l) != want) {
                            c.pass = false;
                            std::ostringstream os;
                            os << "i=" << i << " j=" << j << " k=" << k << " l=" << l;
                            c.witness = os.str();
                        }
                    }
        rep.checks.push_back(c);
    };
    const TensorMatrix& R = d.R;
    const TensorMatrix& Ri = d.Rinv;
    contraction("weak1-indices", [&](int i, int j, int k, int l) {
        CoeffElem s;
        for (int a = 1; a <= n; ++a)
            for (int b = 1; b <= n; ++b) s += X.at(b, a, l, i) * R.at(k, a, b, j);
        return s;
    });
    contraction("weak2-indices", [&](int i, int j, int k, int l) {
        CoeffElem s;
        for (int a = 1; a <= n; ++a)
            for (int b = 1; b <= n; ++b) s += Y.at(i, l, a, b) * Ri.at(a, k, j, b);
        return s;
    });
    contraction("weak3-indices", [&](int i, int j, int k, int l) {
        CoeffElem s;
        for (int a = 1; a <= n; ++a)
            for (int b = 1; b <= n; ++b) s += R.at(b, i, l, a) * X.at(k, j, b, a);
        return s;
    });
    contraction("weak4-indices", [&](int i, int j, int k, int l) {
        CoeffElem s;
        for (int a = 1; a <= n; ++a)
            for (int b = 1; b <= n; ++b) s += Ri.at(i, b, a, l) * Y.at(a, b, j, k);
        return s;
    });
    return rep;
}

PairingTables pairing_tables(const DerivedMatrices& d)
{
    if (!d.Rt2_inv || !d.Rinv_t1_inv) throw SingularMatrix("R^{t2} or (R^{-1})^{t1} is singular");
    return {d.R, conjugate_p(d.Rinv), *d.Rt2_inv, conjugate_p(*d.Rinv_t1_inv)};
}

IdentityReport matrix3_consistency(const DerivedMatrices& d)
{
    IdentityReport rep;
    rep.subject = fingerprint(d.R.m);
    auto e12 = embed12(d.R), e13 = embed13(d.R);
    auto i23 = embed23(d.Rinv);
    rep.checks.push_back(compare_triple("matrix3-T", prod3(e13, e12, i23), prod3(i23, e12, e13)));
    if (d.Rt2_inv && d.Rinv_t1_inv) {
        auto a12 = embed12(*d.Rt2_inv);
        auto b23 = embed23(*d.Rinv_t1_inv);
        rep.checks.push_back(compare_triple("matrix3-Ttilde", prod3(e13, a12, b23), prod3(b23, a12, e13)));
    } else {
        rep.checks.push_back(missing("matrix3-Ttilde", "a partial transpose"));
    }
    return rep;
}

json to_json(const IdentityReport& r)
{
    json a = json::array();
    for (const auto& c : r.checks) {
        json j = {{"name", c.name}, {"pass", c.pass}};
        if (!c.witness.empty()) j["witness"] = c.witness;
        if (c.informational) j["informational"] = true;
        a.push_back(j);
    }
    return {{"subject", r.subject}, {"ok", r.ok()}, {"checks", a}};
}

json to_json(const FrtConditionResult& r)
{
    json c = json::array();
    for (const auto& x : r.constants) c.push_back(x.str());
    json j = {{"ok", r.ok}, {"k0_shape", r.k0_shape}, {"constants", c}};
    if (r.ok) j["constant"] = to_json(r.constant);
    if (!r.detail.empty()) j["detail"] = r.detail;
    return j;
}

}  // namespace qgw
