#pragma once

// FRT-side matrix certificates: the FRT-condition, the identity battery for an
// R-matrix and its partial transposes, the D matrix, weak-antipode matrices and
// the generator pairing tables of the dual pair.

#include <optional>
#include <string>
#include <vector>

#include "qgw/tensor.hpp"

namespace qgw {

struct CheckLine {
    std::string name;
    bool pass = false;
    std::string witness;  // first differing entry, empty on pass
    bool informational = false;  // reported, not counted in ok()
};

struct IdentityReport {
    std::vector<CheckLine> checks;
    std::string subject;  // fingerprint of R

    bool ok() const;
    const CheckLine* find(const std::string& name) const;
};

// R together with the inverses and partial transposes used by the suites.
struct DerivedMatrices {
    TensorMatrix R, Rinv, Rt, Rt1, Rt2, Rinv_t1, Rinv_t2;
    std::optional<TensorMatrix> Rt2_inv, Rinv_t1_inv, Rinv_t2_inv, Rt1_inv;
    std::vector<std::string> singular;  // names of non-invertible members
};

// Throws SingularMatrix if R itself is singular.
DerivedMatrices derive(const TensorMatrix& R);

struct InvertibilityReport {
    bool ok = true;
    std::vector<std::pair<std::string, bool>> items;  // R^{t1}, R^{t2}, (R^-1)^{t1}, (R^-1)^{t2}
};
InvertibilityReport transpose_invertibility(const DerivedMatrices& d);

struct FrtConditionResult {
    bool ok = false;
    bool k0_shape = false;          // X = diag * K0 columnwise
    std::vector<CoeffElem> constants;  // X^{ii}_{11}, i = 1..dim
    CoeffElem constant;             // valid when ok
    std::string detail;
};

// (R^{-1})^{t1} P (R^{t2})^{-1} P K0 = const K0
FrtConditionResult frt_condition(const DerivedMatrices& d);
FrtConditionResult frt_condition(const TensorMatrix& R);

// QYBE, (R000), (R0)..(R7), (R00) as printed, and the corrected (R6) as an extra line.
IdentityReport identity_suite(const DerivedMatrices& d);
IdentityReport identity_suite(const TensorMatrix& R);
// names of the ten printed identities
const std::vector<std::string>& printed_identity_names();

// D = tr2(P ((R^{t2})^{-1})^{t1})
SMat d_matrix(const DerivedMatrices& d);

struct WeakAntipodeData {
    TensorMatrix r_tilde;      // ((R^{t2})^{-1})^{t2}
    TensorMatrix r_inv_tilde;  // [((R^{-1})^{t2})^{-1}]^{t2}
};
WeakAntipodeData weak_antipode(const DerivedMatrices& d);

// (weak1)-(weak4) both as matrix products and as the index contractions written out
IdentityReport antipode_identities(const DerivedMatrices& d);

struct PairingTables {
    TensorMatrix mplus_t;        // <(m+)^i_j, t^k_l> = R^{ik}_{jl}
    TensorMatrix mminus_t;       // <(m-)^i_j, t^k_l> = (R^{-1})^{ki}_{lj}
    TensorMatrix mplus_ttilde;   // ((R^{t2})^{-1})^{ik}_{jl}
    TensorMatrix mminus_ttilde;  // [((R^{-1})^{t1})^{-1}]^{ki}_{lj}
};
PairingTables pairing_tables(const DerivedMatrices& d);

// R13 R12 R23^{-1} = R23^{-1} R12 R13 and its tilde counterpart
IdentityReport matrix3_consistency(const DerivedMatrices& d);

std::string triple_index_str(int dim, size_t flat);
json to_json(const IdentityReport& r);
json to_json(const FrtConditionResult& r);

}  // namespace qgw
