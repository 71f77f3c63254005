#pragma once

// Double-bosonization pipeline: normalization of R_VV, the partner matrix R',
// the braided vector algebra relations, L-functional consistency, and the
// Cartan matrix / q-Serre data of the enlarged quantum group.

#include <optional>
#include <string>
#include <vector>

#include "qgw/minpoly.hpp"
#include "qgw/rmatrix.hpp"

namespace qgw {

struct VerificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CartanError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// q^{e} as a v-exponent; throws DomainError unless 4e is an integer
int quarter_vexp(const Rational& e);
// exponent e of a monomial q^e (coefficient must be +-1 when sign is given)
Rational monomial_exponent(const CoeffElem& c, int* sign = nullptr);

// lambda = q^{(mu,mu) - target}
CoeffElem normalization_lambda(const Rational& mu_pairing, const Rational& target_root_length_sq);

struct NormalizationData {
    CoeffElem lambda;
    Rational target_root_length_sq;
    int mu_index = 0;  // highest basis index n
    Rational mu_pairing;
    int normalized_eigenvalue_index = -1;  // position in the eigenvalue list that becomes -1
};

NormalizationData normalization_for(const RMatrixBundle& b, const MinPolyResult& mp,
                                    const Rational& target_root_length_sq);

struct RPrimePair {
    int dim = 0;
    CoeffElem lambda;
    TensorMatrix R;       // lambda^{-1} R_VV
    TensorMatrix Rprime;  // P + P prod_{j != i} (PR - x_j)
    std::vector<CoeffElem> eigenvalues_normalized;
    int minus_one_index = -1;
    // R' = R Rh^{k-1} ... expansion: coefficient of R Rh^{m-1} for m = deg-1..1, then of P
    std::vector<CoeffElem> expansion;
};

struct RPrimeChecks {
    bool quadratic = false;  // (PR+1)(PR'-1) = 0
    bool mixed_a = false;    // R12 R13 R'23 = R'23 R13 R12
    bool mixed_b = false;    // R23 R13 R'12 = R'12 R13 R23
    bool twisted = false;    // R21 R'12 = R'21 R12
    bool all() const { return quadratic && mixed_a && mixed_b && twisted; }
    std::string first_failure() const;
};

RPrimeChecks check_rprime(const RPrimePair& p);

// Normalizes so that the eigenvalue at index normalize_at (or the one turning into -1
// when normalize_at < 0) is -1; throws VerificationError naming the failing identity.
RPrimePair make_rprime(const RMatrixBundle& b, const MinPolyResult& mp, const CoeffElem& lambda,
                       bool verify = true);

// R Rh^2 + c1 R Rh + c2 R + c3 P with Rh = PR
TensorMatrix rprime_expanded(const TensorMatrix& R, const std::vector<CoeffElem>& coeffs);

struct BraidedRelation {
    int i = 0, j = 0;  // e^i e^j = sum coeff e^a e^b
    std::vector<std::tuple<int, int, FracElem>> terms;
    std::optional<FracElem> binomial;  // e^i e^j = c e^j e^i
    bool tautology = false;
    std::string str() const;
};

// relation for every ordered pair (i, j), read from the row (j, i) of R'
std::vector<BraidedRelation> braided_relations(const RPrimePair& p);
const BraidedRelation* find_relation(const std::vector<BraidedRelation>& rels, int i, int j);

struct CovectorReport {
    int pairs = 0, failures = 0;
    std::vector<std::pair<int, int>> failing;
    std::string exchange;  // "yx = q xy"
};

// f_i = x^{i-1} y^{n-i}, y x = q^{exchange} x y; checks f_i f_j = sum f_b f_a R'^{ab}_{ij}
CovectorReport covector_check(const RPrimePair& p, const Rational& exchange = 1);

// Generator in a claimed L-functional word
struct Gen {
    char kind = 'K';  // 'E', 'F', 'K'
    int index = 1;    // simple root, 1-based
    Rational power = 1;  // only for K
};

struct LEntry {
    int i = 0, j = 0;
    FracElem coeff;
    std::vector<Gen> word;  // evaluated as a plain operator product, leftmost factor leftmost
};

struct LClaim {
    std::vector<LEntry> mplus, mminus;
};

// claimed tables shipped for b3-spin and a1-spin32
LClaim builtin_lclaim(const std::string& module);

struct LEntryResult {
    char sign = '+';
    int i = 0, j = 0;
    bool match = false;
    std::optional<FracElem> ratio;  // computed = ratio * claimed when proportional
    std::string detail;
};

struct LFunctionalReport {
    std::vector<LEntryResult> entries;
    bool diagonal_ok = false;  // T_V((m+)^j_j) = T_V(K_{-mu_j}) for all j
    bool all_match() const;
    size_t mismatches() const;
};

// T_V((m+)^i_j)_{ab} = (r_std^{-1})^{ai}_{bj},  T_V((m-)^i_j)_{ab} = r_std^{ia}_{jb}
SMat mplus_slice(const RMatrixBundle& b, const TensorMatrix& rinv, int i, int j);
SMat mminus_slice(const RMatrixBundle& b, int i, int j);
SMat eval_gen_word(const ModuleData& m, const std::vector<Gen>& w);

LFunctionalReport lfunctional_check(const RMatrixBundle& b, const LClaim& claim);
std::string gen_word_str(const std::vector<Gen>& w);

struct SerreStep {
    int p = 0, p_next = 0;  // e^p E_i = A E_i e^p + B e^{p_next}
    CoeffElem A;
    FracElem B;
};

struct SerreChain {
    int root = 0;  // old simple root, 1-based
    int r = 0, s = 0;  // (m+)^r_s = kappa E_i (m+)^s_s
    FracElem kappa;
    std::vector<SerreStep> steps;
    int degree = 0;  // number of factors until B vanishes
    std::vector<FracElem> coefficients;  // (-1)^k e_k(A_0..A_{N-1})
    bool binomial_ok = false;  // matches (-1)^k [N k]_{q_i}
    // other direction: e^n e^{p1} = t e^{p1} e^n, need t A_0 = 1 and A_0 + t = [2]_{q_new}
    std::optional<FracElem> t;
    bool reverse_ok = false;
    bool reverse_applicable = false;
    std::vector<std::string> transcript;
};

struct DBosReport {
    std::string module;
    CoeffElem lambda;
    Rational target_root_length_sq;
    CoeffElem q_star;
    int n = 0;
    std::vector<Rational> theta;  // E_new K_i = q^{theta_i} K_i E_new
    Rational theta_self;
    std::vector<std::vector<int>> cartan_matrix;
    bool theta_consistent = false;  // two index subsets agree
    std::vector<SerreChain> serre;
    std::vector<std::string> relations;
    bool serre_ok() const;
};

DBosReport cartan_extract(const RMatrixBundle& b, const CoeffElem& lambda, int n,
                          const Rational& target_root_length_sq);

// Serre chains need the braided relations for the reverse direction.
void serre_chains(DBosReport& rep, const RMatrixBundle& b, const RPrimePair& p);

// fills rep.relations with the full listing
void relation_report(DBosReport& rep, const RMatrixBundle& b, const RPrimePair& p);

json to_json(const BraidedRelation& r);
json to_json(const LFunctionalReport& r);
json to_json(const DBosReport& r);

}  // namespace qgw
