#pragma once

// R_VV = B_VV o (T_V (x) T_V)(R) for a module, using root vectors supplied as word
// combinations and truncated q-exponentials.

#include <string>
#include <vector>

#include "qgw/repmod.hpp"

namespace qgw {

struct Letter {
    char kind = 'E';  // 'E' or 'F'
    int index = 1;    // 1-based simple root
    int power = 1;
    bool divided = false;  // E_i^{(power)} = E_i^power / [power]_{q_i}!
};

struct WordTerm {
    CoeffElem coeff;
    std::vector<Letter> word;  // leftmost letter acts last
};

struct RootVectorSpec {
    std::string name;
    Weight root;               // ambient coordinates
    Rational qbeta_exponent;   // q_beta = q^{qbeta_exponent} = q^{(beta,beta)/2}
    std::vector<WordTerm> E_terms, F_terms;
};

enum class Polarity { E, F };

struct GradingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BuildError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Letter parse_letter(const std::string& s);
std::string letter_str(const Letter& l);

SMat eval_word(const ModuleData& m, const std::vector<Letter>& word);
SMat eval_root_vector(const ModuleData& m, const RootVectorSpec& spec, Polarity pol);

// sum_r q_b^{r(r+1)/2} / [r]_{q_b}! x^r, stopping at the first vanishing power
SMat qexp_truncated(const SMat& x, const Rational& qbeta_exponent);

struct RMatrixBundle {
    ModuleData module;
    TensorMatrix r_paper;  // flipped convention, P r_std P
    TensorMatrix r_std;    // action convention
    std::vector<RootVectorSpec> positive_root_order;
};

struct BuildOptions {
    bool require_qybe = true;
};

// Throws BuildError when QYBE fails (unless disabled): that signals wrong root data.
RMatrixBundle build_rvv(const ModuleData& m, const std::vector<RootVectorSpec>& roots,
                        BuildOptions opts = {});

struct BundleChecks {
    bool qybe_std = false, qybe_paper = false;
    bool triangular = false, diagonal_law = false, ja_ai_pattern = false;
    size_t qybe_residual_nnz = 0;
    std::string detail;
    bool all() const { return qybe_std && qybe_paper && triangular && diagonal_law && ja_ai_pattern; }
};

BundleChecks verify_bundle(const RMatrixBundle& b);

struct SymmetryReport {
    bool symmetric = true;
    size_t asymmetric_entries = 0;
    // first violation (1-based): (PR)^{ab}_{cd} != (PR)^{cd}_{ab}
    int a = 0, b = 0, c = 0, d = 0;
};

// on PR with R the paper-convention matrix
SymmetryReport symmetry_check(const RMatrixBundle& b);
bool pr_symmetric_at(const RMatrixBundle& b, int a, int bb, int c, int d);

// Root data shipped with the tool.
//   b3-spin: "default" (comp1 E-side, mirrored F-side), "comp1-printed", "lusztig"
//   a1-spin32, a1-vector: "default"
std::vector<RootVectorSpec> builtin_roots(const std::string& module, const std::string& variant = "default");

json to_json(const RootVectorSpec& s);
RootVectorSpec root_from_json(const json& j);
json roots_to_json(const std::vector<RootVectorSpec>& v);
std::vector<RootVectorSpec> roots_from_json(const json& j);

}  // namespace qgw
