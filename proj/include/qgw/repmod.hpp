#pragma once

// Representations of U_q(g'): weights in ambient coordinates with a Gram matrix,
// and explicit E_i / F_i matrices. K_i acts on v_m by q^{(alpha_i, mu_m)}.

#include <string>
#include <vector>

#include "qgw/tensor.hpp"

namespace qgw {

using Weight = std::vector<Rational>;

struct CartanData {
    int rank = 0;
    std::vector<Weight> simple_roots;       // ambient coordinates
    std::vector<std::vector<Rational>> gram;  // ambient bilinear form
    std::vector<Rational> d;                // (alpha_i, alpha_i) / 2

    int ambient() const { return static_cast<int>(gram.size()); }
    Rational pair(const Weight& a, const Weight& b) const;
};

struct ModuleData {
    std::string name;
    CartanData cartan;
    int dim = 0;
    std::vector<Weight> weights;
    std::vector<SMat> E, F;  // one dim x dim matrix per simple root
    std::vector<std::string> labels;

    // 1-based basis indices
    Rational weight_pairing(int i, int j) const { return cartan.pair(weights[i - 1], weights[j - 1]); }
    Rational root_weight(int root, int j) const
    {
        return cartan.pair(cartan.simple_roots[root], weights[j - 1]);
    }
    // diag q^{p (alpha_root, mu_j)}
    SMat K(int root, const Rational& p) const;
};

ModuleData builtin_b3_spin();
ModuleData builtin_a1_spin32();
ModuleData builtin_a1_vector();
// "b3-spin" | "a1-spin32" | "a1-vector"
ModuleData builtin_module(const std::string& name);
std::vector<std::string> builtin_module_names();

struct Violation {
    std::string kind;
    std::string detail;
};

struct ModuleReport {
    bool ok = true;
    std::vector<Violation> violations;
    std::vector<int> nilpotency_E, nilpotency_F;
};

// Never throws; problems end up in the violation list.
ModuleReport validate_module(const ModuleData& m);

Rational weight_pairing(const ModuleData& m, int i, int j);

struct LemmaReport {
    bool ok = true;
    size_t quadruples = 0;
    std::vector<std::string> failures;
};

// For every E-word (exponents 0/1) taking v_i to v_k and every F-word over a permutation of
// the same letters taking v_j to v_l, require (mu_i, mu_j) = (mu_k, mu_l).
LemmaReport lemma_weight_check(const ModuleData& m);

json to_json(const CartanData& c);
CartanData cartan_from_json(const json& j);
json to_json(const ModuleData& m);
ModuleData module_from_json(const json& j);

std::string weight_str(const Weight& w);

}  // namespace qgw
