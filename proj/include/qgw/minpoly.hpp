#pragma once

// Minimal polynomials of braidings PR: a Krylov-style generic algorithm and the
// elementary-symmetric probe-row method, plus factoring into monomial roots +-v^k.

#include <utility>
#include <vector>

#include "qgw/tensor.hpp"

namespace qgw {

struct UnderdeterminedSystem : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InconsistentSystem : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonMonomialRoot : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ascending coefficients, monic: coeffs.back() == 1
using Poly = std::vector<FracElem>;

struct MinPolyResult {
    int degree = 0;
    Poly coefficients;
    std::vector<CoeffElem> eigenvalues;  // empty if not factored
    std::vector<FracElem> elementary_symmetric;  // Delta_1 .. Delta_degree
    std::vector<std::pair<int, int>> probe_rows_used;  // probe method only
};

// braiding PR
TensorMatrix braiding(const TensorMatrix& R);

MinPolyResult minpoly_generic(const TensorMatrix& M);
MinPolyResult minpoly_generic(const SMat& M);

// Rows are (a, b) pairs, 1-based. With extend, further rows are taken in
// lexicographic order while the system is underdetermined.
MinPolyResult minpoly_probe(const TensorMatrix& M, int degree, const std::vector<std::pair<int, int>>& probe_rows,
                            bool extend = true);

std::vector<CoeffElem> factor_monomial_roots(const Poly& p, int bound = 64);
// fills eigenvalues, throws NonMonomialRoot if the polynomial does not split
void attach_roots(MinPolyResult& r, int bound = 64);

Poly poly_from_roots(const std::vector<CoeffElem>& roots);
std::vector<FracElem> deltas_from_poly(const Poly& p);
Poly poly_from_deltas(const std::vector<FracElem>& deltas);
// e_k of the roots, k = 1..n
std::vector<CoeffElem> elementary_symmetric(const std::vector<CoeffElem>& roots);

bool annihilates(const SMat& M, const Poly& p);
bool annihilates_roots(const SMat& M, const std::vector<CoeffElem>& roots);
// every polynomial obtained by dropping one root (one copy) fails to annihilate
bool is_minimal(const SMat& M, const std::vector<CoeffElem>& roots);

std::string poly_str(const Poly& p);
json to_json(const MinPolyResult& r);

}  // namespace qgw
