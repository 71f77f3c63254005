#pragma once

// Seeded random generators shared by the property suites and the acceptance runner.

#include <ostream>
#include <random>

#include "qgw/tensor.hpp"

namespace qgw::testing_support {

using Rng = std::mt19937_64;

inline Rational small_rational(Rng& g)
{
    std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
    Rational r(num(g), den(g));
    r.canonicalize();
    return r;
}

inline LaurentV random_laurent(Rng& g, int max_terms = 3, int span = 8)
{
    std::uniform_int_distribution<int> nt(0, max_terms), ex(-span, span);
    std::vector<LaurentV::Term> t;
    int k = nt(g);
    for (int i = 0; i < k; ++i)
        t.emplace_back(ex(g), small_rational(g));
    return LaurentV::from_terms(t);
}

// radical parts are switched on with probability 1/3 each
inline CoeffElem random_coeff(Rng& g)
{
    std::uniform_int_distribution<int> pick(0, 2);
    CoeffElem c(random_laurent(g));
    for (int i = 1; i < 4; ++i)
        if (pick(g) == 0)
            c.part(i) = random_laurent(g, 2, 4);
    return c;
}

inline FracElem random_frac(Rng& g)
{
    CoeffElem d;
    while (d.is_zero())
        d = CoeffElem(random_laurent(g, 2, 4));
    return FracElem(random_coeff(g), d);
}

// +-q^{k/4}
inline CoeffElem random_monomial(Rng& g, int span = 24)
{
    std::uniform_int_distribution<int> ex(-span, span), sg(0, 1);
    return CoeffElem::qpow(Rational(ex(g), 4), sg(g) ? 1 : -1);
}

inline TensorMatrix random_tensor(Rng& g, int dim, double density = 0.3)
{
    std::bernoulli_distribution keep(density);
    TensorMatrix M(dim);
    size_t n = static_cast<size_t>(dim) * dim;
    for (size_t r = 0; r < n; ++r)
        for (size_t c = 0; c < n; ++c)
            if (keep(g))
                M.m.set(r, c, random_coeff(g));
    return M;
}

inline SMat random_smat(Rng& g, size_t n, double density)
{
    std::bernoulli_distribution keep(density);
    SMat m(n);
    for (size_t r = 0; r < n; ++r)
        for (size_t c = 0; c < n; ++c)
            if (keep(g))
                m.set(r, c, random_coeff(g));
    return m;
}

// S D S^{-1} with D a diagonal of monomials drawn from a small pool and S unit upper-triangular
inline TensorMatrix random_diagonalizable(Rng& g, int dim, const std::vector<CoeffElem>& pool)
{
    size_t n = static_cast<size_t>(dim) * dim;
    std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
    std::bernoulli_distribution keep(0.3);
    std::uniform_int_distribution<int> ex(-4, 4), cf(-2, 2);
    SMat D(n), S = SMat::identity(n);
    for (size_t i = 0; i < n; ++i)
        D.set(i, i, pool[pick(g)]);
    for (size_t r = 0; r < n; ++r)
        for (size_t c = r + 1; c < n; ++c)
            if (keep(g))
                S.set(r, c, CoeffElem::qpow(ex(g), cf(g)));
    return TensorMatrix(dim, S * D * invert(S));
}

}  // namespace qgw::testing_support

namespace qgw {

inline void PrintTo(const CoeffElem& c, std::ostream* os) { *os << c.str(); }
inline void PrintTo(const FracElem& f, std::ostream* os) { *os << f.str(); }

}  // namespace qgw
