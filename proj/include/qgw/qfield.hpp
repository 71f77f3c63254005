#pragma once

// Exact scalars for the R-matrix computations.
//
// Everything lives in Q(v)[r2, r3] / (r2^2 - [2]_q, r3^2 - [3]_q) with v = q^{1/4},
// so every power of q that shows up (q^{-21/4}, q^{9/2}, ...) is an integer power of v.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace qgw {

using Rational = mpq_class;
using json = nlohmann::json;

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct DivisionByZero : std::domain_error {
    using std::domain_error::domain_error;
};

Rational parse_rational(const std::string& s);
std::string rational_str(const Rational& r);

// Sparse Laurent polynomial in v, terms sorted by exponent, no zero coefficients.
class LaurentV {
public:
    using Term = std::pair<int, Rational>;

    LaurentV() = default;
    LaurentV(long c);  // NOLINT: constants convert implicitly
    explicit LaurentV(const Rational& c);

    static LaurentV mono(int exp, const Rational& c = 1);
    // q^{e} with e a quarter-integer rational
    static LaurentV qpow(const Rational& e, const Rational& c = 1);
    static LaurentV from_terms(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    bool is_monomial() const { return terms_.size() == 1; }
    bool is_constant() const { return is_zero() || (terms_.size() == 1 && terms_[0].first == 0); }
    int low() const { return terms_.front().first; }
    int high() const { return terms_.back().first; }
    const Rational& lead() const { return terms_.back().second; }
    Rational coeff(int exp) const;
    Rational at_one() const;  // specialization v -> 1

    LaurentV operator-() const;
    LaurentV& operator+=(const LaurentV& o);
    LaurentV& operator-=(const LaurentV& o);
    LaurentV& operator*=(const LaurentV& o);
    friend LaurentV operator+(LaurentV a, const LaurentV& b) { return a += b; }
    friend LaurentV operator-(LaurentV a, const LaurentV& b) { return a -= b; }
    friend LaurentV operator*(const LaurentV& a, const LaurentV& b);
    friend bool operator==(const LaurentV& a, const LaurentV& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const LaurentV& a, const LaurentV& b) { return !(a == b); }

    LaurentV scaled(const Rational& c) const;
    LaurentV shifted(int k) const;
    // v -> v^k substitution (k may be negative)
    LaurentV substitute(int k) const;

    // Exact quotient; throws DomainError if d does not divide *this.
    LaurentV divexact(const LaurentV& d) const;
    bool divides(const LaurentV& n) const;
    // Monic-normalized gcd with lowest exponent 0; gcd(0, 0) = 0.
    static LaurentV gcd(const LaurentV& a, const LaurentV& b);

    std::string str() const;  // rendered in powers of q

private:
    std::vector<Term> terms_;
    void prune();
    friend LaurentV poly_rem(const LaurentV&, const LaurentV&);
};

// c[0] + c[1] r2 + c[2] r3 + c[3] r2 r3
class CoeffElem {
public:
    static constexpr const char* kPartNames[4] = {"1", "r2", "r3", "r2r3"};

    CoeffElem() = default;
    CoeffElem(long c) : p_{LaurentV(c), {}, {}, {}} {}  // NOLINT
    CoeffElem(const LaurentV& c) : p_{c, {}, {}, {}} {}  // NOLINT
    CoeffElem(LaurentV c0, LaurentV c2, LaurentV c3, LaurentV c23)
        : p_{std::move(c0), std::move(c2), std::move(c3), std::move(c23)} {}

    static CoeffElem r2();
    static CoeffElem r3();
    static CoeffElem qpow(const Rational& e, const Rational& c = 1) { return LaurentV::qpow(e, c); }

    const LaurentV& part(int i) const { return p_[i]; }
    LaurentV& part(int i) { return p_[i]; }
    bool is_zero() const;
    bool is_pure() const;  // no radical parts
    bool is_one() const { return is_pure() && p_[0].is_one(); }
    bool is_monomial() const { return is_pure() && p_[0].is_monomial(); }
    Rational at_one() const;  // v -> 1, r2 -> sqrt2 is not rational, so only pure parts allowed

    CoeffElem operator-() const;
    CoeffElem& operator+=(const CoeffElem& o);
    CoeffElem& operator-=(const CoeffElem& o);
    CoeffElem& operator*=(const CoeffElem& o) { return *this = *this * o; }
    friend CoeffElem operator+(CoeffElem a, const CoeffElem& b) { return a += b; }
    friend CoeffElem operator-(CoeffElem a, const CoeffElem& b) { return a -= b; }
    friend CoeffElem operator*(const CoeffElem& a, const CoeffElem& b);
    friend bool operator==(const CoeffElem& a, const CoeffElem& b) { return a.p_ == b.p_; }
    friend bool operator!=(const CoeffElem& a, const CoeffElem& b) { return !(a == b); }

    CoeffElem scaled(const Rational& c) const;
    CoeffElem scaled(const LaurentV& c) const;
    // sign conjugate: mask bit 0 flips r2, bit 1 flips r3
    CoeffElem conjugate(int mask) const;
    // product of the four sign conjugates; always pure
    LaurentV norm() const;
    CoeffElem divexact(const LaurentV& d) const;

    std::string str() const;

private:
    std::array<LaurentV, 4> p_;
};

CoeffElem coeff_mul(const CoeffElem& a, const CoeffElem& b);

// Field element: numerator over a radical-free denominator, kept reduced.
class FracElem {
public:
    FracElem() = default;
    FracElem(long c) : num_(c), den_(1) {}  // NOLINT
    FracElem(const CoeffElem& n) : num_(n), den_(1) {}  // NOLINT
    FracElem(const CoeffElem& n, const CoeffElem& d);

    const CoeffElem& num() const { return num_; }
    CoeffElem den() const { return CoeffElem(den_); }
    const LaurentV& den_poly() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_integral() const { return den_.is_one(); }
    // throws DomainError unless the denominator is 1
    const CoeffElem& to_coeff() const;

    FracElem inv() const;
    FracElem operator-() const;
    friend FracElem operator+(const FracElem& a, const FracElem& b);
    friend FracElem operator-(const FracElem& a, const FracElem& b);
    friend FracElem operator*(const FracElem& a, const FracElem& b);
    friend FracElem operator/(const FracElem& a, const FracElem& b) { return a * b.inv(); }
    FracElem& operator+=(const FracElem& o) { return *this = *this + o; }
    FracElem& operator-=(const FracElem& o) { return *this = *this - o; }
    FracElem& operator*=(const FracElem& o) { return *this = *this * o; }
    friend bool operator==(const FracElem& a, const FracElem& b);
    friend bool operator!=(const FracElem& a, const FracElem& b) { return !(a == b); }

    std::string str() const;

private:
    CoeffElem num_;
    LaurentV den_{1};
    void reduce();
};

FracElem coeff_inv(const CoeffElem& a);

// [n] at base q^{e/4}: sum_{j<n} v^{e(n-1-2j)}
LaurentV qint_base(int n, int e);
CoeffElem qint(int n);
CoeffElem qfactorial(int n);
LaurentV qfactorial_base(int n, int e);
CoeffElem qbinomial(int n, int k);
LaurentV qbinomial_base(int n, int k, int e);

// "q^{-21/4}" style rendering of v^k
std::string qpow_str(int vexp);

json to_json(const LaurentV& x);
LaurentV laurent_from_json(const json& j);
json to_json(const CoeffElem& x);
CoeffElem coeff_from_json(const json& j);
json to_json(const FracElem& x);
FracElem frac_from_json(const json& j);

}  // namespace qgw
