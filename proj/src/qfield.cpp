#include "qgw/qfield.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

namespace qgw {

Rational parse_rational(const std::string& s)
{
    Rational r;
    if (s.empty() || r.set_str(s, 10) != 0)
        throw DomainError("bad rational literal '" + s + "'");
    if (r.get_den() == 0)
        throw DomainError("zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

std::string rational_str(const Rational& r)
{
    return r.get_str();
}

// ---- dense polynomial helpers (ascending coefficients) ----

namespace {

using Dense = std::vector<Rational>;

void trim(Dense& a)
{
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

Dense to_dense(const LaurentV& x, int shift)
{
    Dense d;
    if (x.is_zero())
        return d;
    d.assign(x.high() - shift + 1, Rational(0));
    for (const auto& [e, c] : x.terms())
        d[e - shift] = c;
    return d;
}

LaurentV from_dense(const Dense& d, int shift)
{
    std::vector<LaurentV::Term> t;
    for (size_t i = 0; i < d.size(); ++i)
        if (d[i] != 0)
            t.emplace_back(static_cast<int>(i) + shift, d[i]);
    return LaurentV::from_terms(std::move(t));
}

// a = q*b + r; b nonzero
void divmod(Dense a, const Dense& b, Dense& q, Dense& r)
{
    trim(a);
    q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
    const Rational& lb = b.back();
    for (long i = static_cast<long>(a.size()) - static_cast<long>(b.size()); i >= 0; --i) {
        Rational f = a[i + b.size() - 1] / lb;
        if (f == 0)
            continue;
        q[i] = f;
        for (size_t j = 0; j < b.size(); ++j)
            a[i + j] -= f * b[j];
    }
    trim(a);
    trim(q);
    r = std::move(a);
}

const LaurentV& q2()
{
    static const LaurentV v = qint_base(2, 4);
    return v;
}

const LaurentV& q3()
{
    static const LaurentV v = qint_base(3, 4);
    return v;
}

}  // namespace

// ---- LaurentV ----

LaurentV::LaurentV(long c)
{
    if (c != 0)
        terms_.emplace_back(0, Rational(c));
}

LaurentV::LaurentV(const Rational& c)
{
    if (c != 0)
        terms_.emplace_back(0, c);
}

LaurentV LaurentV::mono(int exp, const Rational& c)
{
    LaurentV r;
    if (c != 0)
        r.terms_.emplace_back(exp, c);
    return r;
}

LaurentV LaurentV::qpow(const Rational& e, const Rational& c)
{
    Rational four = e * 4;
    if (four.get_den() != 1)
        throw DomainError("exponent " + e.get_str() + " is not a quarter-integer");
    return mono(static_cast<int>(four.get_num().get_si()), c);
}

LaurentV LaurentV::from_terms(std::vector<Term> terms)
{
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.first < b.first; });
    LaurentV r;
    for (auto& t : terms) {
        if (!r.terms_.empty() && r.terms_.back().first == t.first)
            r.terms_.back().second += t.second;
        else
            r.terms_.push_back(std::move(t));
    }
    r.prune();
    return r;
}

void LaurentV::prune()
{
    terms_.erase(std::remove_if(terms_.begin(), terms_.end(),
                                [](const Term& t) { return t.second == 0; }),
                 terms_.end());
}

bool LaurentV::is_one() const
{
    return terms_.size() == 1 && terms_[0].first == 0 && terms_[0].second == 1;
}

Rational LaurentV::coeff(int exp) const
{
    auto it = std::lower_bound(terms_.begin(), terms_.end(), exp,
                               [](const Term& t, int e) { return t.first < e; });
    if (it != terms_.end() && it->first == exp)
        return it->second;
    return 0;
}

Rational LaurentV::at_one() const
{
    Rational s = 0;
    for (const auto& t : terms_)
        s += t.second;
    return s;
}

LaurentV LaurentV::operator-() const
{
    LaurentV r = *this;
    for (auto& t : r.terms_)
        t.second = -t.second;
    return r;
}

LaurentV& LaurentV::operator+=(const LaurentV& o)
{
    if (o.is_zero())
        return *this;
    if (is_zero())
        return *this = o;
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
            out.push_back(std::move(terms_[i++]));
        } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
            out.push_back(o.terms_[j++]);
        } else {
            Rational s = terms_[i].second + o.terms_[j].second;
            if (s != 0)
                out.emplace_back(terms_[i].first, std::move(s));
            ++i;
            ++j;
        }
    }
    terms_ = std::move(out);
    return *this;
}

LaurentV& LaurentV::operator-=(const LaurentV& o)
{
    return *this += -o;
}

LaurentV operator*(const LaurentV& a, const LaurentV& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    if (a.terms_.size() == 1 || b.terms_.size() == 1) {
        const LaurentV& m = a.terms_.size() == 1 ? a : b;
        const LaurentV& o = a.terms_.size() == 1 ? b : a;
        LaurentV r;
        r.terms_.reserve(o.terms_.size());
        for (const auto& [e, c] : o.terms_)
            r.terms_.emplace_back(e + m.terms_[0].first, c * m.terms_[0].second);
        return r;
    }
    const int lo = a.low() + b.low();
    Dense acc(a.high() + b.high() - lo + 1, Rational(0));
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_)
            acc[ea + eb - lo] += ca * cb;
    return from_dense(acc, lo);
}

LaurentV& LaurentV::operator*=(const LaurentV& o)
{
    return *this = *this * o;
}

LaurentV LaurentV::scaled(const Rational& c) const
{
    if (c == 0)
        return {};
    LaurentV r = *this;
    for (auto& t : r.terms_)
        t.second *= c;
    return r;
}

LaurentV LaurentV::shifted(int k) const
{
    LaurentV r = *this;
    for (auto& t : r.terms_)
        t.first += k;
    return r;
}

LaurentV LaurentV::substitute(int k) const
{
    std::vector<Term> t;
    for (const auto& [e, c] : terms_)
        t.emplace_back(e * k, c);
    return from_terms(std::move(t));
}

LaurentV LaurentV::divexact(const LaurentV& d) const
{
    if (d.is_zero())
        throw DivisionByZero("Laurent division by zero");
    if (is_zero())
        return {};
    if (d.is_monomial())
        return shifted(-d.low()).scaled(1 / d.lead());
    Dense q, r;
    divmod(to_dense(*this, low()), to_dense(d, d.low()), q, r);
    if (!r.empty())
        throw DomainError("inexact Laurent division");
    return from_dense(q, low() - d.low());
}

bool LaurentV::divides(const LaurentV& n) const
{
    if (is_zero())
        return n.is_zero();
    if (n.is_zero() || is_monomial())
        return true;
    Dense q, r;
    divmod(to_dense(n, n.low()), to_dense(*this, low()), q, r);
    return r.empty();
}

LaurentV LaurentV::gcd(const LaurentV& a, const LaurentV& b)
{
    if (a.is_zero() && b.is_zero())
        return {};
    Dense x = a.is_zero() ? Dense{} : to_dense(a, a.low());
    Dense y = b.is_zero() ? Dense{} : to_dense(b, b.low());
    if (x.size() < y.size())
        std::swap(x, y);
    while (!y.empty()) {
        Dense q, r;
        divmod(x, y, q, r);
        x = std::move(y);
        y = std::move(r);
    }
    Rational l = x.back();
    for (auto& c : x)
        c /= l;
    return from_dense(x, 0);
}

std::string qpow_str(int vexp)
{
    if (vexp == 0)
        return "1";
    if (vexp == 4)
        return "q";
    int g = std::gcd(std::abs(vexp), 4);
    int num = vexp / g, den = 4 / g;
    std::ostringstream os;
    os << "q^{" << num;
    if (den != 1)
        os << "/" << den;
    os << "}";
    return os.str();
}

std::string LaurentV::str() const
{
    if (is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        Rational c = it->second;
        bool neg = c < 0;
        if (neg)
            c = -c;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        if (it->first == 0) {
            os << c.get_str();
            continue;
        }
        if (c != 1) {
            if (c.get_den() != 1)
                os << "(" << c.get_str() << ")";
            else
                os << c.get_str();
        }
        os << qpow_str(it->first);
    }
    return os.str();
}

// ---- CoeffElem ----

CoeffElem CoeffElem::r2()
{
    return CoeffElem({}, LaurentV(1), {}, {});
}

CoeffElem CoeffElem::r3()
{
    return CoeffElem({}, {}, LaurentV(1), {});
}

bool CoeffElem::is_zero() const
{
    return p_[0].is_zero() && p_[1].is_zero() && p_[2].is_zero() && p_[3].is_zero();
}

bool CoeffElem::is_pure() const
{
    return p_[1].is_zero() && p_[2].is_zero() && p_[3].is_zero();
}

Rational CoeffElem::at_one() const
{
    if (!is_pure())
        throw DomainError("v -> 1 specialization of a radical element");
    return p_[0].at_one();
}

CoeffElem CoeffElem::operator-() const
{
    return CoeffElem(-p_[0], -p_[1], -p_[2], -p_[3]);
}

CoeffElem& CoeffElem::operator+=(const CoeffElem& o)
{
    for (int i = 0; i < 4; ++i)
        p_[i] += o.p_[i];
    return *this;
}

CoeffElem& CoeffElem::operator-=(const CoeffElem& o)
{
    for (int i = 0; i < 4; ++i)
        p_[i] -= o.p_[i];
    return *this;
}

CoeffElem operator*(const CoeffElem& a, const CoeffElem& b)
{
    if (a.is_pure() && b.is_pure())
        return CoeffElem(a.p_[0] * b.p_[0]);
    CoeffElem r;
    for (int i = 0; i < 4; ++i) {
        if (a.p_[i].is_zero())
            continue;
        for (int j = 0; j < 4; ++j) {
            if (b.p_[j].is_zero())
                continue;
            LaurentV t = a.p_[i] * b.p_[j];
            if (i & j & 1)
                t *= q2();
            if (i & j & 2)
                t *= q3();
            r.p_[i ^ j] += t;
        }
    }
    return r;
}

CoeffElem coeff_mul(const CoeffElem& a, const CoeffElem& b)
{
    return a * b;
}

CoeffElem CoeffElem::scaled(const Rational& c) const
{
    return CoeffElem(p_[0].scaled(c), p_[1].scaled(c), p_[2].scaled(c), p_[3].scaled(c));
}

CoeffElem CoeffElem::scaled(const LaurentV& c) const
{
    return CoeffElem(p_[0] * c, p_[1] * c, p_[2] * c, p_[3] * c);
}

CoeffElem CoeffElem::conjugate(int mask) const
{
    CoeffElem r = *this;
    for (int i = 0; i < 4; ++i)
        if (std::popcount(static_cast<unsigned>(i & mask)) & 1)
            r.p_[i] = -r.p_[i];
    return r;
}

LaurentV CoeffElem::norm() const
{
    CoeffElem x = *this * conjugate(1);
    CoeffElem y = x * x.conjugate(2);
    return y.p_[0];
}

CoeffElem CoeffElem::divexact(const LaurentV& d) const
{
    return CoeffElem(p_[0].divexact(d), p_[1].divexact(d), p_[2].divexact(d), p_[3].divexact(d));
}

std::string CoeffElem::str() const
{
    if (is_pure())
        return p_[0].str();
    static const char* names[4] = {"", "r2", "r3", "r2*r3"};
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < 4; ++i) {
        if (p_[i].is_zero())
            continue;
        if (!first)
            os << " + ";
        first = false;
        if (i == 0)
            os << "(" << p_[i].str() << ")";
        else if (p_[i].is_one())
            os << names[i];
        else
            os << "(" << p_[i].str() << ")*" << names[i];
    }
    return os.str();
}

// ---- FracElem ----

FracElem::FracElem(const CoeffElem& n, const CoeffElem& d)
{
    if (d.is_zero())
        throw DivisionByZero("zero denominator");
    if (d.is_pure()) {
        num_ = n;
        den_ = d.part(0);
    } else {
        CoeffElem c = d.conjugate(1) * d.conjugate(2) * d.conjugate(3);
        num_ = n * c;
        den_ = (d * c).part(0);
    }
    reduce();
}

void FracElem::reduce()
{
    if (num_.is_zero()) {
        num_ = CoeffElem();
        den_ = LaurentV(1);
        return;
    }
    if (den_.is_one())
        return;
    if (!den_.is_monomial()) {
        LaurentV g = den_;
        for (int i = 0; i < 4 && !g.is_constant(); ++i)
            if (!num_.part(i).is_zero())
                g = LaurentV::gcd(g, num_.part(i));
        if (!g.is_constant()) {
            num_ = num_.divexact(g);
            den_ = den_.divexact(g);
        }
    }
    // fold the unit v^low * lead into the numerator
    LaurentV unit = LaurentV::mono(den_.low(), den_.lead());
    num_ = num_.divexact(unit);
    den_ = den_.divexact(unit);
}

const CoeffElem& FracElem::to_coeff() const
{
    if (!den_.is_one())
        throw DomainError("fraction " + str() + " is not a Laurent element");
    return num_;
}

FracElem FracElem::inv() const
{
    if (num_.is_zero())
        throw DivisionByZero("inverse of zero");
    return FracElem(CoeffElem(den_), num_);
}

FracElem FracElem::operator-() const
{
    FracElem r = *this;
    r.num_ = -r.num_;
    return r;
}

FracElem operator+(const FracElem& a, const FracElem& b)
{
    if (a.is_zero())
        return b;
    if (b.is_zero())
        return a;
    FracElem r;
    if (a.den_ == b.den_) {
        r.num_ = a.num_ + b.num_;
        r.den_ = a.den_;
        if (r.den_.is_one())
            return r.num_.is_zero() ? FracElem() : r;
    } else {
        r.num_ = a.num_.scaled(b.den_) + b.num_.scaled(a.den_);
        r.den_ = a.den_ * b.den_;
    }
    r.reduce();
    return r;
}

FracElem operator-(const FracElem& a, const FracElem& b)
{
    return a + (-b);
}

FracElem operator*(const FracElem& a, const FracElem& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    FracElem r;
    r.num_ = a.num_ * b.num_;
    r.den_ = a.den_ * b.den_;
    if (!r.den_.is_one())
        r.reduce();
    return r;
}

bool operator==(const FracElem& a, const FracElem& b)
{
    if (a.den_ == b.den_)
        return a.num_ == b.num_;
    return a.num_.scaled(b.den_) == b.num_.scaled(a.den_);
}

std::string FracElem::str() const
{
    if (den_.is_one())
        return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

FracElem coeff_inv(const CoeffElem& a)
{
    if (a.is_zero())
        throw DivisionByZero("coeff_inv of zero");
    return FracElem(CoeffElem(1), a);
}

// ---- q-numbers ----

LaurentV qint_base(int n, int e)
{
    if (n < 0)
        throw DomainError("q-integer of negative argument");
    std::vector<LaurentV::Term> t;
    for (int j = 0; j < n; ++j)
        t.emplace_back(e * (n - 1 - 2 * j), Rational(1));
    return LaurentV::from_terms(std::move(t));
}

CoeffElem qint(int n)
{
    return qint_base(n, 4);
}

LaurentV qfactorial_base(int n, int e)
{
    if (n < 0)
        throw DomainError("q-factorial of negative argument");
    LaurentV r(1);
    for (int k = 2; k <= n; ++k)
        r *= qint_base(k, e);
    return r;
}

CoeffElem qfactorial(int n)
{
    return qfactorial_base(n, 4);
}

LaurentV qbinomial_base(int n, int k, int e)
{
    if (k < 0 || n < 0 || k > n)
        throw DomainError("q-binomial outside 0 <= k <= n");
    return qfactorial_base(n, e).divexact(qfactorial_base(k, e) * qfactorial_base(n - k, e));
}

CoeffElem qbinomial(int n, int k)
{
    return qbinomial_base(n, k, 4);
}

// ---- serialization ----

json to_json(const LaurentV& x)
{
    json j = json::object();
    for (const auto& [e, c] : x.terms())
        j[std::to_string(e)] = rational_str(c);
    return j;
}

LaurentV laurent_from_json(const json& j)
{
    if (!j.is_object())
        throw DomainError("Laurent record must be an object");
    std::vector<LaurentV::Term> t;
    for (auto it = j.begin(); it != j.end(); ++it) {
        size_t pos = 0;
        int e = std::stoi(it.key(), &pos);
        if (pos != it.key().size())
            throw DomainError("bad exponent key '" + it.key() + "'");
        std::string s = it.value().is_string() ? it.value().get<std::string>() : it.value().dump();
        t.emplace_back(e, parse_rational(s));
    }
    return LaurentV::from_terms(std::move(t));
}

json to_json(const CoeffElem& x)
{
    json j = json::object();
    for (int i = 0; i < 4; ++i)
        if (!x.part(i).is_zero())
            j[CoeffElem::kPartNames[i]] = to_json(x.part(i));
    return j;
}

CoeffElem coeff_from_json(const json& j)
{
    if (!j.is_object())
        throw DomainError("coefficient record must be an object");
    CoeffElem r;
    for (auto it = j.begin(); it != j.end(); ++it) {
        int idx = -1;
        for (int i = 0; i < 4; ++i)
            if (it.key() == CoeffElem::kPartNames[i])
                idx = i;
        if (idx < 0)
            throw DomainError("unknown coefficient part '" + it.key() + "'");
        r.part(idx) = laurent_from_json(it.value());
    }
    return r;
}

json to_json(const FracElem& x)
{
    return json{{"num", to_json(x.num())}, {"den", to_json(x.den_poly())}};
}

FracElem frac_from_json(const json& j)
{
    return FracElem(coeff_from_json(j.at("num")), CoeffElem(laurent_from_json(j.at("den"))));
}

}  // namespace qgw
