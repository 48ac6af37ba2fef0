#include "gangsched/rational.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>

namespace gangsched {

namespace {

mpz_class to_mpz(std::int64_t v)
{
    // mpz_class has no portable int64 constructor; go through the string form.
    return mpz_class(std::to_string(v));
}

std::int64_t to_int64(const mpz_class &z)
{
    static const mpz_class lo = to_mpz(std::numeric_limits<std::int64_t>::min());
    static const mpz_class hi = to_mpz(std::numeric_limits<std::int64_t>::max());
    if (z < lo || z > hi)
        throw std::overflow_error("rational value out of int64 range");
    return std::stoll(z.get_str());
}

}  // namespace

Rational::Rational(std::int64_t value) : value_(to_mpz(value)) {}

Rational::Rational(std::int64_t num, std::int64_t den)
{
    if (den == 0)
        throw std::domain_error("rational with zero denominator");
    value_ = mpq_class(to_mpz(num), to_mpz(den));
    value_.canonicalize();
}

Rational Rational::from_string(const std::string &s)
{
    mpq_class q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("not a rational: " + s);
    if (q.get_den() == 0)
        throw std::domain_error("rational with zero denominator");
    q.canonicalize();
    return Rational(std::move(q));
}

std::string Rational::numerator_str() const { return value_.get_num().get_str(); }
std::string Rational::denominator_str() const { return value_.get_den().get_str(); }

bool Rational::is_integer() const { return value_.get_den() == 1; }

int Rational::sign() const { return sgn(value_); }

std::int64_t Rational::floor() const
{
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
    return to_int64(q);
}

std::int64_t Rational::ceil() const
{
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
    return to_int64(q);
}

std::string Rational::str() const { return value_.get_str(10); }

std::string Rational::to_decimal(unsigned digits) const
{
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);

    // scaled = num * 10^digits / den, rounded half to even.
    mpz_class num = value_.get_num() * scale;
    const mpz_class &den = value_.get_den();
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    const int cmp_half = cmp(r * 2, den);
    if (cmp_half > 0 || (cmp_half == 0 && mpz_odd_p(q.get_mpz_t())))
        q += 1;

    const bool negative = q < 0;
    mpz_class mag = abs(q);
    std::string s = mag.get_str();
    if (s.size() <= digits)
        s.insert(0, digits + 1 - s.size(), '0');
    if (digits > 0)
        s.insert(s.size() - digits, ".");
    return negative ? "-" + s : s;
}

double Rational::to_double() const { return value_.get_d(); }

Rational &Rational::operator+=(const Rational &o)
{
    value_ += o.value_;
    return *this;
}

Rational &Rational::operator-=(const Rational &o)
{
    value_ -= o.value_;
    return *this;
}

Rational &Rational::operator*=(const Rational &o)
{
    value_ *= o.value_;
    return *this;
}

Rational &Rational::operator/=(const Rational &o)
{
    if (sgn(o.value_) == 0)
        throw std::domain_error("rational division by zero");
    value_ /= o.value_;
    return *this;
}

Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

bool operator==(const Rational &a, const Rational &b) { return a.value_ == b.value_; }

std::strong_ordering operator<=>(const Rational &a, const Rational &b)
{
    const int c = cmp(a.value_, b.value_);
    if (c < 0)
        return std::strong_ordering::less;
    if (c > 0)
        return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::ostream &operator<<(std::ostream &os, const Rational &r) { return os << r.str(); }

}  // namespace gangsched
