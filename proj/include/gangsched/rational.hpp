#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

#include <gmpxx.h>

namespace gangsched {

// Exact rational number, always in lowest terms with a positive denominator.
// Thin value wrapper over GMP's mpq_class so the rest of the code never
// touches GMP directly.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t value);  // NOLINT: implicit integer promotion is intended
    Rational(std::int64_t num, std::int64_t den);

    static Rational from_string(const std::string &s);

    std::string numerator_str() const;
    std::string denominator_str() const;

    bool is_integer() const;
    int sign() const;

    // Integer parts; throw std::overflow_error outside the int64 range.
    std::int64_t floor() const;
    std::int64_t ceil() const;

    // Canonical "p/q" form; integers print without the "/1".
    std::string str() const;

    // Fixed-point decimal with `digits` fractional digits, round half to even.
    std::string to_decimal(unsigned digits) const;

    double to_double() const;

    Rational &operator+=(const Rational &o);
    Rational &operator-=(const Rational &o);
    Rational &operator*=(const Rational &o);
    Rational &operator/=(const Rational &o);

    friend Rational operator+(Rational a, const Rational &b) { return a += b; }
    friend Rational operator-(Rational a, const Rational &b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational &b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational &b) { return a /= b; }
    Rational operator-() const;

    friend bool operator==(const Rational &a, const Rational &b);
    friend std::strong_ordering operator<=>(const Rational &a, const Rational &b);

    friend std::ostream &operator<<(std::ostream &os, const Rational &r);

private:
    explicit Rational(mpq_class v) : value_(std::move(v)) {}

    mpq_class value_{0};
};

}  // namespace gangsched
