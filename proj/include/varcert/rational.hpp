#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace varcert {

/// Arbitrary-precision rational, canonical (reduced, positive denominator).
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline int rat_sign(const Rational& q) { return sgn(q); }

/// "p/q" with the "/q" omitted for integers.
std::string rat_to_string(const Rational& q);

/// Accepts "p", "-p", "p/q" and plain decimals like "0.25".
std::optional<Rational> rat_from_string(std::string_view s);

/// Exact value of a finite double (doubles are dyadic rationals).
Rational rat_from_double(double x);

inline double rat_to_double(const Rational& q) { return q.get_d(); }

/// Simplest rational in [lo, hi]: minimal denominator, then minimal |numerator|.
/// Stern-Brocot descent; lo <= hi required.
Rational simplest_in_interval(const Rational& lo, const Rational& hi);

/// Simplest rational within +-radius of x, subject to a denominator cap.
/// nullopt if no rational in the window has denominator <= cap.
std::optional<Rational> round_rational(const Rational& x, const Rational& radius,
                                       const mpz_class& denominator_cap);

}  // namespace varcert
