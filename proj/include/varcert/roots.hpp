#pragma once

#include <vector>

#include "varcert/qlinalg.hpp"

namespace varcert {

/// Univariate polynomial with ascending rational coefficients; c[i] is the
/// coefficient of t^i. Trailing zeros are allowed and ignored.
using UniPoly = QVector;

Rational unipoly_eval(const UniPoly& p, const Rational& t);
int unipoly_degree(const UniPoly& p);  // -1 for the zero polynomial
UniPoly unipoly_derivative(const UniPoly& p);

struct RootInterval {
    Rational lo, hi;  // half-open (lo, hi], one real root inside
};

/// Isolating intervals for the distinct real roots of p (Sturm bisection).
std::vector<RootInterval> isolate_real_roots(const UniPoly& p);

/// Exact rational roots of p with denominator at most `den_cap`, ascending.
std::vector<Rational> rational_roots(const UniPoly& p, const mpz_class& den_cap);

}  // namespace varcert
