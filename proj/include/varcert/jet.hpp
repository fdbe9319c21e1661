#pragma once

#include <optional>
#include <vector>

#include "varcert/ideal.hpp"
#include "varcert/polynomial.hpp"

namespace varcert {

/// Truncated power series a0 + a1*e + ... + a_{m-1}*e^{m-1}, exact rational
/// coefficients, arithmetic mod e^m. Orders never mix implicitly: combining
/// jets of different orders throws.
struct Jet {
    int order = 1;
    std::vector<Rational> c;  // exactly `order` coefficients

    Jet() : c(1, Rational(0)) {}
    explicit Jet(int m) : order(m), c(static_cast<size_t>(m), Rational(0)) {
        if (m < 1) throw std::invalid_argument("jet order must be >= 1");
    }
    Jet(int m, std::vector<Rational> coeffs);

    static Jet constant(int m, const Rational& a);
    static Jet eps(int m);  // the generator e; requires m >= 2

    bool is_zero() const;
    Jet operator+(const Jet& b) const;
    Jet operator-(const Jet& b) const;
    Jet operator*(const Jet& b) const;
    Jet scaled(const Rational& k) const;
    Jet pow(unsigned e) const;
    bool operator==(const Jet& b) const { return order == b.order && c == b.c; }

    /// (index, coefficient) of the first nonzero coefficient; nullopt for 0.
    std::optional<std::pair<int, Rational>> leading() const;

    /// Zero, or strictly positive leading coefficient.
    bool nonneg() const;

    Jet truncated(int m2) const;
    /// a_j -> (-1)^j a_j, the parameter sign flip.
    Jet negated_parameter() const;
};

/// Candidate homomorphism A -> R[e]/(e^m) at basepoint P: one image jet per
/// ambient variable, constant coefficients pinned to P. Whether it actually
/// kills the ideal is checked separately by arc_is_valid.
struct ArcHom {
    int order = 1;
    std::vector<Rational> basepoint;
    std::vector<Jet> images;

    ArcHom() = default;
    ArcHom(std::vector<Rational> point, std::vector<Jet> imgs);

    static ArcHom constant_arc(const std::vector<Rational>& point, int m);
    size_t nvars() const { return basepoint.size(); }
};

Jet arc_apply(const ArcHom& arc, const Polynomial& f);
bool arc_is_valid(const ArcHom& arc, const GroebnerContext& ctx);
ArcHom arc_negate_parameter(const ArcHom& arc);
ArcHom arc_truncate(const ArcHom& arc, int m2);

}  // namespace varcert
