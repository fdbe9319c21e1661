#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "varcert/rational.hpp"

namespace varcert {

/// Exponent vector over a fixed ambient variable set.
struct Monomial {
    std::vector<uint32_t> exps;

    Monomial() = default;
    explicit Monomial(size_t nvars) : exps(nvars, 0) {}
    explicit Monomial(std::vector<uint32_t> e) : exps(std::move(e)) {}

    size_t nvars() const { return exps.size(); }
    uint32_t degree() const;
    bool is_one() const { return degree() == 0; }
    bool divides(const Monomial& m) const;

    Monomial operator*(const Monomial& m) const;
    /// Componentwise difference; caller guarantees divisibility.
    Monomial quotient(const Monomial& m) const;
    Monomial lcm(const Monomial& m) const;

    bool operator==(const Monomial& m) const { return exps == m.exps; }
};

enum class OrderKind { Lex, GrevLex };

/// Total order on monomials of a fixed ring. `priority[0]` is the largest
/// variable; default permutation is the declaration order.
struct TermOrder {
    OrderKind kind = OrderKind::GrevLex;
    std::vector<int> priority;

    static TermOrder lex(size_t nvars);
    static TermOrder grevlex(size_t nvars);

    std::strong_ordering compare(const Monomial& a, const Monomial& b) const;
    bool less(const Monomial& a, const Monomial& b) const {
        return compare(a, b) == std::strong_ordering::less;
    }
    std::string name() const { return kind == OrderKind::Lex ? "lex" : "grevlex"; }
};

/// Storage order, independent of any user-selected TermOrder, so that equal
/// polynomials always hold identical term vectors.
bool canonical_monomial_less(const Monomial& a, const Monomial& b);

/// Sparse multivariate polynomial with exact rational coefficients.
/// Terms are kept sorted by canonical_monomial_less with no zero coefficients.
class Polynomial {
  public:
    Polynomial() : nvars_(0) {}
    explicit Polynomial(size_t nvars) : nvars_(nvars) {}

    static Polynomial zero(size_t nvars) { return Polynomial(nvars); }
    static Polynomial constant(size_t nvars, const Rational& c);
    static Polynomial variable(size_t nvars, size_t i);
    static Polynomial term(size_t nvars, Monomial m, const Rational& c);

    size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const std::vector<std::pair<Monomial, Rational>>& terms() const { return terms_; }

    /// nullopt marks the zero polynomial (degree -infinity).
    std::optional<int> total_degree() const;

    Rational coefficient(const Monomial& m) const;
    void add_term(const Monomial& m, const Rational& c);

    Polynomial operator+(const Polynomial& g) const;
    Polynomial operator-(const Polynomial& g) const;
    Polynomial operator-() const;
    Polynomial operator*(const Polynomial& g) const;
    Polynomial scaled(const Rational& c) const;
    Polynomial pow(unsigned e) const;

    bool operator==(const Polynomial& g) const {
        return nvars_ == g.nvars_ && terms_ == g.terms_;
    }

    Rational eval(const std::vector<Rational>& point) const;
    double eval_double(const std::vector<double>& point) const;
    /// f(x + P), so the constant term of the result is f(P).
    Polynomial translated(const std::vector<Rational>& point) const;
    Polynomial derivative(size_t var) const;

    /// Largest term under the given order; polynomial must be nonzero.
    const std::pair<Monomial, Rational>& leading_term(const TermOrder& ord) const;

    /// Divide all coefficients by the leading coefficient under ord.
    Polynomial monic(const TermOrder& ord) const;

    /// Integer-content normalization: clear denominators, divide by gcd of
    /// numerators, keep the sign of the leading canonical term positive.
    Polynomial integer_normalized() const;

  private:
    size_t nvars_;
    std::vector<std::pair<Monomial, Rational>> terms_;
};

std::string to_string(const Monomial& m, const std::vector<std::string>& vars);
std::string to_string(const Polynomial& f, const std::vector<std::string>& vars);

}  // namespace varcert
