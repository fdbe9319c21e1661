#pragma once

#include <stdexcept>
#include <vector>

#include "varcert/polynomial.hpp"

namespace varcert {

struct EmptySchemeError : std::runtime_error {
    EmptySchemeError() : std::runtime_error("empty scheme: the ideal is the unit ideal") {}
};

/// An ideal presented by generators together with its reduced Groebner basis.
/// Immutable after construction; normal forms against it realize the quotient
/// ring arithmetic every other module relies on.
struct GroebnerContext {
    size_t nvars = 0;
    std::vector<Polynomial> generators;
    TermOrder order;
    std::vector<Polynomial> basis;            // reduced, monic, sorted by leading monomial
    std::vector<Monomial> leading_monomials;  // staircase cache, parallel to basis

    bool is_unit_ideal() const {
        return basis.size() == 1 && !basis[0].is_zero() && basis[0].total_degree() == 0;
    }
};

/// Buchberger with normal-strategy pair selection and full auto-reduction.
GroebnerContext groebner(std::vector<Polynomial> gens, TermOrder order);

/// Unique remainder of f under multivariate division by the reduced basis.
Polynomial normal_form(const Polynomial& f, const GroebnerContext& ctx);

bool ideal_member(const Polynomial& f, const GroebnerContext& ctx);

/// Monomials of total degree <= d outside the leading-term ideal, sorted
/// ascending by the context order. They form a basis of the degree-<=d slice
/// of the quotient ring.
std::vector<Monomial> standard_monomials(const GroebnerContext& ctx, int d);

/// Krull dimension of the quotient ring, via maximal independent variable
/// sets of the leading-term ideal. Throws EmptySchemeError for the unit ideal.
int dimension(const GroebnerContext& ctx);

}  // namespace varcert
