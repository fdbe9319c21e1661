#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "varcert/polynomial.hpp"

namespace varcert {

struct ParseError : std::runtime_error {
    size_t position;
    ParseError(size_t pos, const std::string& msg)
        : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
};

/// Text syntax: rational coefficients ("3", "1/2", "0.25"), `^` powers,
/// `*` optional, parentheses. Variables must appear in `vars`.
Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& vars);

/// Comma- or whitespace-separated rationals, with optional surrounding parens:
/// "(0, 1/2)" or "0 1/2".
std::vector<Rational> parse_point(std::string_view text);

}  // namespace varcert
