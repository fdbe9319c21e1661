#pragma once

#include <optional>
#include <vector>

#include "varcert/qlinalg.hpp"

namespace varcert {

/// Exact rational LP in the form
///   maximize c.x  subject to  A x <= b,  E x = e,  x free.
/// Solved by a dense two-phase simplex with Bland's rule, so the result is
/// deterministic and cycling-free.
struct LinearProgram {
    QMatrix A;   // inequality rows
    QVector b;
    QMatrix E;   // equality rows
    QVector e;
    QVector c;   // objective; zero vector for pure feasibility
};

struct LpResult {
    enum class Status { Optimal, Infeasible, Unbounded };
    Status status;
    QVector x;
    Rational objective;
};

LpResult solve_lp(const LinearProgram& lp);

}  // namespace varcert
