#pragma once

#include <optional>
#include <string>
#include <vector>

#include "varcert/dlinalg.hpp"
#include "varcert/rational.hpp"

namespace varcert {

struct SdpConstraint {
    SymMatrix A;  // symmetric
    Rational b;   // <A, X> = b, Frobenius inner product
};

struct SdpFeasibilityProblem {
    int n = 0;
    std::vector<SdpConstraint> constraints;
};

struct SdpOptions {
    double tol = 1e-8;
    long max_iterations = 50000;
    long dual_iterations = 3000;
    double norm_cap = 1e8;
    double dual_psd_tol = 1e-6;     // allowed normalized eigenvalue violation
    double dual_margin_min = 1e-6;  // required normalized margin -sum(y b)
    bool use_hsd = false;           // homogeneous self-dual fallback
};

/// Approximate Farkas witness: sum(y_l A_l) is PSD up to dual_psd_tol after
/// normalization while sum(y_l b_l) = -margin < 0.
struct DualWitness {
    std::vector<double> y;  // normalized so ||sum y A||_F = 1
    double margin = 0;
    double psd_violation = 0;
};

struct SdpOutcome {
    enum class Kind { Feasible, Infeasible, Undetermined };
    Kind kind = Kind::Undetermined;
    SymMatrix X;                   // for Feasible (and last iterate otherwise)
    double min_eigenvalue = 0;     // of X
    double residual = 0;           // max_l |<A_l,X> - b_l|
    std::optional<DualWitness> dual;
    long iterations = 0;
    double last_gap = 0;  // final distance between affine and PSD iterates
    std::string diagnostics;
};

/// Alternating projections between the affine constraint subspace and the
/// PSD cone, with periodic dual-witness extraction for infeasible inputs.
/// Deterministic for fixed inputs and caps.
SdpOutcome solve_feasibility(const SdpFeasibilityProblem& p, const SdpOptions& opt = {});

double min_eigenvalue(const SymMatrix& m);

}  // namespace varcert
