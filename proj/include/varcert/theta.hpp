#pragma once

#include <optional>
#include <string>
#include <vector>

#include "varcert/geometry.hpp"
#include "varcert/sos.hpp"

namespace varcert {

/// Moment-matrix relaxation of theta-body membership at level k, computed in
/// the quotient ring: entries are pseudo-moments of normal forms, so ideal
/// relations hold by construction. Pseudo-moment unknowns are pinned to
/// designated matrix entries through a canonical split of each standard
/// monomial of degree <= 2k into two factors of degree <= k.
struct MomentProblem {
    int k = 0;
    std::vector<Monomial> basis;     // standard monomials, degree <= k
    std::vector<Monomial> extended;  // standard monomials, degree <= 2k
    std::vector<std::pair<size_t, size_t>> entry_of;  // designated entry per extended monomial
    SdpFeasibilityProblem sdp;
    std::vector<QMatrix> exact_A;
    QVector exact_b;
};

MomentProblem moment_problem(const GroebnerContext& ctx, int k,
                             const std::vector<Rational>& p,
                             ExecMode mode = ExecMode::Parallel);

struct ThetaVerdict {
    enum class Kind { Inside, Outside, Undetermined };
    Kind kind = Kind::Undetermined;

    // Inside evidence: a pseudo-moment matrix. Exact for on-variety points
    // (Dirac moments), numeric and tolerance-qualified otherwise.
    bool dirac = false;
    QMatrix moment_exact;
    SymMatrix moment_float;
    double residual = 0;
    double min_eigenvalue = 0;

    // Outside evidence, always exact: a linear separator with f(P) < 0 and an
    // exact k-sos certificate modulo the ideal.
    std::optional<Polynomial> separator;
    std::optional<SosCertificate> separator_certificate;

    std::string diagnostics;
};

struct ThetaOptions {
    SosOptions sos;
};

/// Inside is tolerance-qualified; Outside is only ever returned after the
/// separating functional has been rounded and exactly validated.
ThetaVerdict theta_membership(const GroebnerContext& ctx, int k, const std::vector<Rational>& p,
                              const ThetaOptions& opt = {});

/// The validated separator, integer coefficients with content 1; nullopt
/// unless the membership test concluded Outside.
std::optional<Polynomial> separating_functional(const GroebnerContext& ctx, int k,
                                                const std::vector<Rational>& p,
                                                const ThetaOptions& opt = {});

struct ProbeRow {
    std::vector<Rational> point;
    int k = 0;
    ThetaVerdict verdict;
    double hull_margin = 0;   // separation from the sampled hull, lower bound
    bool gap_evidence = false;  // Inside the relaxation yet outside the hull
};

struct ProbeReport {
    int k_max = 0;
    std::vector<ProbeRow> rows;
    std::vector<std::string> monotonicity_violations;  // expected empty
};

/// Membership verdicts for every (test point, level) pair, with observed
/// hierarchy monotonicity checks and exactness-gap flags.
ProbeReport theta_hierarchy_probe(const GroebnerContext& ctx, int k_max,
                                  const SampleCloud& cloud,
                                  const std::vector<std::vector<Rational>>& test_points,
                                  const ThetaOptions& opt = {});

/// Lower bound on the distance from p to the convex hull of the cloud,
/// maximized over a fixed direction set. Zero for points inside.
double hull_separation_margin(const SampleCloud& cloud, const std::vector<Rational>& p);

}  // namespace varcert
