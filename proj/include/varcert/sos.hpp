#pragma once

#include <optional>
#include <string>
#include <vector>

#include "varcert/arcsearch.hpp"
#include "varcert/ideal.hpp"
#include "varcert/qlinalg.hpp"
#include "varcert/sdp.hpp"

namespace varcert {

/// Exact witness that f is a rational-weight sum of squares modulo the ideal:
/// f = sum_i lambda_i g_i^2 mod I with lambda_i >= 0 rational, deg g_i <= k.
/// Rational weights stand in for real squares since sqrt(lambda) need not be
/// rational; over the reals the certified class is the same.
struct SosCertificate {
    int k = 0;
    std::vector<Monomial> basis;  // standard monomials of degree <= k
    QMatrix gram;                 // exact rational PSD Gram matrix
    QMatrix L;                    // unit lower triangular
    QVector D;                    // nonnegative diagonal, gram = L D L^T
    std::vector<std::pair<Rational, Polynomial>> summands;  // (lambda_i, g_i)
};

struct SosVerdict {
    enum class Kind { ExactCertificate, NumericallyInfeasible, Undetermined };
    Kind kind = Kind::Undetermined;
    std::optional<SosCertificate> certificate;
    double dual_margin = 0;
    double dual_violation = 0;
    bool affine_inconsistent = false;  // the exact Gram constraints have no solution
    long iterations = 0;
    std::string diagnostics;
};

struct GramProblem {
    std::vector<Monomial> basis;
    SdpFeasibilityProblem sdp;
    std::vector<QMatrix> exact_A;  // rational mirrors of the sdp constraints
    QVector exact_b;
    std::vector<Monomial> constrained_monomials;
};

struct SosOptions {
    SdpOptions sdp;
    ExecMode mode = ExecMode::Parallel;
};

/// Gram formulation of "f is k-sos mod I" over the standard-monomial basis:
/// one linear constraint per standard monomial appearing in the normal forms.
GramProblem gram_problem(const Polynomial& f, const GroebnerContext& ctx, int k,
                         ExecMode mode = ExecMode::Parallel);

/// Solve the Gram SDP, round to rationals (simplest-in-interval with a
/// denominator cap, 1e6 then two retries x1e3), project exactly back onto the
/// constraints and take a rational LDL^T. Only exactly verified certificates
/// are ever returned.
SosVerdict check_k_sos(const Polynomial& f, const GroebnerContext& ctx, int k,
                       const SosOptions& opt = {});

bool verify_sos(const SosCertificate& cert, const Polynomial& f, const GroebnerContext& ctx,
                std::string* reason = nullptr);

/// lambda_i -> c * lambda_i; valid for rational c > 0.
SosCertificate scale_certificate(const SosCertificate& cert, const Rational& c);

struct ScanRow {
    Polynomial candidate;
    bool nonneg_on_samples = false;
    Rational min_on_samples;
    SosVerdict sos;
    std::vector<SearchVerdict> arcs;  // one per test point
    bool has_negative_arc = false;
    bool obstruction_witness = false;       // nonneg on samples yet refuted
    bool weak_violation_candidate = false;  // no arc found and not k-sos
};

struct ScanReport {
    int d = 0, k = 0;
    std::vector<ScanRow> rows;
};

/// Candidate-level evidence for / against the ideal being (d,k)-sos.
ScanReport dk_sos_scan(const GroebnerContext& ctx, int d, int k,
                       std::vector<Polynomial> candidates, const SampleCloud& cloud,
                       const std::vector<std::vector<Rational>>& test_points, int max_order,
                       const SearchBudget& budget = SearchBudget::defaults(),
                       const SosOptions& opt = {});

/// Same pipeline, but a row only counts against weak (d,k)-sos-ness when no
/// negative arc was found within bounds and the candidate is still not k-sos.
ScanReport weakly_sos_scan(const GroebnerContext& ctx, int d, int k,
                           std::vector<Polynomial> candidates, const SampleCloud& cloud,
                           const std::vector<std::vector<Rational>>& test_points, int max_order,
                           const SearchBudget& budget = SearchBudget::defaults(),
                           const SosOptions& opt = {});

/// Supporting-hyperplane candidates from the sampled hull, for scans with no
/// explicit candidate list.
std::vector<Polynomial> supporting_candidates(const GroebnerContext& ctx,
                                              const SampleCloud& cloud);

}  // namespace varcert
