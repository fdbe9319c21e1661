#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "varcert/ideal.hpp"
#include "varcert/qlinalg.hpp"

namespace varcert {

struct OffVarietyError : std::runtime_error {
    explicit OffVarietyError(const std::string& what) : std::runtime_error(what) {}
};

bool point_on_variety(const GroebnerContext& ctx, const std::vector<Rational>& p);
void require_on_variety(const GroebnerContext& ctx, const std::vector<Rational>& p);

/// Kernel of the generator Jacobian at P, exact.
struct TangentSpace {
    std::vector<Rational> basepoint;
    std::vector<QVector> basis;
    int dimension = 0;
};

/// Rows are generators, columns are variables; exact partial derivatives at P.
QMatrix jacobian_at(const GroebnerContext& ctx, const std::vector<Rational>& p);

TangentSpace tangent_space(const GroebnerContext& ctx, const std::vector<Rational>& p);

struct SingularityReport {
    bool singular = false;
    int tangent_dimension = 0;
    int krull_dimension = 0;
    /// The comparison uses the global Krull dimension of the quotient ring,
    /// not the local dimension at P; conservative on mixed-dimensional ideals.
    std::string caveat;
};

SingularityReport is_singular(const GroebnerContext& ctx, const std::vector<Rational>& p);

struct Box {
    std::vector<double> lo, hi;
};

struct SampleCloud {
    std::vector<std::vector<double>> points;
    Box box;
    double resolution = 0;
    double tol = 0;
};

enum class ExecMode { Serial, Parallel };

/// Grid scan of the box with damped Gauss-Newton refinement from each cell
/// center; keeps points with max |g| <= tol, deduplicated by half-resolution
/// spacing. Serial and parallel paths produce identical clouds.
SampleCloud sample_variety(const GroebnerContext& ctx, const Box& box, double resolution,
                           double tol, ExecMode mode = ExecMode::Parallel);

struct CloudCheck {
    bool nonneg = false;
    Rational min_value;          // exact evaluation at the rationalized worst point
    std::vector<double> argmin;  // worst point
};

CloudCheck nonneg_on_cloud(const Polynomial& f, const SampleCloud& cloud, const Rational& tol);

struct ConvexSingularWitness {
    Polynomial f;            // linear, f(P) = 0, f >= 0 on the cloud
    QVector tangent_vector;  // df . v < 0, exact
};

/// Supporting linear functional at a singular point whose differential is
/// nonzero on the tangent space, found by exact LP over the sample cloud.
std::optional<ConvexSingularWitness> convex_singular_witness(const GroebnerContext& ctx,
                                                             const std::vector<Rational>& p,
                                                             const SampleCloud& cloud);

}  // namespace varcert
