#pragma once

#include <optional>
#include <string>
#include <vector>

#include "varcert/geometry.hpp"
#include "varcert/jet.hpp"

namespace varcert {

struct SearchBudget {
    long max_branches_per_order = 20000;
    std::vector<Rational> grid;  // kernel coordinates tried per branching step
    bool univariate_assist = true;
    long assist_denominator_cap = 1000000;

    static SearchBudget defaults();
};

struct BudgetReport {
    int orders_tried = 0;
    long branches_explored = 0;
    std::vector<long> branches_per_order;
    bool exhausted = false;
};

/// A verified witness that f is not strongly nonnegative at the basepoint:
/// a valid arc under which f maps to a jet with negative leading coefficient.
struct NegativeArcCertificate {
    ArcHom arc;
    int leading_index = 0;
    Rational leading_coeff;
};

struct SearchVerdict {
    enum class Kind { NegativeArc, NoArcUpToOrder, EmptyVariety };
    Kind kind = Kind::NoArcUpToOrder;
    std::optional<NegativeArcCertificate> certificate;
    int max_order = 0;
    BudgetReport budget;
    std::string note;  // never claims strong nonnegativity, only search exhaustion
};

/// Tangent vector v with df_P(v) < 0 when f vanishes at P and its
/// differential is nonzero on the tangent space; small integer entries.
/// The returned v induces the valid order-2 arc x -> P + v e.
std::optional<QVector> first_order_obstruction(const GroebnerContext& ctx,
                                               const std::vector<Rational>& p,
                                               const Polynomial& f);

/// Order-by-order bounded search for a negative-arc certificate. Certificates
/// are re-verified exactly before being returned; exhaustion is reported in
/// the verdict, never as silent success.
SearchVerdict search_negative_arc(const GroebnerContext& ctx, const std::vector<Rational>& p,
                                  const Polynomial& f, int max_order,
                                  const SearchBudget& budget = SearchBudget::defaults(),
                                  ExecMode mode = ExecMode::Parallel);

bool verify_certificate(const NegativeArcCertificate& cert, const GroebnerContext& ctx,
                        const std::vector<Rational>& p, const Polynomial& f,
                        std::string* reason = nullptr);

/// Extends a valid order-m arc to a valid order-m2 arc by solving the
/// successive linear systems, free coordinates pinned to zero. Reliable at
/// nonsingular points; may return nullopt at singular ones.
std::optional<ArcHom> hensel_lift(const GroebnerContext& ctx, const ArcHom& arc, int m2);

std::vector<SearchVerdict> strong_nonneg_report(const GroebnerContext& ctx, const Polynomial& f,
                                                const std::vector<std::vector<Rational>>& points,
                                                int max_order,
                                                const SearchBudget& budget = SearchBudget::defaults());

}  // namespace varcert
