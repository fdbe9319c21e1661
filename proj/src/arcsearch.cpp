#include "varcert/arcsearch.hpp"

#include <algorithm>

#include "varcert/roots.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace varcert {

SearchBudget SearchBudget::defaults() {
    SearchBudget b;
    b.grid = {Rational(0), Rational(1), Rational(-1), rat(1, 2), rat(-1, 2), Rational(2),
              Rational(-2)};
    return b;
}

namespace {

QVector integer_normalized(QVector v) {
    mpz_class den_lcm = 1;
    for (const auto& q : v) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), den_lcm.get_mpz_t(), q.get_den().get_mpz_t());
        den_lcm = den_lcm / g * q.get_den();
    }
    for (auto& q : v) q *= Rational(den_lcm);
    mpz_class content = 0;
    for (const auto& q : v) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), content.get_mpz_t(), q.get_num().get_mpz_t());
        content = g;
    }
    if (content != 0)
        for (auto& q : v) q /= Rational(content);
    return v;
}

// Coefficients of the search, all around the origin after translation.
struct StageContext {
    size_t nvars = 0;
    std::vector<Polynomial> gens;      // translated, nonzero
    Polynomial f;                      // translated
    QMatrix jac;                       // linear parts of gens
    std::vector<QVector> kernel;       // of jac
    std::vector<QVector> cokernel;     // left null space of jac
    int max_gen_degree = 1;
};

StageContext make_stage_context(const GroebnerContext& ctx, const std::vector<Rational>& p,
                                const Polynomial& f) {
    StageContext sc;
    sc.nvars = ctx.nvars;
    for (const auto& g : ctx.generators) {
        if (g.is_zero()) continue;
        sc.gens.push_back(g.translated(p));
        sc.max_gen_degree = std::max(sc.max_gen_degree, *g.total_degree());
    }
    sc.f = f.translated(p);
    sc.jac = QMatrix(sc.gens.size(), sc.nvars);
    for (size_t k = 0; k < sc.gens.size(); ++k) {
        for (size_t v = 0; v < sc.nvars; ++v) {
            Monomial m(sc.nvars);
            m.exps[v] = 1;
            sc.jac.at(k, v) = sc.gens[k].coefficient(m);
        }
    }
    sc.kernel = kernel_basis(sc.jac);
    QMatrix jt(sc.nvars, sc.gens.size());
    for (size_t k = 0; k < sc.gens.size(); ++k)
        for (size_t v = 0; v < sc.nvars; ++v) jt.at(v, k) = sc.jac.at(k, v);
    sc.cokernel = kernel_basis(jt);
    return sc;
}

// coefficients[v][j-1] is the e^j coefficient of variable v's image
using Coeffs = std::vector<QVector>;

Jet image_jet(const Coeffs& c, size_t v, int order) {
    Jet j(order);
    for (size_t k = 0; k < c[v].size() && static_cast<int>(k) + 1 < order; ++k)
        j.c[k + 1] = c[v][k];
    return j;
}

// apply the partial arc to g at the given jet order, centered at the origin
Jet apply_partial(const StageContext& sc, const Coeffs& c, const Polynomial& g, int order) {
    std::vector<Jet> images;
    images.reserve(sc.nvars);
    for (size_t v = 0; v < sc.nvars; ++v) images.push_back(image_jet(c, v, order));
    std::vector<Rational> origin(sc.nvars, Rational(0));
    ArcHom arc(origin, std::move(images));
    return arc_apply(arc, g);
}

// residual of the stage-s equations with the new coefficient vector at zero
QVector stage_rhs(const StageContext& sc, const Coeffs& c, int s) {
    QVector q(sc.gens.size());
    for (size_t k = 0; k < sc.gens.size(); ++k) {
        Jet img = apply_partial(sc, c, sc.gens[k], s + 1);
        q[k] = img.c[s];
    }
    return q;
}

struct Branch {
    Coeffs c;  // chosen coefficients, one vector per variable
};

Coeffs extended(const Coeffs& base, const QVector& new_coeff) {
    Coeffs out = base;
    for (size_t v = 0; v < out.size(); ++v) out[v].push_back(new_coeff[v]);
    return out;
}

// Rational roots of the next-stage consistency conditions along a single
// kernel direction, found by exact interpolation of the residual polynomial.
std::vector<Rational> assist_roots(const StageContext& sc, const Coeffs& base,
                                   const QVector& particular, const QVector& dir, int s,
                                   const SearchBudget& budget) {
    if (sc.cokernel.empty()) return {};
    int deg = sc.max_gen_degree;
    std::vector<Rational> nodes;
    for (int i = 0; nodes.size() < static_cast<size_t>(deg) + 1; ++i) {
        nodes.push_back(Rational(i));
        if (nodes.size() < static_cast<size_t>(deg) + 1 && i > 0)
            nodes.push_back(Rational(-i));
    }
    std::vector<QVector> samples;  // residual of stage s+1 per node
    for (const auto& lam : nodes) {
        QVector coeff(particular.size());
        for (size_t v = 0; v < coeff.size(); ++v) coeff[v] = particular[v] + lam * dir[v];
        Coeffs c = extended(base, coeff);
        samples.push_back(stage_rhs(sc, c, s + 1));
    }
    std::vector<Rational> out;
    for (const auto& u : sc.cokernel) {
        // values of h(lambda) = u . q_{s+1}(lambda) at the nodes
        QVector vals(nodes.size());
        for (size_t i = 0; i < nodes.size(); ++i) vals[i] = dot(u, samples[i]);
        bool all_zero = true;
        for (const auto& v : vals)
            if (rat_sign(v) != 0) all_zero = false;
        if (all_zero) continue;
        // Lagrange interpolation
        UniPoly h(nodes.size(), Rational(0));
        for (size_t i = 0; i < nodes.size(); ++i) {
            if (rat_sign(vals[i]) == 0) continue;
            UniPoly li{Rational(1)};
            Rational denom(1);
            for (size_t j = 0; j < nodes.size(); ++j) {
                if (j == i) continue;
                UniPoly next(li.size() + 1, Rational(0));
                for (size_t d = 0; d < li.size(); ++d) {
                    next[d + 1] += li[d];
                    next[d] -= nodes[j] * li[d];
                }
                li = std::move(next);
                denom *= nodes[i] - nodes[j];
            }
            Rational w = vals[i] / denom;
            for (size_t d = 0; d < li.size(); ++d) h[d] += w * li[d];
        }
        for (const auto& r : rational_roots(h, budget.assist_denominator_cap)) out.push_back(r);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct BranchOutcome {
    std::vector<Branch> children;
    std::optional<Coeffs> negative;       // coefficients of a certificate arc
    std::optional<Coeffs> negative_flip;  // certificate after parameter negation
    long explored = 0;
};

// Extend one branch from stage s-1 to stage s, classifying each child by the
// leading coefficient of f on it.
BranchOutcome extend_branch(const StageContext& sc, const Branch& br, int s,
                            const SearchBudget& budget) {
    BranchOutcome out;
    QVector q = stage_rhs(sc, br.c, s);
    for (auto& v : q) v = -v;
    auto part = solve_particular(sc.jac, q);
    if (!part) return out;  // this branch admits no order-(s+1) arc

    size_t kdim = sc.kernel.size();
    std::vector<Rational> values = budget.grid;
    if (kdim == 1 && budget.univariate_assist) {
        for (const auto& r : assist_roots(sc, br.c, *part, sc.kernel[0], s, budget)) {
            if (std::find(values.begin(), values.end(), r) == values.end())
                values.push_back(r);
        }
    }
    std::vector<size_t> odo(kdim, 0);
    while (true) {
        QVector coeff = *part;
        for (size_t i = 0; i < kdim; ++i)
            for (size_t v = 0; v < coeff.size(); ++v)
                coeff[v] += values[odo[i]] * sc.kernel[i][v];
        Coeffs c = extended(br.c, coeff);
        ++out.explored;
        Jet jf = apply_partial(sc, c, sc.f, s + 1);
        auto lead = jf.leading();
        if (!lead) {
            out.children.push_back({std::move(c)});
        } else if (rat_sign(lead->second) < 0) {
            if (!out.negative) out.negative = std::move(c);
        } else if (lead->first % 2 == 1) {
            // odd positive leading term: the parameter sign flip makes it negative
            if (!out.negative && !out.negative_flip) out.negative_flip = std::move(c);
        }
        // even positive leading term: f stays nonnegative on every extension
        if (out.negative) break;
        if (kdim == 0) break;
        size_t i = 0;
        while (i < kdim && ++odo[i] == values.size()) odo[i++] = 0;
        if (i == kdim) break;
    }
    return out;
}

ArcHom arc_from_coeffs(const std::vector<Rational>& p, const Coeffs& c, int order) {
    std::vector<Jet> images;
    for (size_t v = 0; v < p.size(); ++v) {
        Jet j(order);
        j.c[0] = p[v];
        for (size_t k = 0; k < c[v].size() && static_cast<int>(k) + 1 < order; ++k)
            j.c[k + 1] = c[v][k];
        images.push_back(std::move(j));
    }
    return ArcHom(p, std::move(images));
}

std::optional<NegativeArcCertificate> certify(const GroebnerContext& ctx,
                                              const std::vector<Rational>& p,
                                              const Polynomial& f, const ArcHom& arc) {
    NegativeArcCertificate cert;
    cert.arc = arc;
    Jet jf = arc_apply(arc, f);
    auto lead = jf.leading();
    if (!lead || rat_sign(lead->second) >= 0) return std::nullopt;
    cert.leading_index = lead->first;
    cert.leading_coeff = lead->second;
    if (!verify_certificate(cert, ctx, p, f)) return std::nullopt;
    return cert;
}

}  // namespace

std::optional<QVector> first_order_obstruction(const GroebnerContext& ctx,
                                               const std::vector<Rational>& p,
                                               const Polynomial& f) {
    require_on_variety(ctx, p);
    if (f.nvars() != ctx.nvars)
        throw std::invalid_argument("first_order_obstruction: ring mismatch");
    if (rat_sign(f.eval(p)) != 0) return std::nullopt;
    TangentSpace t = tangent_space(ctx, p);
    QVector grad(ctx.nvars);
    for (size_t v = 0; v < ctx.nvars; ++v) grad[v] = f.derivative(v).eval(p);
    for (const auto& basis_vec : t.basis) {
        Rational d = dot(grad, basis_vec);
        if (rat_sign(d) == 0) continue;
        QVector v = basis_vec;
        if (rat_sign(d) > 0)
            for (auto& q : v) q = -q;
        return integer_normalized(std::move(v));
    }
    return std::nullopt;
}

SearchVerdict search_negative_arc(const GroebnerContext& ctx, const std::vector<Rational>& p,
                                  const Polynomial& f, int max_order, const SearchBudget& budget,
                                  ExecMode mode) {
    SearchVerdict verdict;
    verdict.max_order = max_order;
    if (ctx.is_unit_ideal()) {
        verdict.kind = SearchVerdict::Kind::EmptyVariety;
        verdict.note = "unit ideal: the real variety is empty";
        return verdict;
    }
    require_on_variety(ctx, p);
    if (max_order < 2) throw std::invalid_argument("search_negative_arc: max_order must be >= 2");
    if (f.nvars() != ctx.nvars) throw std::invalid_argument("search_negative_arc: ring mismatch");

    Rational fp = f.eval(p);
    if (rat_sign(fp) < 0) {
        // the evaluation itself is the certificate (constant arc)
        ArcHom arc = ArcHom::constant_arc(p, 1);
        auto cert = certify(ctx, p, f, arc);
        if (!cert) throw std::logic_error("internal: constant-arc certificate failed to verify");
        verdict.kind = SearchVerdict::Kind::NegativeArc;
        verdict.certificate = std::move(cert);
        verdict.note = "f(P) < 0";
        return verdict;
    }
    if (rat_sign(fp) > 0) {
        verdict.kind = SearchVerdict::Kind::NoArcUpToOrder;
        verdict.note =
            "f(P) > 0: every arc at P maps f to a jet with positive constant "
            "coefficient, so no order can produce a certificate";
        return verdict;
    }

    StageContext sc = make_stage_context(ctx, p, f);
    std::vector<Branch> pool{Branch{Coeffs(sc.nvars)}};
    for (int s = 1; s <= max_order - 1; ++s) {
        verdict.budget.orders_tried = s + 1;
        std::vector<BranchOutcome> outcomes(pool.size());
        long nbranches = static_cast<long>(pool.size());
        if (mode == ExecMode::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
            for (long i = 0; i < nbranches; ++i)
                outcomes[static_cast<size_t>(i)] = extend_branch(sc, pool[static_cast<size_t>(i)], s, budget);
        } else {
            for (long i = 0; i < nbranches; ++i)
                outcomes[static_cast<size_t>(i)] = extend_branch(sc, pool[static_cast<size_t>(i)], s, budget);
        }
        std::vector<Branch> next;
        for (auto& oc : outcomes) {
            verdict.budget.branches_explored += oc.explored;
            if (oc.negative || oc.negative_flip) {
                bool flip = !oc.negative;
                ArcHom arc = arc_from_coeffs(p, flip ? *oc.negative_flip : *oc.negative, s + 1);
                if (flip) arc = arc_negate_parameter(arc);
                if (auto cert = certify(ctx, p, f, arc)) {
                    verdict.kind = SearchVerdict::Kind::NegativeArc;
                    verdict.certificate = std::move(cert);
                    verdict.budget.branches_per_order.push_back(verdict.budget.branches_explored);
                    return verdict;
                }
            }
            for (auto& ch : oc.children) {
                if (static_cast<long>(next.size()) >= budget.max_branches_per_order) {
                    verdict.budget.exhausted = true;
                    break;
                }
                next.push_back(std::move(ch));
            }
        }
        verdict.budget.branches_per_order.push_back(static_cast<long>(next.size()));
        pool = std::move(next);
        if (pool.empty()) break;
    }
    verdict.kind = SearchVerdict::Kind::NoArcUpToOrder;
    verdict.note = verdict.budget.exhausted
                       ? "branch budget exhausted before the order bound"
                       : "no negative arc up to the order bound";
    return verdict;
}

bool verify_certificate(const NegativeArcCertificate& cert, const GroebnerContext& ctx,
                        const std::vector<Rational>& p, const Polynomial& f,
                        std::string* reason) {
    auto fail = [&](const char* why) {
        if (reason) *reason = why;
        return false;
    };
    if (cert.arc.nvars() != ctx.nvars || f.nvars() != ctx.nvars)
        return fail("ring mismatch");
    if (cert.arc.basepoint != p) return fail("basepoint differs from P");
    for (size_t v = 0; v < p.size(); ++v)
        if (cert.arc.images[v].c[0] != p[v]) return fail("image constant term differs from P");
    if (!point_on_variety(ctx, p)) return fail("P is not on the variety");
    if (!arc_is_valid(cert.arc, ctx)) return fail("arc does not kill the ideal");
    Jet jf = arc_apply(cert.arc, f);
    auto lead = jf.leading();
    if (!lead) return fail("f maps to zero under the arc");
    if (rat_sign(lead->second) >= 0) return fail("leading coefficient is not negative");
    if (lead->first != cert.leading_index || lead->second != cert.leading_coeff)
        return fail("stored leading term does not match");
    return true;
}

std::optional<ArcHom> hensel_lift(const GroebnerContext& ctx, const ArcHom& arc, int m2) {
    if (!arc_is_valid(arc, ctx))
        throw std::invalid_argument("hensel_lift: input arc is not valid at its order");
    if (m2 < arc.order) throw std::invalid_argument("hensel_lift: target order too small");
    if (m2 == arc.order) return arc;
    StageContext sc = make_stage_context(ctx, arc.basepoint, Polynomial::zero(ctx.nvars));
    Coeffs c(sc.nvars);
    for (size_t v = 0; v < sc.nvars; ++v)
        for (int j = 1; j < arc.order; ++j) c[v].push_back(arc.images[v].c[j]);
    for (int s = arc.order; s <= m2 - 1; ++s) {
        QVector q = stage_rhs(sc, c, s);
        for (auto& v : q) v = -v;
        auto part = solve_particular(sc.jac, q);
        if (!part) return std::nullopt;
        c = extended(c, *part);
    }
    ArcHom lifted = arc_from_coeffs(arc.basepoint, c, m2);
    if (!arc_is_valid(lifted, ctx)) return std::nullopt;
    return lifted;
}

std::vector<SearchVerdict> strong_nonneg_report(const GroebnerContext& ctx, const Polynomial& f,
                                                const std::vector<std::vector<Rational>>& points,
                                                int max_order, const SearchBudget& budget) {
    std::vector<SearchVerdict> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(search_negative_arc(ctx, p, f, max_order, budget));
    return out;
}

}  // namespace varcert
