#include "varcert/theta.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace varcert {

namespace {

// split m into two standard factors of degree <= k; greedy over variables
std::pair<Monomial, Monomial> canonical_split(const Monomial& m, int k) {
    uint32_t half = (m.degree() + 1) / 2;
    Monomial m1(m.exps.size());
    uint32_t placed = 0;
    for (size_t v = 0; v < m.exps.size() && placed < half; ++v) {
        uint32_t take = std::min(m.exps[v], half - placed);
        m1.exps[v] = take;
        placed += take;
    }
    Monomial m2 = m.quotient(m1);
    (void)k;
    return {m1, m2};
}

}  // namespace

MomentProblem moment_problem(const GroebnerContext& ctx, int k, const std::vector<Rational>& p,
                             ExecMode mode) {
    if (k < 1) throw std::invalid_argument("moment_problem: k must be >= 1");
    if (p.size() != ctx.nvars) throw std::invalid_argument("moment_problem: dimension mismatch");
    MomentProblem mp;
    mp.k = k;
    mp.basis = standard_monomials(ctx, k);
    mp.extended = standard_monomials(ctx, 2 * k);
    size_t n = mp.basis.size();

    std::map<Monomial, size_t, decltype(&canonical_monomial_less)> basis_index(
        &canonical_monomial_less);
    for (size_t i = 0; i < n; ++i) basis_index.emplace(mp.basis[i], i);

    std::map<Monomial, std::pair<size_t, size_t>, decltype(&canonical_monomial_less)> entry(
        &canonical_monomial_less);
    for (const auto& m : mp.extended) {
        auto [m1, m2] = canonical_split(m, k);
        auto i1 = basis_index.find(m1);
        auto i2 = basis_index.find(m2);
        if (i1 == basis_index.end() || i2 == basis_index.end())
            throw std::logic_error("moment_problem: split left the staircase");
        size_t a = std::min(i1->second, i2->second), b = std::max(i1->second, i2->second);
        entry.emplace(m, std::make_pair(a, b));
        mp.entry_of.emplace_back(a, b);
    }

    // normal forms of basis products, reused across constraints
    std::vector<std::pair<size_t, size_t>> pairs;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j) pairs.emplace_back(i, j);
    std::vector<Polynomial> prods(pairs.size(), Polynomial(ctx.nvars));
    long total = static_cast<long>(pairs.size());
    auto work = [&](long idx) {
        auto [i, j] = pairs[static_cast<size_t>(idx)];
        prods[static_cast<size_t>(idx)] =
            normal_form(Polynomial::term(ctx.nvars, mp.basis[i] * mp.basis[j], Rational(1)), ctx);
    };
    if (mode == ExecMode::Parallel) {
#pragma omp parallel for schedule(dynamic, 8)
        for (long idx = 0; idx < total; ++idx) work(idx);
    } else {
        for (long idx = 0; idx < total; ++idx) work(idx);
    }

    mp.sdp.n = static_cast<int>(n);
    auto add_constraint = [&](QMatrix a, Rational b) {
        SymMatrix ad(static_cast<int>(n));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                ad.at(static_cast<int>(i), static_cast<int>(j)) = rat_to_double(a.at(i, j));
        mp.exact_A.push_back(std::move(a));
        mp.exact_b.push_back(b);
        mp.sdp.constraints.push_back({std::move(ad), std::move(b)});
    };
    auto add_entry = [&](QMatrix& a, size_t i, size_t j, const Rational& c) {
        if (i == j) {
            a.at(i, j) += c;
        } else {
            a.at(i, j) += c / 2;
            a.at(j, i) += c / 2;
        }
    };

    // normalization: the pseudo-moment of 1 is 1
    {
        Monomial one(ctx.nvars);
        auto e = entry.at(one);
        QMatrix a(n, n);
        add_entry(a, e.first, e.second, Rational(1));
        add_constraint(std::move(a), Rational(1));
    }
    // consistency: every matrix entry equals the pseudo-moment of its normal form
    for (size_t idx = 0; idx < pairs.size(); ++idx) {
        auto [i, j] = pairs[idx];
        const Polynomial& nf = prods[idx];
        bool trivial = nf.term_count() == 1 && rat_sign(nf.terms()[0].second - 1) == 0 &&
                       entry.at(nf.terms()[0].first) == std::make_pair(i, j);
        if (trivial) continue;
        QMatrix a(n, n);
        add_entry(a, i, j, Rational(1));
        Rational b(0);
        for (const auto& [m, c] : nf.terms()) {
            if (m.degree() == 0) {
                b += c;  // constants fold into the right-hand side
                continue;
            }
            auto e = entry.at(m);
            add_entry(a, e.first, e.second, -c);
        }
        add_constraint(std::move(a), b);
    }
    // point constraints: pseudo-moment of x_v equals P_v
    for (size_t v = 0; v < ctx.nvars; ++v) {
        Polynomial nf = normal_form(Polynomial::variable(ctx.nvars, v), ctx);
        QMatrix a(n, n);
        Rational b = p[v];
        for (const auto& [m, c] : nf.terms()) {
            if (m.degree() == 0) {
                b -= c;
                continue;
            }
            auto e = entry.at(m);
            add_entry(a, e.first, e.second, c);
        }
        add_constraint(std::move(a), b);
    }
    return mp;
}

namespace {

QMatrix dirac_moment_matrix(const GroebnerContext& ctx, const std::vector<Monomial>& basis,
                            const std::vector<Rational>& p) {
    size_t n = basis.size();
    QVector vals(n);
    for (size_t i = 0; i < n; ++i)
        vals[i] = Polynomial::term(ctx.nvars, basis[i], Rational(1)).eval(p);
    QMatrix m(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) m.at(i, j) = vals[i] * vals[j];
    return m;
}

std::optional<Polynomial> round_separator(const GroebnerContext& ctx,
                                          const std::vector<double>& y,
                                          const MomentProblem& mp,
                                          const std::vector<Rational>& p) {
    // the dual multipliers of the normalization and point constraints carry
    // the affine separator; consistency constraints contribute ideal members
    size_t m = mp.sdp.constraints.size();
    size_t nv = ctx.nvars;
    if (y.size() != m) return std::nullopt;
    double c0 = y[0];
    std::vector<double> cv(nv);
    for (size_t v = 0; v < nv; ++v) cv[v] = y[m - nv + v];
    // fold the constant parts of NF(x_v) back in
    for (size_t v = 0; v < nv; ++v) {
        Polynomial nf = normal_form(Polynomial::variable(ctx.nvars, v), ctx);
        double kconst = 0;
        for (const auto& [mon, c] : nf.terms())
            if (mon.degree() == 0) kconst += rat_to_double(c);
        c0 -= cv[v] * kconst;
    }
    for (double radius : {1e-8, 1e-6, 1e-4, 1e-2}) {
        bool ok = true;
        Polynomial f(ctx.nvars);
        auto r0 = round_rational(rat_from_double(c0), rat_from_double(radius),
                                 mpz_class(1000000));
        if (!r0) continue;
        f = Polynomial::constant(ctx.nvars, *r0);
        for (size_t v = 0; v < nv && ok; ++v) {
            auto rv = round_rational(rat_from_double(cv[v]), rat_from_double(radius),
                                     mpz_class(1000000));
            if (!rv) {
                ok = false;
                break;
            }
            f = f + Polynomial::variable(ctx.nvars, v).scaled(*rv);
        }
        if (!ok || f.is_zero()) continue;
        f = f.integer_normalized();
        if (rat_sign(f.eval(p)) < 0) return f;
        f = -f;
        if (rat_sign(f.eval(p)) < 0) return f.integer_normalized();
    }
    return std::nullopt;
}

}  // namespace

ThetaVerdict theta_membership(const GroebnerContext& ctx, int k, const std::vector<Rational>& p,
                              const ThetaOptions& opt) {
    ThetaVerdict v;
    if (ctx.is_unit_ideal()) {
        v.kind = ThetaVerdict::Kind::Undetermined;
        v.diagnostics = "unit ideal: the variety is empty and every theta body is empty";
        return v;
    }
    if (point_on_variety(ctx, p)) {
        // Dirac moments: exact membership witness
        v.kind = ThetaVerdict::Kind::Inside;
        v.dirac = true;
        v.moment_exact = dirac_moment_matrix(ctx, standard_monomials(ctx, k), p);
        v.residual = 0;
        v.min_eigenvalue = 0;
        v.diagnostics = "point evaluation moments";
        return v;
    }
    MomentProblem mp = moment_problem(ctx, k, p, opt.sos.mode);
    SdpOutcome out = solve_feasibility(mp.sdp, opt.sos.sdp);
    if (out.kind == SdpOutcome::Kind::Feasible) {
        v.kind = ThetaVerdict::Kind::Inside;
        v.moment_float = out.X;
        v.residual = out.residual;
        v.min_eigenvalue = out.min_eigenvalue;
        return v;
    }
    if (out.kind == SdpOutcome::Kind::Infeasible && out.dual) {
        if (auto sep = round_separator(ctx, out.dual->y, mp, p)) {
            SosVerdict sv = check_k_sos(*sep, ctx, k, opt.sos);
            if (sv.kind == SosVerdict::Kind::ExactCertificate && rat_sign(sep->eval(p)) < 0) {
                v.kind = ThetaVerdict::Kind::Outside;
                v.separator = *sep;
                v.separator_certificate = std::move(sv.certificate);
                v.diagnostics = "separator validated exactly";
                return v;
            }
        }
        v.kind = ThetaVerdict::Kind::Undetermined;
        v.diagnostics = "moment relaxation numerically infeasible, but no separator validated";
        return v;
    }
    v.kind = ThetaVerdict::Kind::Undetermined;
    v.diagnostics = out.diagnostics.empty() ? "solver undetermined" : out.diagnostics;
    return v;
}

std::optional<Polynomial> separating_functional(const GroebnerContext& ctx, int k,
                                                const std::vector<Rational>& p,
                                                const ThetaOptions& opt) {
    ThetaVerdict v = theta_membership(ctx, k, p, opt);
    if (v.kind == ThetaVerdict::Kind::Outside) return v.separator;
    return std::nullopt;
}

double hull_separation_margin(const SampleCloud& cloud, const std::vector<Rational>& p) {
    if (cloud.points.empty()) return 0;
    size_t n = p.size();
    std::vector<double> pd(n);
    for (size_t v = 0; v < n; ++v) pd[v] = rat_to_double(p[v]);
    std::vector<std::vector<double>> dirs;
    for (size_t v = 0; v < n; ++v) {
        std::vector<double> e(n, 0.0);
        e[v] = 1;
        dirs.push_back(e);
        e[v] = -1;
        dirs.push_back(e);
    }
    for (size_t v = 0; v + 1 < n; ++v)
        for (size_t w = v + 1; w < n; ++w)
            for (int sv : {1, -1})
                for (int sw : {1, -1}) {
                    std::vector<double> e(n, 0.0);
                    double inv = 1.0 / std::sqrt(2.0);
                    e[v] = sv * inv;
                    e[w] = sw * inv;
                    dirs.push_back(e);
                }
    double best = 0;
    for (const auto& d : dirs) {
        double min_cloud = 0;
        bool first = true;
        for (const auto& q : cloud.points) {
            double val = 0;
            for (size_t v = 0; v < n; ++v) val += d[v] * q[v];
            if (first || val < min_cloud) {
                min_cloud = val;
                first = false;
            }
        }
        double dp = 0;
        for (size_t v = 0; v < n; ++v) dp += d[v] * pd[v];
        best = std::max(best, min_cloud - dp);
    }
    return best;
}

ProbeReport theta_hierarchy_probe(const GroebnerContext& ctx, int k_max,
                                  const SampleCloud& cloud,
                                  const std::vector<std::vector<Rational>>& test_points,
                                  const ThetaOptions& opt) {
    if (k_max < 1) throw std::invalid_argument("theta_hierarchy_probe: k_max must be >= 1");
    ProbeReport rep;
    rep.k_max = k_max;
    for (const auto& p : test_points) {
        double margin = hull_separation_margin(cloud, p);
        std::vector<ThetaVerdict::Kind> kinds;
        for (int k = 1; k <= k_max; ++k) {
            ProbeRow row;
            row.point = p;
            row.k = k;
            row.verdict = theta_membership(ctx, k, p, opt);
            row.hull_margin = margin;
            row.gap_evidence = row.verdict.kind == ThetaVerdict::Kind::Inside &&
                               margin > 10 * cloud.tol;
            kinds.push_back(row.verdict.kind);
            rep.rows.push_back(std::move(row));
        }
        for (int k = 1; k < k_max; ++k) {
            if (kinds[static_cast<size_t>(k)] == ThetaVerdict::Kind::Inside &&
                kinds[static_cast<size_t>(k - 1)] == ThetaVerdict::Kind::Outside) {
                rep.monotonicity_violations.push_back(
                    "Inside at level " + std::to_string(k + 1) + " but Outside at level " +
                    std::to_string(k));
            }
        }
    }
    return rep;
}

}  // namespace varcert
