#include "varcert/sos.hpp"

#include <algorithm>
#include <map>

namespace varcert {

namespace {

struct NfTable {
    std::vector<Monomial> basis;
    std::vector<Polynomial> products;  // upper triangle, row-major: (i,j), i <= j
    size_t index(size_t i, size_t j) const {  // i <= j
        size_t n = basis.size();
        return i * n - i * (i - 1) / 2 + (j - i);
    }
};

NfTable product_normal_forms(const GroebnerContext& ctx, const std::vector<Monomial>& basis,
                             ExecMode mode) {
    NfTable t;
    t.basis = basis;
    size_t n = basis.size();
    t.products.assign(n * (n + 1) / 2, Polynomial(ctx.nvars));
    std::vector<std::pair<size_t, size_t>> pairs;
    pairs.reserve(t.products.size());
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j) pairs.emplace_back(i, j);
    long total = static_cast<long>(pairs.size());
    auto work = [&](long idx) {
        auto [i, j] = pairs[static_cast<size_t>(idx)];
        Polynomial prod = Polynomial::term(ctx.nvars, basis[i] * basis[j], Rational(1));
        t.products[t.index(i, j)] = normal_form(prod, ctx);
    };
    if (mode == ExecMode::Parallel) {
#pragma omp parallel for schedule(dynamic, 8)
        for (long idx = 0; idx < total; ++idx) work(idx);
    } else {
        for (long idx = 0; idx < total; ++idx) work(idx);
    }
    return t;
}

}  // namespace

GramProblem gram_problem(const Polynomial& f, const GroebnerContext& ctx, int k, ExecMode mode) {
    if (k < 1) throw std::invalid_argument("gram_problem: k must be >= 1");
    if (f.nvars() != ctx.nvars) throw std::invalid_argument("gram_problem: ring mismatch");
    GramProblem gp;
    gp.basis = standard_monomials(ctx, k);
    size_t n = gp.basis.size();
    NfTable table = product_normal_forms(ctx, gp.basis, mode);
    Polynomial nf_f = normal_form(f, ctx);

    // collect every monomial that appears, in context order
    std::map<Monomial, size_t, decltype(&canonical_monomial_less)> mono_index(
        &canonical_monomial_less);
    auto note = [&](const Polynomial& p) {
        for (const auto& [m, c] : p.terms()) mono_index.emplace(m, 0);
    };
    for (const auto& p : table.products) note(p);
    note(nf_f);
    std::vector<Monomial> monos;
    for (auto& [m, idx] : mono_index) monos.push_back(m);
    std::sort(monos.begin(), monos.end(),
              [&](const Monomial& a, const Monomial& b) { return ctx.order.less(a, b); });
    for (size_t i = 0; i < monos.size(); ++i) mono_index[monos[i]] = i;
    gp.constrained_monomials = monos;

    gp.sdp.n = static_cast<int>(n);
    for (const auto& m : monos) {
        QMatrix a(n, n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i; j < n; ++j) {
                Rational c = table.products[table.index(i, j)].coefficient(m);
                a.at(i, j) = c;
                a.at(j, i) = c;
            }
        Rational b = nf_f.coefficient(m);
        SymMatrix ad(static_cast<int>(n));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                ad.at(static_cast<int>(i), static_cast<int>(j)) = rat_to_double(a.at(i, j));
        gp.exact_A.push_back(std::move(a));
        gp.exact_b.push_back(b);
        gp.sdp.constraints.push_back({std::move(ad), b});
    }
    return gp;
}

namespace {

Rational frob_inner_q(const QMatrix& x, const QMatrix& y) {
    Rational s(0);
    for (size_t i = 0; i < x.a.size(); ++i) s += x.a[i] * y.a[i];
    return s;
}

std::optional<SosCertificate> extract_certificate(const GramProblem& gp,
                                                  const GroebnerContext& ctx,
                                                  const Polynomial& f, int k,
                                                  const SymMatrix& x_float, double radius_hint,
                                                  bool* affine_inconsistent) {
    size_t n = gp.basis.size();
    // Gram matrix of the exact constraints, needed to re-project after rounding
    size_t m = gp.exact_A.size();
    QMatrix gram_sys(m, m);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i; j < m; ++j) {
            Rational v = frob_inner_q(gp.exact_A[i], gp.exact_A[j]);
            gram_sys.at(i, j) = v;
            gram_sys.at(j, i) = v;
        }
    struct Attempt {
        double radius;
        long cap;
    };
    const Attempt attempts[] = {{radius_hint, 1000000},
                                {radius_hint / 1e3, 1000000000L},
                                {radius_hint / 1e6, 1000000000000L}};
    for (const auto& att : attempts) {
        QMatrix g(n, n);
        bool ok = true;
        for (size_t i = 0; i < n && ok; ++i)
            for (size_t j = i; j < n && ok; ++j) {
                double v = 0.5 * (x_float.at(static_cast<int>(i), static_cast<int>(j)) +
                                  x_float.at(static_cast<int>(j), static_cast<int>(i)));
                auto r = round_rational(rat_from_double(v), rat_from_double(att.radius),
                                        mpz_class(att.cap));
                if (!r) {
                    ok = false;
                    break;
                }
                g.at(i, j) = *r;
                g.at(j, i) = *r;
            }
        if (!ok) continue;
        // exact projection onto the affine constraint set
        QVector rhs(m);
        for (size_t l = 0; l < m; ++l) rhs[l] = gp.exact_b[l] - frob_inner_q(gp.exact_A[l], g);
        auto mu = solve_particular(gram_sys, rhs);
        if (!mu) {
            // the rational constraint system itself is unsolvable
            if (affine_inconsistent) *affine_inconsistent = true;
            return std::nullopt;
        }
        for (size_t l = 0; l < m; ++l) {
            if (rat_sign((*mu)[l]) == 0) continue;
            for (size_t idx = 0; idx < g.a.size(); ++idx)
                g.a[idx] += (*mu)[l] * gp.exact_A[l].a[idx];
        }
        auto ldl = ldlt_psd(g);
        if (!ldl) continue;
        SosCertificate cert;
        cert.k = k;
        cert.basis = gp.basis;
        cert.gram = g;
        cert.L = ldl->L;
        cert.D = ldl->D;
        for (size_t i = 0; i < n; ++i) {
            if (rat_sign(ldl->D[i]) == 0) continue;
            Polynomial gi(ctx.nvars);
            for (size_t j = 0; j < n; ++j) {
                if (rat_sign(ldl->L.at(j, i)) == 0) continue;
                gi = gi + Polynomial::term(ctx.nvars, gp.basis[j], ldl->L.at(j, i));
            }
            cert.summands.emplace_back(ldl->D[i], std::move(gi));
        }
        if (verify_sos(cert, f, ctx)) return cert;
    }
    return std::nullopt;
}

}  // namespace

SosVerdict check_k_sos(const Polynomial& f, const GroebnerContext& ctx, int k,
                       const SosOptions& opt) {
    SosVerdict v;
    GramProblem gp = gram_problem(f, ctx, k, opt.mode);
    SdpOutcome out = solve_feasibility(gp.sdp, opt.sdp);
    v.iterations = out.iterations;
    v.diagnostics = out.diagnostics;
    if (out.kind == SdpOutcome::Kind::Infeasible) {
        v.kind = SosVerdict::Kind::NumericallyInfeasible;
        if (out.dual) {
            v.dual_margin = out.dual->margin;
            v.dual_violation = out.dual->psd_violation;
        }
        return v;
    }
    // round and exactly re-verify; a near-feasible iterate is good enough a
    // starting point because the exactness gate rejects anything unsound
    double hint = std::max({1e-9, 2 * out.residual, 2 * out.last_gap});
    bool affine_inconsistent = false;
    auto cert =
        extract_certificate(gp, ctx, f, k, out.X, hint, &affine_inconsistent);
    if (cert) {
        v.kind = SosVerdict::Kind::ExactCertificate;
        v.certificate = std::move(cert);
        return v;
    }
    if (affine_inconsistent) {
        v.kind = SosVerdict::Kind::NumericallyInfeasible;
        v.affine_inconsistent = true;
        v.diagnostics = "the exact Gram constraint system has no solution";
        v.dual_margin = 1.0;  // linear inconsistency, certified exactly
        return v;
    }
    v.kind = SosVerdict::Kind::Undetermined;
    if (v.diagnostics.empty()) v.diagnostics = "rounding did not produce an exact certificate";
    return v;
}

bool verify_sos(const SosCertificate& cert, const Polynomial& f, const GroebnerContext& ctx,
                std::string* reason) {
    auto fail = [&](const char* why) {
        if (reason) *reason = why;
        return false;
    };
    size_t n = cert.basis.size();
    if (cert.gram.rows != n || cert.gram.cols != n) return fail("gram dimension mismatch");
    if (cert.L.rows != n || cert.D.size() != n) return fail("factor dimension mismatch");
    for (const auto& d : cert.D)
        if (rat_sign(d) < 0) return fail("negative diagonal weight");
    // gram = L D L^T, exactly
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j <= i; ++j) {
            Rational s(0);
            for (size_t k2 = 0; k2 <= j; ++k2)
                s += cert.L.at(i, k2) * cert.D[k2] * cert.L.at(j, k2);
            if (s != cert.gram.at(i, j)) return fail("gram does not match its factorization");
        }
    Polynomial acc(ctx.nvars);
    for (const auto& [lam, g] : cert.summands) {
        if (rat_sign(lam) < 0) return fail("negative summand weight");
        auto deg = g.total_degree();
        if (deg && *deg > cert.k) return fail("summand degree exceeds k");
        acc = acc + (g * g).scaled(lam);
    }
    if (!normal_form(f - acc, ctx).is_zero())
        return fail("f - sum lambda g^2 is not in the ideal");
    return true;
}

SosCertificate scale_certificate(const SosCertificate& cert, const Rational& c) {
    if (rat_sign(c) <= 0) throw std::invalid_argument("scale_certificate: c must be > 0");
    SosCertificate out = cert;
    for (auto& d : out.D) d *= c;
    for (auto& [lam, g] : out.summands) lam *= c;
    for (auto& v : out.gram.a) v *= c;
    return out;
}

namespace {

ScanReport scan_impl(const GroebnerContext& ctx, int d, int k,
                     std::vector<Polynomial> candidates, const SampleCloud& cloud,
                     const std::vector<std::vector<Rational>>& test_points, int max_order,
                     const SearchBudget& budget, const SosOptions& opt, bool weakly) {
    ScanReport rep;
    rep.d = d;
    rep.k = k;
    if (candidates.empty()) candidates = supporting_candidates(ctx, cloud);
    for (auto& cand : candidates) {
        auto deg = cand.total_degree();
        if (deg && *deg > d)
            throw std::invalid_argument("scan: candidate degree exceeds d");
        ScanRow row;
        row.candidate = cand;
        CloudCheck cc = nonneg_on_cloud(cand, cloud, rat_from_double(cloud.tol));
        row.nonneg_on_samples = cc.nonneg;
        row.min_on_samples = cc.min_value;
        row.sos = check_k_sos(cand, ctx, k, opt);
        for (const auto& p : test_points) {
            if (!point_on_variety(ctx, p)) continue;
            row.arcs.push_back(search_negative_arc(ctx, p, cand, max_order, budget));
            if (row.arcs.back().kind == SearchVerdict::Kind::NegativeArc)
                row.has_negative_arc = true;
        }
        bool not_sos_evidence =
            row.has_negative_arc || row.sos.kind == SosVerdict::Kind::NumericallyInfeasible;
        row.obstruction_witness = row.nonneg_on_samples && not_sos_evidence;
        row.weak_violation_candidate =
            weakly && !row.has_negative_arc &&
            row.sos.kind != SosVerdict::Kind::ExactCertificate;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

}  // namespace

ScanReport dk_sos_scan(const GroebnerContext& ctx, int d, int k,
                       std::vector<Polynomial> candidates, const SampleCloud& cloud,
                       const std::vector<std::vector<Rational>>& test_points, int max_order,
                       const SearchBudget& budget, const SosOptions& opt) {
    return scan_impl(ctx, d, k, std::move(candidates), cloud, test_points, max_order, budget,
                     opt, false);
}

ScanReport weakly_sos_scan(const GroebnerContext& ctx, int d, int k,
                           std::vector<Polynomial> candidates, const SampleCloud& cloud,
                           const std::vector<std::vector<Rational>>& test_points, int max_order,
                           const SearchBudget& budget, const SosOptions& opt) {
    return scan_impl(ctx, d, k, std::move(candidates), cloud, test_points, max_order, budget,
                     opt, true);
}

std::vector<Polynomial> supporting_candidates(const GroebnerContext& ctx,
                                              const SampleCloud& cloud) {
    std::vector<Polynomial> out;
    if (cloud.points.empty()) return out;
    size_t n = ctx.nvars;
    std::vector<QVector> directions;
    for (size_t v = 0; v < n; ++v) {
        QVector e(n, Rational(0));
        e[v] = 1;
        directions.push_back(e);
        e[v] = -1;
        directions.push_back(e);
    }
    for (size_t v = 0; v + 1 < n; ++v)
        for (size_t w = v + 1; w < n; ++w)
            for (int sv : {1, -1})
                for (int sw : {1, -1}) {
                    QVector e(n, Rational(0));
                    e[v] = sv;
                    e[w] = sw;
                    directions.push_back(e);
                }
    Rational snap = rat_from_double(std::max(cloud.tol * 10, 1e-6));
    for (const auto& dir : directions) {
        Rational best;
        bool first = true;
        for (const auto& pt : cloud.points) {
            Rational val(0);
            for (size_t v = 0; v < n; ++v) val += dir[v] * rat_from_double(pt[v]);
            if (first || val < best) {
                best = val;
                first = false;
            }
        }
        Rational offset = simplest_in_interval(best - snap, best);
        Polynomial f = Polynomial::constant(n, -offset);
        for (size_t v = 0; v < n; ++v) f = f + Polynomial::variable(n, v).scaled(dir[v]);
        out.push_back(f.integer_normalized());
    }
    return out;
}

}  // namespace varcert
