#include "varcert/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace varcert {

double min_eigenvalue(const SymMatrix& m) {
    if (m.n == 0) return 0;
    return jacobi_eigen(m).values.front();
}

namespace {

struct AffineProjector {
    const SdpFeasibilityProblem* p;
    std::vector<double> b;
    EigenSym gram_eig;  // of the constraint Gram matrix, for pseudo-inversion

    explicit AffineProjector(const SdpFeasibilityProblem& prob) : p(&prob) {
        size_t m = prob.constraints.size();
        b.resize(m);
        for (size_t i = 0; i < m; ++i) b[i] = rat_to_double(prob.constraints[i].b);
        SymMatrix g(static_cast<int>(m));
        for (size_t i = 0; i < m; ++i)
            for (size_t j = i; j < m; ++j)
                g.set_sym(static_cast<int>(i), static_cast<int>(j),
                          frob_inner(prob.constraints[i].A, prob.constraints[j].A));
        gram_eig = jacobi_eigen(g);
    }

    std::vector<double> pseudo_solve(const std::vector<double>& rhs) const {
        size_t m = rhs.size();
        double lmax = 0;
        for (double v : gram_eig.values) lmax = std::max(lmax, std::abs(v));
        double cutoff = lmax * 1e-12;
        std::vector<double> x(m, 0.0);
        for (size_t k = 0; k < m; ++k) {
            double lam = gram_eig.values[k];
            if (std::abs(lam) <= cutoff) continue;
            double proj = 0;
            for (size_t i = 0; i < m; ++i)
                proj += gram_eig.vectors.at(static_cast<int>(i), static_cast<int>(k)) * rhs[i];
            proj /= lam;
            for (size_t i = 0; i < m; ++i)
                x[i] += proj * gram_eig.vectors.at(static_cast<int>(i), static_cast<int>(k));
        }
        return x;
    }

    SymMatrix project(const SymMatrix& x) const {
        size_t m = p->constraints.size();
        std::vector<double> r(m);
        for (size_t l = 0; l < m; ++l) r[l] = b[l] - frob_inner(p->constraints[l].A, x);
        std::vector<double> mu = pseudo_solve(r);
        SymMatrix out = x;
        for (size_t l = 0; l < m; ++l) {
            if (mu[l] == 0) continue;
            for (size_t idx = 0; idx < out.a.size(); ++idx)
                out.a[idx] += mu[l] * p->constraints[l].A.a[idx];
        }
        return out;
    }

    double residual(const SymMatrix& x) const {
        double r = 0;
        for (size_t l = 0; l < p->constraints.size(); ++l)
            r = std::max(r, std::abs(frob_inner(p->constraints[l].A, x) - b[l]));
        return r;
    }
};

// Equality-constrained least squares over multipliers y:
//   minimize || sum_l y_l A_l - Z ||_F  subject to  sum_l y_l b_l = -1
struct DualSolver {
    const SdpFeasibilityProblem* p;
    std::vector<double> b;
    EigenSym kkt_eig;

    DualSolver(const SdpFeasibilityProblem& prob, const AffineProjector& ap) : p(&prob), b(ap.b) {
        size_t m = prob.constraints.size();
        SymMatrix kkt(static_cast<int>(m) + 1);
        for (size_t i = 0; i < m; ++i)
            for (size_t j = i; j < m; ++j)
                kkt.set_sym(static_cast<int>(i), static_cast<int>(j),
                            frob_inner(prob.constraints[i].A, prob.constraints[j].A));
        for (size_t i = 0; i < m; ++i)
            kkt.set_sym(static_cast<int>(i), static_cast<int>(m), b[i]);
        kkt_eig = jacobi_eigen(kkt);
    }

    std::vector<double> solve(const SymMatrix& z) const {
        size_t m = p->constraints.size();
        std::vector<double> rhs(m + 1);
        for (size_t l = 0; l < m; ++l) rhs[l] = frob_inner(p->constraints[l].A, z);
        rhs[m] = -1;
        // pseudo-solve the symmetric KKT system
        double lmax = 0;
        for (double v : kkt_eig.values) lmax = std::max(lmax, std::abs(v));
        double cutoff = lmax * 1e-12;
        std::vector<double> x(m + 1, 0.0);
        for (size_t k = 0; k <= m; ++k) {
            double lam = kkt_eig.values[k];
            if (std::abs(lam) <= cutoff) continue;
            double proj = 0;
            for (size_t i = 0; i <= m; ++i)
                proj += kkt_eig.vectors.at(static_cast<int>(i), static_cast<int>(k)) * rhs[i];
            proj /= lam;
            for (size_t i = 0; i <= m; ++i)
                x[i] += proj * kkt_eig.vectors.at(static_cast<int>(i), static_cast<int>(k));
        }
        x.resize(m);
        return x;
    }
};

SymMatrix combine(const SdpFeasibilityProblem& p, const std::vector<double>& y, double tau) {
    SymMatrix s(p.n);
    for (size_t l = 0; l < p.constraints.size(); ++l)
        for (size_t idx = 0; idx < s.a.size(); ++idx)
            s.a[idx] += y[l] * p.constraints[l].A.a[idx];
    for (int i = 0; i < p.n; ++i) s.at(i, i) += tau;
    return s;
}

std::optional<DualWitness> try_dual_witness(const SdpFeasibilityProblem& p,
                                            const DualSolver& ds, const SdpOptions& opt) {
    if (p.constraints.empty()) return std::nullopt;
    const double taus[] = {1e-3, 1e-4, 1e-5, 1e-6, 0.0};
    for (double tau : taus) {
        // start from the minimum-norm y with sum(y b) = -1
        double bb = 0;
        for (double v : ds.b) bb += v * v;
        if (bb == 0) return std::nullopt;
        std::vector<double> y(ds.b.size());
        for (size_t i = 0; i < y.size(); ++i) y[i] = -ds.b[i] / bb;
        bool converged = false;
        for (long it = 0; it < opt.dual_iterations; ++it) {
            SymMatrix s = combine(p, y, tau);
            SymMatrix z = psd_projection(s);
            double gap = 0;
            for (size_t i = 0; i < s.a.size(); ++i) {
                double d = s.a[i] - z.a[i];
                gap += d * d;
            }
            gap = std::sqrt(gap);
            double scale = std::max(1.0, s.frobenius());
            if (gap <= 1e-11 * scale) {
                converged = true;
                break;
            }
            // pull the shift back out before refitting y
            for (int i = 0; i < p.n; ++i) z.at(i, i) -= tau;
            y = ds.solve(z);
        }
        if (!converged) continue;
        SymMatrix s_raw = combine(p, y, 0.0);
        double nrm = s_raw.frobenius();
        if (nrm <= 0) continue;
        double sum_yb = 0;
        for (size_t l = 0; l < y.size(); ++l) sum_yb += y[l] * ds.b[l];
        double margin = -sum_yb / nrm;
        double viol = std::max(0.0, -min_eigenvalue(s_raw)) / nrm;
        if (margin >= opt.dual_margin_min && viol <= opt.dual_psd_tol &&
            (viol == 0 || margin / viol >= 100.0)) {
            DualWitness w;
            w.y.resize(y.size());
            for (size_t l = 0; l < y.size(); ++l) w.y[l] = y[l] / nrm;
            w.margin = margin;
            w.psd_violation = viol;
            return w;
        }
    }
    return std::nullopt;
}

// Homogeneous embedding: find (X, kappa) with <A_l,X> = b_l*kappa, X PSD,
// kappa >= 0, tr(X) + kappa = 1. kappa bounded away from zero recovers a
// feasible point; kappa ~ 0 with X != 0 is infeasibility evidence.
SdpOutcome solve_hsd(const SdpFeasibilityProblem& p, const SdpOptions& opt) {
    int n = p.n;
    SdpFeasibilityProblem h;
    h.n = n + 1;
    for (const auto& c : p.constraints) {
        SymMatrix a(n + 1);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a.at(i, j) = c.A.at(i, j);
        a.at(n, n) = -rat_to_double(c.b);
        h.constraints.push_back({a, Rational(0)});
    }
    SymMatrix tr(n + 1);
    for (int i = 0; i <= n; ++i) tr.at(i, i) = 1;
    h.constraints.push_back({tr, Rational(1)});
    // pin the off-block row/column to zero
    for (int i = 0; i < n; ++i) {
        SymMatrix e(n + 1);
        e.set_sym(i, n, 0.5);
        h.constraints.push_back({e, Rational(0)});
    }
    SdpOptions inner = opt;
    inner.use_hsd = false;
    SdpOutcome ho = solve_feasibility(h, inner);
    SdpOutcome out;
    out.iterations = ho.iterations;
    if (ho.kind != SdpOutcome::Kind::Feasible) {
        out.kind = SdpOutcome::Kind::Undetermined;
        out.diagnostics = "hsd: embedding " + ho.diagnostics;
        return out;
    }
    double kappa = ho.X.at(n, n);
    if (kappa > 1e-6) {
        SymMatrix x(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) x.at(i, j) = ho.X.at(i, j) / kappa;
        out.X = x;
        out.min_eigenvalue = min_eigenvalue(x);
        AffineProjector ap(p);
        out.residual = ap.residual(x);
        if (out.residual <= opt.tol * std::max(1.0, 1.0 / kappa) &&
            out.min_eigenvalue >= -opt.tol) {
            out.kind = SdpOutcome::Kind::Feasible;
            return out;
        }
    }
    out.kind = SdpOutcome::Kind::Undetermined;
    out.diagnostics = "hsd: kappa=" + std::to_string(kappa);
    return out;
}

}  // namespace

SdpOutcome solve_feasibility(const SdpFeasibilityProblem& p, const SdpOptions& opt) {
    for (const auto& c : p.constraints)
        if (c.A.n != p.n) throw std::invalid_argument("sdp: constraint dimension mismatch");
    SdpOutcome out;
    if (p.n == 0) {
        out.kind = SdpOutcome::Kind::Feasible;
        return out;
    }
    AffineProjector ap(p);
    DualSolver ds(p, ap);

    SymMatrix x = ap.project(SymMatrix(p.n));
    double gap = 0;
    const long dual_check_every = 500;
    for (long it = 1; it <= opt.max_iterations; ++it) {
        out.iterations = it;
        double min_eig_x = 0;
        SymMatrix y = psd_projection(x, &min_eig_x);
        if (min_eig_x >= -opt.tol && ap.residual(x) <= opt.tol) {
            out.kind = SdpOutcome::Kind::Feasible;
            out.X = x;
            out.min_eigenvalue = min_eig_x;
            out.residual = ap.residual(x);
            return out;
        }
        double resid_y = ap.residual(y);
        if (resid_y <= opt.tol) {
            out.kind = SdpOutcome::Kind::Feasible;
            out.X = y;
            out.min_eigenvalue = std::max(0.0, min_eigenvalue(y));
            out.residual = resid_y;
            return out;
        }
        SymMatrix x_next = ap.project(y);
        gap = 0;
        for (size_t i = 0; i < x_next.a.size(); ++i) {
            double d = x_next.a[i] - y.a[i];
            gap += d * d;
        }
        gap = std::sqrt(gap);
        x = std::move(x_next);
        if (it % dual_check_every == 0 && gap > 10 * opt.tol) {
            if (auto w = try_dual_witness(p, ds, opt)) {
                out.kind = SdpOutcome::Kind::Infeasible;
                out.dual = *w;
                out.X = x;
                out.last_gap = gap;
                out.diagnostics = "dual witness at iteration " + std::to_string(it);
                return out;
            }
        }
        if (x.frobenius() > opt.norm_cap) {
            out.diagnostics = "iterates exceeded the norm cap";
            break;
        }
    }
    if (auto w = try_dual_witness(p, ds, opt)) {
        out.kind = SdpOutcome::Kind::Infeasible;
        out.dual = *w;
        out.X = x;
        out.last_gap = gap;
        return out;
    }
    if (opt.use_hsd) {
        SdpOutcome h = solve_hsd(p, opt);
        if (h.kind != SdpOutcome::Kind::Undetermined) return h;
    }
    out.kind = SdpOutcome::Kind::Undetermined;
    out.X = x;
    out.last_gap = gap;
    out.min_eigenvalue = min_eigenvalue(x);
    out.residual = ap.residual(x);
    if (out.diagnostics.empty())
        out.diagnostics = "no decision within the iteration budget; gap=" + std::to_string(gap);
    return out;
}

}  // namespace varcert
