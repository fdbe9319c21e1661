#include "varcert/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "varcert/dlinalg.hpp"
#include "varcert/simplex.hpp"

namespace varcert {

bool point_on_variety(const GroebnerContext& ctx, const std::vector<Rational>& p) {
    if (p.size() != ctx.nvars) return false;
    for (const auto& g : ctx.generators)
        if (rat_sign(g.eval(p)) != 0) return false;
    return true;
}

void require_on_variety(const GroebnerContext& ctx, const std::vector<Rational>& p) {
    if (!point_on_variety(ctx, p))
        throw OffVarietyError("point is not on the variety (a generator is nonzero there)");
}

QMatrix jacobian_at(const GroebnerContext& ctx, const std::vector<Rational>& p) {
    require_on_variety(ctx, p);
    QMatrix j(ctx.generators.size(), ctx.nvars);
    for (size_t g = 0; g < ctx.generators.size(); ++g)
        for (size_t v = 0; v < ctx.nvars; ++v)
            j.at(g, v) = ctx.generators[g].derivative(v).eval(p);
    return j;
}

TangentSpace tangent_space(const GroebnerContext& ctx, const std::vector<Rational>& p) {
    TangentSpace t;
    t.basepoint = p;
    QMatrix j = jacobian_at(ctx, p);
    t.basis = kernel_basis(j);
    t.dimension = static_cast<int>(t.basis.size());
    return t;
}

SingularityReport is_singular(const GroebnerContext& ctx, const std::vector<Rational>& p) {
    SingularityReport r;
    TangentSpace t = tangent_space(ctx, p);
    r.tangent_dimension = t.dimension;
    r.krull_dimension = dimension(ctx);
    r.singular = r.tangent_dimension != r.krull_dimension;
    r.caveat =
        "nonsingularity compares the tangent dimension against the global Krull "
        "dimension; on non-equidimensional ideals this is conservative";
    return r;
}

namespace {

struct Refiner {
    const GroebnerContext* ctx;
    std::vector<Polynomial> gens;
    std::vector<std::vector<Polynomial>> grads;

    explicit Refiner(const GroebnerContext& c) : ctx(&c) {
        for (const auto& g : c.generators) {
            if (g.is_zero()) continue;
            gens.push_back(g);
            std::vector<Polynomial> row;
            for (size_t v = 0; v < c.nvars; ++v) row.push_back(g.derivative(v));
            grads.push_back(std::move(row));
        }
    }

    double max_abs_residual(const std::vector<double>& x) const {
        double m = 0;
        for (const auto& g : gens) m = std::max(m, std::abs(g.eval_double(x)));
        return m;
    }

    // damped Gauss-Newton least-squares step; returns false when stuck
    bool refine(std::vector<double>& x, double tol, int max_steps) const {
        size_t n = x.size(), m = gens.size();
        if (m == 0) return true;  // zero ideal: everything is on the variety
        for (int step = 0; step < max_steps; ++step) {
            double res = max_abs_residual(x);
            if (res <= tol) return true;
            std::vector<double> fx(m);
            std::vector<std::vector<double>> jac(m, std::vector<double>(n));
            for (size_t i = 0; i < m; ++i) {
                fx[i] = gens[i].eval_double(x);
                for (size_t v = 0; v < n; ++v) jac[i][v] = grads[i][v].eval_double(x);
            }
            // solve J^T J d = -J^T f with a spectral pseudo-inverse
            SymMatrix jtj(static_cast<int>(n));
            std::vector<double> jtf(n, 0.0);
            for (size_t a = 0; a < n; ++a) {
                for (size_t b = 0; b < n; ++b) {
                    double s = 0;
                    for (size_t i = 0; i < m; ++i) s += jac[i][a] * jac[i][b];
                    jtj.at(static_cast<int>(a), static_cast<int>(b)) = s;
                }
                for (size_t i = 0; i < m; ++i) jtf[a] += jac[i][a] * fx[i];
            }
            EigenSym eig = jacobi_eigen(jtj);
            double lmax = 0;
            for (double v : eig.values) lmax = std::max(lmax, std::abs(v));
            if (lmax == 0) return false;
            std::vector<double> d(n, 0.0);
            for (size_t k = 0; k < n; ++k) {
                double lam = eig.values[k];
                if (std::abs(lam) <= lmax * 1e-10) continue;
                double proj = 0;
                for (size_t a = 0; a < n; ++a)
                    proj += eig.vectors.at(static_cast<int>(a), static_cast<int>(k)) * jtf[a];
                proj /= lam;
                for (size_t a = 0; a < n; ++a)
                    d[a] -= proj * eig.vectors.at(static_cast<int>(a), static_cast<int>(k));
            }
            // backtracking on the residual norm
            double t = 1.0;
            bool moved = false;
            for (int bt = 0; bt < 30; ++bt) {
                std::vector<double> cand(n);
                for (size_t a = 0; a < n; ++a) cand[a] = x[a] + t * d[a];
                if (max_abs_residual(cand) < res) {
                    x = cand;
                    moved = true;
                    break;
                }
                t /= 2;
            }
            if (!moved) return max_abs_residual(x) <= tol;
        }
        return max_abs_residual(x) <= tol;
    }
};

std::vector<std::vector<double>> scan_cells(const Refiner& refiner, const Box& box,
                                            double resolution, double tol, bool parallel) {
    size_t n = box.lo.size();
    std::vector<long> steps(n);
    long total = 1;
    for (size_t v = 0; v < n; ++v) {
        steps[v] = std::max(1L, std::lround(std::floor((box.hi[v] - box.lo[v]) / resolution)));
        total *= steps[v];
    }
    std::vector<std::vector<double>> found(static_cast<size_t>(total));
    auto run_cell = [&](long idx) {
        std::vector<double> x(n);
        long rem = idx;
        for (size_t v = 0; v < n; ++v) {
            long cell = rem % steps[v];
            rem /= steps[v];
            x[v] = box.lo[v] + (static_cast<double>(cell) + 0.5) * resolution;
        }
        if (refiner.refine(x, tol, 60)) {
            bool inside = true;
            for (size_t v = 0; v < n; ++v)
                if (x[v] < box.lo[v] - resolution || x[v] > box.hi[v] + resolution) inside = false;
            if (inside) found[static_cast<size_t>(idx)] = std::move(x);
        }
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (long idx = 0; idx < total; ++idx) run_cell(idx);
    } else {
        for (long idx = 0; idx < total; ++idx) run_cell(idx);
    }
    // keep cell order so both execution modes agree
    std::vector<std::vector<double>> pts;
    for (auto& p : found)
        if (!p.empty()) pts.push_back(std::move(p));
    return pts;
}

}  // namespace

SampleCloud sample_variety(const GroebnerContext& ctx, const Box& box, double resolution,
                           double tol, ExecMode mode) {
    if (box.lo.size() != ctx.nvars || box.hi.size() != ctx.nvars)
        throw std::invalid_argument("sample_variety: box dimension mismatch");
    if (resolution <= 0) throw std::invalid_argument("sample_variety: resolution must be > 0");
    SampleCloud cloud;
    cloud.box = box;
    cloud.resolution = resolution;
    cloud.tol = tol;
    Refiner refiner(ctx);
    auto pts = scan_cells(refiner, box, resolution, tol, mode == ExecMode::Parallel);
    // dedupe by spacing, scanning in deterministic cell order
    double min_dist = resolution / 2;
    for (auto& p : pts) {
        bool dup = false;
        for (const auto& q : cloud.points) {
            double d2 = 0;
            for (size_t v = 0; v < p.size(); ++v) d2 += (p[v] - q[v]) * (p[v] - q[v]);
            if (d2 < min_dist * min_dist) {
                dup = true;
                break;
            }
        }
        if (!dup) cloud.points.push_back(std::move(p));
    }
    return cloud;
}

CloudCheck nonneg_on_cloud(const Polynomial& f, const SampleCloud& cloud, const Rational& tol) {
    CloudCheck c;
    c.nonneg = true;
    bool first = true;
    for (const auto& pt : cloud.points) {
        std::vector<Rational> q(pt.size());
        for (size_t v = 0; v < pt.size(); ++v) q[v] = rat_from_double(pt[v]);
        Rational val = f.eval(q);
        if (first || val < c.min_value) {
            c.min_value = val;
            c.argmin = pt;
            first = false;
        }
    }
    if (!first) c.nonneg = c.min_value >= -tol;
    return c;
}

std::optional<ConvexSingularWitness> convex_singular_witness(const GroebnerContext& ctx,
                                                             const std::vector<Rational>& p,
                                                             const SampleCloud& cloud) {
    SingularityReport sing = is_singular(ctx, p);
    if (!sing.singular)
        throw std::invalid_argument("convex_singular_witness requires a singular point");
    TangentSpace tsp = tangent_space(ctx, p);
    size_t n = ctx.nvars;
    // unknowns: c_0 (constant) and c_1..c_n; f = c_0 + sum c_i x_i
    // constraints: f(P) = 0; f(q) >= 0 on the cloud; df scaled so that one
    // tangent-basis pairing is exactly +-1 and the rest lie in [-1, 1]
    for (size_t which = 0; which < tsp.basis.size(); ++which) {
        for (int sign : {+1, -1}) {
            LinearProgram lp;
            size_t nu = n + 1;
            lp.c.assign(nu, Rational(0));
            size_t rows = cloud.points.size() + 2 * (tsp.basis.size() - 1);
            lp.A = QMatrix(rows, nu);
            lp.b.assign(rows, Rational(0));
            size_t r = 0;
            for (const auto& pt : cloud.points) {
                // -f(q) <= 0
                lp.A.at(r, 0) = -1;
                for (size_t v = 0; v < n; ++v) lp.A.at(r, v + 1) = -rat_from_double(pt[v]);
                lp.b[r] = 0;
                ++r;
            }
            for (size_t i = 0; i < tsp.basis.size(); ++i) {
                if (i == which) continue;
                for (int s2 : {+1, -1}) {
                    for (size_t v = 0; v < n; ++v)
                        lp.A.at(r, v + 1) = Rational(s2) * tsp.basis[i][v];
                    lp.b[r] = 1;
                    ++r;
                }
            }
            lp.E = QMatrix(2, nu);
            lp.e.assign(2, Rational(0));
            lp.E.at(0, 0) = 1;
            for (size_t v = 0; v < n; ++v) lp.E.at(0, v + 1) = p[v];  // f(P) = 0
            for (size_t v = 0; v < n; ++v) lp.E.at(1, v + 1) = tsp.basis[which][v];
            lp.e[1] = Rational(sign);  // df . v_which = +-1
            auto res = solve_lp(lp);
            if (res.status != LpResult::Status::Optimal) continue;
            Polynomial f = Polynomial::constant(n, res.x[0]);
            for (size_t v = 0; v < n; ++v)
                f = f + Polynomial::variable(n, v).scaled(res.x[v + 1]);
            if (f.is_zero()) continue;
            ConvexSingularWitness w;
            w.f = f;
            // tangent vector with df . v < 0
            w.tangent_vector = tsp.basis[which];
            for (auto& coord : w.tangent_vector) coord *= Rational(-sign);
            return w;
        }
    }
    return std::nullopt;
}

}  // namespace varcert
