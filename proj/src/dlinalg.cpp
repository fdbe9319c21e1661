#include "varcert/dlinalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace varcert {

SymMatrix SymMatrix::identity(int dim) {
    SymMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
}

double SymMatrix::frobenius() const {
    double s = 0;
    for (double v : a) s += v * v;
    return std::sqrt(s);
}

double frob_inner(const SymMatrix& x, const SymMatrix& y) {
    if (x.n != y.n) throw std::invalid_argument("frob_inner: dimension mismatch");
    double s = 0;
    for (size_t i = 0; i < x.a.size(); ++i) s += x.a[i] * y.a[i];
    return s;
}

EigenSym jacobi_eigen(const SymMatrix& m) {
    int n = m.n;
    SymMatrix a = m;
    SymMatrix v = SymMatrix::identity(n);
    double scale = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(a.at(i, j)));
    if (scale == 0) scale = 1;

    const int max_sweeps = 64;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += a.at(p, q) * a.at(p, q);
        if (std::sqrt(off) <= 1e-14 * scale * n) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = a.at(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                double app = a.at(p, p), aqq = a.at(q, q);
                double theta = (aqq - app) / (2 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = a.at(k, p), akq = a.at(k, q);
                    a.at(k, p) = c * akp - s * akq;
                    a.at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = a.at(p, k), aqk = a.at(q, k);
                    a.at(p, k) = c * apk - s * aqk;
                    a.at(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    double vkp = v.at(k, p), vkq = v.at(k, q);
                    v.at(k, p) = c * vkp - s * vkq;
                    v.at(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    EigenSym e;
    e.values.resize(n);
    for (int i = 0; i < n; ++i) e.values[i] = a.at(i, i);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return e.values[x] < e.values[y]; });
    EigenSym out;
    out.values.resize(n);
    out.vectors = SymMatrix(n);
    for (int k = 0; k < n; ++k) {
        out.values[k] = e.values[order[k]];
        for (int i = 0; i < n; ++i) out.vectors.at(i, k) = v.at(i, order[k]);
    }
    return out;
}

SymMatrix psd_projection(const SymMatrix& m, double* min_eig) {
    EigenSym e = jacobi_eigen(m);
    if (min_eig) *min_eig = e.values.empty() ? 0.0 : e.values.front();
    SymMatrix out(m.n);
    for (int k = 0; k < m.n; ++k) {
        double lam = e.values[k];
        if (lam <= 0) continue;
        for (int i = 0; i < m.n; ++i) {
            double vik = e.vectors.at(i, k);
            if (vik == 0) continue;
            for (int j = 0; j <= i; ++j) {
                double add = lam * vik * e.vectors.at(j, k);
                out.at(i, j) += add;
                if (i != j) out.at(j, i) += add;
            }
        }
    }
    return out;
}

std::vector<double> least_squares(const std::vector<std::vector<double>>& gram,
                                  const std::vector<double>& rhs) {
    size_t k = gram.size();
    if (rhs.size() != k) throw std::invalid_argument("least_squares: size mismatch");
    SymMatrix g(static_cast<int>(k));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) g.at(static_cast<int>(i), static_cast<int>(j)) = gram[i][j];
    EigenSym e = jacobi_eigen(g);
    double lmax = 0;
    for (double v : e.values) lmax = std::max(lmax, std::abs(v));
    double cutoff = lmax * 1e-12;
    std::vector<double> x(k, 0.0);
    for (size_t m = 0; m < k; ++m) {
        double lam = e.values[m];
        if (std::abs(lam) <= cutoff) continue;
        double proj = 0;
        for (size_t i = 0; i < k; ++i) proj += e.vectors.at(static_cast<int>(i), static_cast<int>(m)) * rhs[i];
        proj /= lam;
        for (size_t i = 0; i < k; ++i) x[i] += proj * e.vectors.at(static_cast<int>(i), static_cast<int>(m));
    }
    return x;
}

}  // namespace varcert
