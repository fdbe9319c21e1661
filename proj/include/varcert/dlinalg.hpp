#pragma once

#include <vector>

namespace varcert {

/// Dense symmetric matrix of doubles (full storage, symmetry maintained by
/// construction helpers).
struct SymMatrix {
    int n = 0;
    std::vector<double> a;

    SymMatrix() = default;
    explicit SymMatrix(int dim) : n(dim), a(static_cast<size_t>(dim) * dim, 0.0) {}

    double& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    double at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
    void set_sym(int i, int j, double v) {
        at(i, j) = v;
        at(j, i) = v;
    }
    void add_sym(int i, int j, double v) {
        at(i, j) += v;
        if (i != j) at(j, i) += v;
    }

    static SymMatrix identity(int dim);
    double frobenius() const;
};

double frob_inner(const SymMatrix& x, const SymMatrix& y);

struct EigenSym {
    std::vector<double> values;  // ascending
    SymMatrix vectors;           // column k pairs with values[k]
};

/// Cyclic Jacobi rotations; adequate and robust at desk-scale dimensions.
EigenSym jacobi_eigen(const SymMatrix& m);

SymMatrix psd_projection(const SymMatrix& m, double* min_eig = nullptr);

/// min ||Ax - b||_2 via normal equations with spectral pseudo-inversion,
/// dropping directions below a relative cutoff.
std::vector<double> least_squares(const std::vector<std::vector<double>>& a_cols_gram,
                                  const std::vector<double>& rhs);

}  // namespace varcert
