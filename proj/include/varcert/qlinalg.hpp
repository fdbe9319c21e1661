#pragma once

#include <optional>
#include <vector>

#include "varcert/rational.hpp"

namespace varcert {

/// Dense rational matrix, row-major.
struct QMatrix {
    size_t rows = 0, cols = 0;
    std::vector<Rational> a;

    QMatrix() = default;
    QMatrix(size_t r, size_t c) : rows(r), cols(c), a(r * c, Rational(0)) {}

    Rational& at(size_t i, size_t j) { return a[i * cols + j]; }
    const Rational& at(size_t i, size_t j) const { return a[i * cols + j]; }
};

using QVector = std::vector<Rational>;

/// In-place reduced row echelon form; returns the pivot column per pivot row.
std::vector<size_t> rref(QMatrix& m);

/// One solution of A x = b with free variables set to zero; nullopt if
/// inconsistent.
std::optional<QVector> solve_particular(const QMatrix& A, const QVector& b);

/// Basis of the null space of A, in a deterministic order (one vector per
/// free column, ascending).
std::vector<QVector> kernel_basis(const QMatrix& A);

struct QLdlt {
    QMatrix L;    // unit lower triangular
    QVector D;    // diagonal, nonnegative iff input was PSD
};

/// LDL^T of a symmetric matrix. Succeeds iff the matrix is positive
/// semidefinite; this is an exact PSD decision procedure.
std::optional<QLdlt> ldlt_psd(const QMatrix& M);

Rational dot(const QVector& x, const QVector& y);
QVector mat_vec(const QMatrix& A, const QVector& x);

}  // namespace varcert
