#include "varcert/qlinalg.hpp"

#include <stdexcept>

namespace varcert {

std::vector<size_t> rref(QMatrix& m) {
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < m.cols && row < m.rows; ++col) {
        size_t sel = row;
        while (sel < m.rows && rat_sign(m.at(sel, col)) == 0) ++sel;
        if (sel == m.rows) continue;
        if (sel != row)
            for (size_t j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(row, j));
        Rational inv = 1 / m.at(row, col);
        for (size_t j = col; j < m.cols; ++j) m.at(row, j) *= inv;
        for (size_t i = 0; i < m.rows; ++i) {
            if (i == row || rat_sign(m.at(i, col)) == 0) continue;
            Rational f = m.at(i, col);
            for (size_t j = col; j < m.cols; ++j) m.at(i, j) -= f * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::optional<QVector> solve_particular(const QMatrix& A, const QVector& b) {
    if (b.size() != A.rows) throw std::invalid_argument("solve: size mismatch");
    QMatrix aug(A.rows, A.cols + 1);
    for (size_t i = 0; i < A.rows; ++i) {
        for (size_t j = 0; j < A.cols; ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, A.cols) = b[i];
    }
    auto pivots = rref(aug);
    for (size_t p = 0; p < pivots.size(); ++p) {
        if (pivots[p] == A.cols) return std::nullopt;  // pivot in the RHS column
    }
    QVector x(A.cols, Rational(0));
    for (size_t p = 0; p < pivots.size(); ++p) x[pivots[p]] = aug.at(p, A.cols);
    return x;
}

std::vector<QVector> kernel_basis(const QMatrix& A) {
    QMatrix m = A;
    auto pivots = rref(m);
    std::vector<bool> is_pivot(A.cols, false);
    for (size_t c : pivots) is_pivot[c] = true;
    std::vector<QVector> basis;
    for (size_t free_col = 0; free_col < A.cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        QVector v(A.cols, Rational(0));
        v[free_col] = 1;
        for (size_t p = 0; p < pivots.size(); ++p) v[pivots[p]] = -m.at(p, free_col);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<QLdlt> ldlt_psd(const QMatrix& M) {
    if (M.rows != M.cols) throw std::invalid_argument("ldlt: square matrix required");
    size_t n = M.rows;
    QMatrix work = M;
    QLdlt out;
    out.L = QMatrix(n, n);
    out.D.assign(n, Rational(0));
    for (size_t i = 0; i < n; ++i) out.L.at(i, i) = 1;
    for (size_t k = 0; k < n; ++k) {
        Rational d = work.at(k, k);
        if (rat_sign(d) < 0) return std::nullopt;
        if (rat_sign(d) == 0) {
            // PSD with zero diagonal forces a zero row
            for (size_t j = k + 1; j < n; ++j)
                if (rat_sign(work.at(k, j)) != 0) return std::nullopt;
            continue;
        }
        out.D[k] = d;
        for (size_t i = k + 1; i < n; ++i) {
            Rational l = work.at(i, k) / d;
            out.L.at(i, k) = l;
            for (size_t j = k + 1; j <= i; ++j) {
                work.at(i, j) -= l * work.at(k, j);
                work.at(j, i) = work.at(i, j);
            }
        }
    }
    return out;
}

Rational dot(const QVector& x, const QVector& y) {
    if (x.size() != y.size()) throw std::invalid_argument("dot: size mismatch");
    Rational s(0);
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

QVector mat_vec(const QMatrix& A, const QVector& x) {
    if (x.size() != A.cols) throw std::invalid_argument("mat_vec: size mismatch");
    QVector y(A.rows, Rational(0));
    for (size_t i = 0; i < A.rows; ++i)
        for (size_t j = 0; j < A.cols; ++j) y[i] += A.at(i, j) * x[j];
    return y;
}

}  // namespace varcert
