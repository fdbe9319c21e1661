#include "varcert/simplex.hpp"

#include <stdexcept>

namespace varcert {

namespace {

// Standard-form tableau simplex: minimize cost over {y >= 0 : T y = rhs}.
// Free variables are split by the caller. Bland's rule throughout.
struct Tableau {
    size_t rows, cols;           // constraint rows, total columns
    std::vector<QVector> t;      // rows x (cols + 1), last column is the rhs
    std::vector<size_t> basis;   // basic column per row
    std::vector<bool> blocked;   // columns barred from entering the basis
    QVector cost;

    // returns false on unboundedness
    bool iterate() {
        while (true) {
            std::optional<size_t> enter;
            for (size_t j = 0; j < cols; ++j) {
                if (blocked[j]) continue;
                Rational rc = cost[j];
                for (size_t i = 0; i < rows; ++i) rc -= cost[basis[i]] * t[i][j];
                if (rat_sign(rc) < 0) {
                    enter = j;
                    break;  // Bland: first improving column
                }
            }
            if (!enter) return true;
            std::optional<size_t> leave;
            Rational best_ratio(0);
            for (size_t i = 0; i < rows; ++i) {
                if (rat_sign(t[i][*enter]) <= 0) continue;
                Rational ratio = t[i][cols] / t[i][*enter];
                if (!leave || ratio < best_ratio ||
                    (ratio == best_ratio && basis[i] < basis[*leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (!leave) return false;
            pivot(*leave, *enter);
        }
    }

    void pivot(size_t row, size_t col) {
        Rational inv = 1 / t[row][col];
        for (auto& v : t[row]) v *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == row || rat_sign(t[i][col]) == 0) continue;
            Rational f = t[i][col];
            for (size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[row][j];
        }
        basis[row] = col;
    }

    Rational objective() const {
        Rational v(0);
        for (size_t i = 0; i < rows; ++i) v += cost[basis[i]] * t[i][cols];
        return v;
    }

    QVector solution() const {
        QVector y(cols, Rational(0));
        for (size_t i = 0; i < rows; ++i) y[basis[i]] = t[i][cols];
        return y;
    }
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
    size_t n = lp.c.size();
    size_t mi = lp.b.size(), me = lp.e.size();
    if ((mi && lp.A.cols != n) || (me && lp.E.cols != n))
        throw std::invalid_argument("lp: column mismatch");

    // x = xp - xm with xp, xm >= 0; slacks on inequalities; one artificial per row
    size_t structural = 2 * n + mi;
    size_t rows = mi + me;
    Tableau tb;
    tb.rows = rows;
    tb.cols = structural + rows;
    tb.t.assign(rows, QVector(tb.cols + 1, Rational(0)));
    tb.basis.resize(rows);
    tb.blocked.assign(tb.cols, false);

    auto fill_row = [&](size_t r, const QMatrix& M, size_t mrow, const Rational& rhs,
                        bool slack) {
        for (size_t j = 0; j < n; ++j) {
            tb.t[r][j] = M.at(mrow, j);
            tb.t[r][n + j] = -M.at(mrow, j);
        }
        if (slack) tb.t[r][2 * n + r] = 1;
        tb.t[r][tb.cols] = rhs;
        if (rat_sign(tb.t[r][tb.cols]) < 0)
            for (auto& v : tb.t[r]) v = -v;
        tb.t[r][structural + r] = 1;
        tb.basis[r] = structural + r;
    };
    for (size_t i = 0; i < mi; ++i) fill_row(i, lp.A, i, lp.b[i], true);
    for (size_t i = 0; i < me; ++i) fill_row(mi + i, lp.E, i, lp.e[i], false);

    // phase 1: minimize the artificial sum
    tb.cost.assign(tb.cols, Rational(0));
    for (size_t r = 0; r < rows; ++r) tb.cost[structural + r] = 1;
    tb.iterate();
    if (rat_sign(tb.objective()) != 0) return {LpResult::Status::Infeasible, {}, Rational(0)};

    // drive leftover artificials out of the basis where possible
    for (size_t r = 0; r < rows; ++r) {
        if (tb.basis[r] < structural) continue;
        for (size_t j = 0; j < structural; ++j) {
            if (rat_sign(tb.t[r][j]) != 0) {
                tb.pivot(r, j);
                break;
            }
        }
    }

    // phase 2: artificials may never re-enter
    for (size_t j = structural; j < tb.cols; ++j) tb.blocked[j] = true;
    tb.cost.assign(tb.cols, Rational(0));
    for (size_t j = 0; j < n; ++j) {
        tb.cost[j] = -lp.c[j];
        tb.cost[n + j] = lp.c[j];
    }
    if (!tb.iterate()) return {LpResult::Status::Unbounded, {}, Rational(0)};

    QVector y = tb.solution();
    QVector x(n);
    for (size_t j = 0; j < n; ++j) x[j] = y[j] - y[n + j];
    Rational obj(0);
    for (size_t j = 0; j < n; ++j) obj += lp.c[j] * x[j];
    return {LpResult::Status::Optimal, std::move(x), obj};
}

}  // namespace varcert
