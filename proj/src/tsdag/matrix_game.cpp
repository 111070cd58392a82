#include "tsdag/matrix_game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tsdag {

namespace {

constexpr double kTol = 1e-9;

// maximize c^T y subject to A y <= b, y >= 0 with b >= 0, by tableau simplex
// with Bland's rule. Returns objective, y and the constraint duals.
struct SimplexOut {
    double objective = 0;
    std::vector<double> y;
    std::vector<double> duals;
};

SimplexOut simplex_max(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                       const std::vector<double>& c) {
    size_t m = A.size(), n = c.size();
    std::vector<std::vector<double>> T(m, std::vector<double>(n + m, 0.0));
    std::vector<double> rhs = b;
    std::vector<int> basis(m);
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < n; ++j) T[i][j] = A[i][j];
        T[i][n + i] = 1;
        basis[i] = static_cast<int>(n + i);
    }
    std::vector<double> d(n + m, 0.0);
    for (size_t j = 0; j < n; ++j) d[j] = c[j];
    double obj = 0;

    size_t max_iter = 2000 * (m + n) + 1000;
    for (size_t iter = 0; iter < max_iter; ++iter) {
        int enter = -1;
        for (size_t j = 0; j < n + m; ++j)
            if (d[j] > kTol) {
                enter = static_cast<int>(j);
                break;
            }
        if (enter < 0) {
            SimplexOut out;
            out.objective = obj;
            out.y.assign(n, 0.0);
            for (size_t i = 0; i < m; ++i)
                if (basis[i] < static_cast<int>(n)) out.y[basis[i]] = rhs[i];
            out.duals.assign(m, 0.0);
            for (size_t i = 0; i < m; ++i) out.duals[i] = -d[n + i];
            return out;
        }
        int leave = -1;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < m; ++i) {
            if (T[i][enter] <= kTol) continue;
            double ratio = rhs[i] / T[i][enter];
            if (ratio < best_ratio - 1e-12) {
                best_ratio = ratio;
                leave = static_cast<int>(i);
            } else if (ratio <= best_ratio + 1e-12 && leave >= 0 && basis[i] < basis[leave]) {
                // Bland tie-break on the leaving basis variable.
                leave = static_cast<int>(i);
            }
        }
        if (leave < 0) throw std::runtime_error("simplex: unbounded program");
        double piv = T[leave][enter];
        for (size_t j = 0; j < n + m; ++j) T[leave][j] /= piv;
        rhs[leave] /= piv;
        for (size_t i = 0; i < m; ++i) {
            if (static_cast<int>(i) == leave || T[i][enter] == 0) continue;
            double f = T[i][enter];
            for (size_t j = 0; j < n + m; ++j) T[i][j] -= f * T[leave][j];
            rhs[i] -= f * rhs[leave];
            if (rhs[i] < 0 && rhs[i] > -1e-12) rhs[i] = 0;
        }
        double f = d[enter];
        for (size_t j = 0; j < n + m; ++j) d[j] -= f * T[leave][j];
        obj += f * rhs[leave];
        basis[leave] = enter;
    }
    throw std::runtime_error("simplex: iteration limit reached");
}

}  // namespace

GameSolution solve_matrix_game(const std::vector<std::vector<double>>& matrix) {
    size_t rows = matrix.size();
    if (rows == 0) throw std::invalid_argument("solve_matrix_game: empty matrix");
    size_t cols = matrix[0].size();
    for (const auto& r : matrix) {
        if (r.size() != cols) throw std::invalid_argument("solve_matrix_game: ragged matrix");
        for (double x : r)
            if (!std::isfinite(x)) throw std::invalid_argument("solve_matrix_game: nonfinite entry");
    }
    if (cols == 0) throw std::invalid_argument("solve_matrix_game: no columns");

    double lo = matrix[0][0];
    for (const auto& r : matrix) lo = std::min(lo, *std::min_element(r.begin(), r.end()));
    double shift = 1.0 - lo;

    // Row player's LP: max sum(y) s.t. (M + shift)^T y <= 1, y >= 0. Strong
    // duality identifies the slack duals with the column player's scaled
    // strategy.
    std::vector<std::vector<double>> A(cols, std::vector<double>(rows));
    for (size_t i = 0; i < cols; ++i)
        for (size_t j = 0; j < rows; ++j) A[i][j] = matrix[j][i] + shift;
    SimplexOut out = simplex_max(A, std::vector<double>(cols, 1.0), std::vector<double>(rows, 1.0));
    if (out.objective <= 0) throw std::runtime_error("solve_matrix_game: degenerate objective");

    GameSolution sol;
    sol.row_strategy.assign(rows, 0.0);
    for (size_t j = 0; j < rows; ++j) sol.row_strategy[j] = out.y[j] / out.objective;
    double dual_sum = 0;
    for (double x : out.duals) dual_sum += x;
    sol.col_strategy.assign(cols, 0.0);
    if (dual_sum > 0)
        for (size_t i = 0; i < cols; ++i) sol.col_strategy[i] = std::max(0.0, out.duals[i]) / dual_sum;
    else
        sol.col_strategy.assign(cols, 1.0 / cols);
    sol.value = 1.0 / out.objective - shift;

    sol.lower = std::numeric_limits<double>::infinity();
    for (size_t r = 0; r < rows; ++r) {
        double v = 0;
        for (size_t cidx = 0; cidx < cols; ++cidx) v += matrix[r][cidx] * sol.col_strategy[cidx];
        sol.lower = std::min(sol.lower, v);
    }
    sol.upper = -std::numeric_limits<double>::infinity();
    for (size_t cidx = 0; cidx < cols; ++cidx) {
        double v = 0;
        for (size_t r = 0; r < rows; ++r) v += matrix[r][cidx] * sol.row_strategy[r];
        sol.upper = std::max(sol.upper, v);
    }
    return sol;
}

}  // namespace tsdag
