#pragma once

#include <vector>

namespace tsdag {

/// Solution of the zero-sum game value = max_{alpha in simplex} min_row
/// (M alpha): the maximizing column mixture, the minimizing row mixture and
/// the certified duality gap between the two bounds they induce.
struct GameSolution {
    double value = 0;
    std::vector<double> col_strategy;  // alpha over columns
    std::vector<double> row_strategy;
    double lower = 0;  // min_row M * alpha
    double upper = 0;  // max_col row_strategy^T M
    double gap() const { return upper - lower; }
};

/// Exact LP solve (dense simplex with Bland's rule) of the matrix game.
/// `matrix[r][c]` is the payoff to the column player when the row player
/// plays r and the column player plays c.
GameSolution solve_matrix_game(const std::vector<std::vector<double>>& matrix);

}  // namespace tsdag
