#pragma once

#include <vector>

namespace tsdag {

/// Regularized lower incomplete gamma P(a, x); Q(a, x) = 1 - P(a, x).
/// Series/continued-fraction evaluation, relative error below 1e-12.
double gamma_p(double a, double x);
double gamma_q(double a, double x);

/// Upper tail of the chi-square law with `df` degrees of freedom.
double chi_square_tail(double statistic, int df);

struct ChiSquareResult {
    double statistic = 0;
    int df = 0;
    double p_value = 1;
    bool abstained = false;  // degenerate table, no decision possible
};

/// Pearson independence test on an r x c contingency table (row major).
/// Empty rows/columns are dropped; if fewer than two of either remain the
/// test abstains with p = 1.
ChiSquareResult chi_square_independence(const std::vector<std::vector<double>>& table);

}  // namespace tsdag
