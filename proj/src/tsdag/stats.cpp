#include "tsdag/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace tsdag {

namespace {

// Lower incomplete gamma by power series, for x < a + 1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 1000; ++i) {
        ap += 1;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper incomplete gamma by Lentz continued fraction, for x >= a + 1.
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1 - a;
    double c = 1 / tiny;
    double d = 1 / b;
    double h = d;
    for (int i = 1; i < 1000; ++i) {
        double an = -i * (i - a);
        b += 2;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double gamma_p(double a, double x) {
    if (a <= 0) throw std::invalid_argument("gamma_p: a must be positive");
    if (x < 0) throw std::invalid_argument("gamma_p: x must be nonnegative");
    if (x == 0) return 0;
    if (x < a + 1) return gamma_p_series(a, x);
    return 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
    if (a <= 0) throw std::invalid_argument("gamma_q: a must be positive");
    if (x < 0) throw std::invalid_argument("gamma_q: x must be nonnegative");
    if (x == 0) return 1;
    if (x < a + 1) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double chi_square_tail(double statistic, int df) {
    if (df < 1) throw std::invalid_argument("chi_square_tail: df must be positive");
    if (statistic <= 0) return 1;
    return gamma_q(df / 2.0, statistic / 2.0);
}

ChiSquareResult chi_square_independence(const std::vector<std::vector<double>>& table) {
    size_t rows = table.size();
    size_t cols = rows ? table[0].size() : 0;
    for (const auto& r : table) {
        if (r.size() != cols) throw std::invalid_argument("chi_square_independence: ragged table");
        for (double x : r)
            if (x < 0) throw std::invalid_argument("chi_square_independence: negative count");
    }
    std::vector<double> rsum(rows, 0), csum(cols, 0);
    double total = 0;
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) {
            rsum[i] += table[i][j];
            csum[j] += table[i][j];
            total += table[i][j];
        }
    std::vector<size_t> live_r, live_c;
    for (size_t i = 0; i < rows; ++i)
        if (rsum[i] > 0) live_r.push_back(i);
    for (size_t j = 0; j < cols; ++j)
        if (csum[j] > 0) live_c.push_back(j);

    ChiSquareResult res;
    if (live_r.size() < 2 || live_c.size() < 2) {
        res.abstained = true;
        return res;
    }
    res.df = static_cast<int>((live_r.size() - 1) * (live_c.size() - 1));
    for (size_t i : live_r)
        for (size_t j : live_c) {
            double expected = rsum[i] * csum[j] / total;
            double diff = table[i][j] - expected;
            res.statistic += diff * diff / expected;
        }
    res.p_value = chi_square_tail(res.statistic, res.df);
    return res;
}

}  // namespace tsdag
