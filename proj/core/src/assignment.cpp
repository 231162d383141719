#include "foundry/assignment.hpp"

#include <algorithm>
#include <limits>

namespace foundry {

namespace {

// Classic shortest-augmenting-path (auction-free JV) solver for m <= n,
// 1-indexed internals. cost(i, j) must be finite.
std::vector<int> solve_rows_le_cols(const std::vector<std::vector<double>>& cost, int m, int n) {
    const double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> u(static_cast<std::size_t>(m) + 1, 0.0);
    std::vector<double> v(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<int> p(static_cast<std::size_t>(n) + 1, 0);   // column -> row
    std::vector<int> way(static_cast<std::size_t>(n) + 1, 0); // augmenting predecessors

    for (int i = 1; i <= m; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(static_cast<std::size_t>(n) + 1, kInf);
        std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
        do {
            used[static_cast<std::size_t>(j0)] = true;
            int i0 = p[static_cast<std::size_t>(j0)];
            int j1 = -1;
            double delta = kInf;
            for (int j = 1; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)]) continue;
                double cur = cost[static_cast<std::size_t>(i0) - 1][static_cast<std::size_t>(j) - 1] -
                             u[static_cast<std::size_t>(i0)] - v[static_cast<std::size_t>(j)];
                if (cur < minv[static_cast<std::size_t>(j)]) {
                    minv[static_cast<std::size_t>(j)] = cur;
                    way[static_cast<std::size_t>(j)] = j0;
                }
                if (minv[static_cast<std::size_t>(j)] < delta) {
                    delta = minv[static_cast<std::size_t>(j)];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)]) {
                    u[static_cast<std::size_t>(p[static_cast<std::size_t>(j)])] += delta;
                    v[static_cast<std::size_t>(j)] -= delta;
                } else {
                    minv[static_cast<std::size_t>(j)] -= delta;
                }
            }
            j0 = j1;
        } while (p[static_cast<std::size_t>(j0)] != 0);
        do {
            int j1 = way[static_cast<std::size_t>(j0)];
            p[static_cast<std::size_t>(j0)] = p[static_cast<std::size_t>(j1)];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<int> row_to_col(static_cast<std::size_t>(m), -1);
    for (int j = 1; j <= n; ++j) {
        int i = p[static_cast<std::size_t>(j)];
        if (i > 0) row_to_col[static_cast<std::size_t>(i) - 1] = j - 1;
    }
    return row_to_col;
}

} // namespace

std::vector<int> solve_assignment(const std::vector<std::vector<double>>& cost) {
    int m = static_cast<int>(cost.size());
    if (m == 0) return {};
    int n = static_cast<int>(cost[0].size());
    if (n == 0) return std::vector<int>(static_cast<std::size_t>(m), -1);

    if (m <= n) return solve_rows_le_cols(cost, m, n);

    // Transpose so rows <= cols, then invert the result.
    std::vector<std::vector<double>> t(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(m)));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) t[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
                cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    std::vector<int> col_to_row = solve_rows_le_cols(t, n, m);
    std::vector<int> row_to_col(static_cast<std::size_t>(m), -1);
    for (int j = 0; j < n; ++j) {
        int i = col_to_row[static_cast<std::size_t>(j)];
        if (i >= 0) row_to_col[static_cast<std::size_t>(i)] = j;
    }
    return row_to_col;
}

} // namespace foundry
