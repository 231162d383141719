#pragma once

#include <vector>

namespace foundry {

/// Exact min-cost linear assignment on an m x n cost matrix (rows may differ
/// from columns; the smaller side is fully matched). Returns for each row the
/// assigned column, or -1 when the row is left unmatched. Shortest augmenting
/// path with potentials, O(n^3).
std::vector<int> solve_assignment(const std::vector<std::vector<double>>& cost);

} // namespace foundry
