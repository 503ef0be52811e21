#ifndef BLOCH_ZSOLVE_HPP
#define BLOCH_ZSOLVE_HPP

#include "bloch/numeric.hpp"

#include <map>
#include <optional>

namespace bloch {

using SparseVec = std::map<int, Int>;  // row index -> value, no zeros

/// Solve A x = b exactly over the integers. Columns are given sparsely.
/// Returns a solution vector (length = number of columns) or nullopt when no
/// integer solution exists. Complete: the triangularization covers every row,
/// so nullopt is a genuine certificate of unsolvability over Z.
std::optional<std::vector<Int>> solve_integer(const std::vector<SparseVec>& columns,
                                              const SparseVec& rhs, int nrows);

}  // namespace bloch

#endif
