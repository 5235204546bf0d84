#pragma once

#include "catsim/grid.hpp"

namespace catsim {

// Geometry of a fragment-contiguous buffer over a padded square grid.
struct LayoutMap {
  int f = kDefaultFragmentSide;  // fragment side
  int n_total = 0;               // padded side, multiple of f

  int fragments_per_row() const { return n_total / f; }
  std::size_t size() const {
    return static_cast<std::size_t>(n_total) * n_total;
  }
};

LayoutMap make_layout_map(int f, int n_total);

// Buffer offset of padded coordinate (y, x): fragment-major, then row-major
// inside the fragment. Bijective on [0, n_total)^2.
std::size_t frag_index(const LayoutMap& map, int y, int x);

// Reorder the padded buffer (halo included) between layouts. Pure
// permutations: interior values, geometry and halo staleness carry over.
Grid to_fragment_layout(const Grid& grid);  // requires RowMajor input
Grid to_row_major(const Grid& grid);        // requires FragmentContiguous input

}  // namespace catsim
