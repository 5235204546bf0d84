#include "catsim/layout.hpp"

#include <stdexcept>
#include <string>

namespace catsim {

LayoutMap make_layout_map(int f, int n_total) {
  if (f <= 0 || n_total <= 0 || n_total % f != 0)
    throw std::invalid_argument(
        "layout error: n_total (" + std::to_string(n_total) +
        ") must be a positive multiple of f (" + std::to_string(f) + ")");
  return LayoutMap{f, n_total};
}

std::size_t frag_index(const LayoutMap& map, int y, int x) {
  if (y < 0 || y >= map.n_total || x < 0 || x >= map.n_total)
    throw std::out_of_range("layout error: coordinate (" + std::to_string(y) +
                            ", " + std::to_string(x) + ") outside padded grid");
  return detail::fragment_offset(map.f, map.fragments_per_row(), y, x);
}

Grid to_fragment_layout(const Grid& grid) {
  if (grid.layout != Layout::RowMajor)
    throw std::invalid_argument("layout error: expected row-major input");
  Grid out = grid;
  out.layout = Layout::FragmentContiguous;
  const int p = grid.padded();
  for (int y = 0; y < p; ++y)
    for (int x = 0; x < p; ++x) out.at(y, x) = grid.at(y, x);
  return out;
}

Grid to_row_major(const Grid& grid) {
  if (grid.layout != Layout::FragmentContiguous)
    throw std::invalid_argument(
        "layout error: expected fragment-contiguous input");
  Grid out = grid;
  out.layout = Layout::RowMajor;
  const int p = grid.padded();
  for (int y = 0; y < p; ++y)
    for (int x = 0; x < p; ++x) out.at(y, x) = grid.at(y, x);
  return out;
}

}  // namespace catsim
