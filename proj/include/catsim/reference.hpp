#pragma once

#include <cstdint>
#include <vector>

#include "catsim/grid.hpp"
#include "catsim/rule.hpp"

namespace catsim {

// Memory-access instrumentation for the per-cell engine: every neighborhood
// read, the center-cell read, and the result write are counted. A Moore cell
// costs (2r+1)^2 + 2 accesses; the quadratic growth in r is the baseline the
// banded engine's flat six-MMA cost is contrasted with.
struct BaseStats {
  long long window_reads = 0;
  long long cell_reads = 0;
  long long writes = 0;
  long long cells = 0;

  long long accesses() const { return window_reads + cell_reads + writes; }
};

// Naive per-cell engine: box sum (Moore) or horizontal+vertical window sum
// with the center twice (Von Neumann), then the rule. Requires a row-major
// grid with a filled halo.
void base_step(const Grid& grid, const LtlRule& rule, Grid& out,
               BaseStats* stats = nullptr);

// Runs `steps` generations, refreshing the halo before each.
Grid simulate_base(Grid grid, const LtlRule& rule, int steps,
                   BaseStats* stats = nullptr);

// Bit-packed comparator: eight cells per 64-bit word, one byte lane each,
// lane 0 in the least-significant byte (lowest column index). Geometry
// mirrors Grid; the padded row width must be a multiple of 8.
struct PackedGrid {
  int n = 0;
  int f = kDefaultFragmentSide;
  bool halo_valid = false;
  std::vector<uint64_t> words;

  int padded() const { return n + 2 * f; }
  int words_per_row() const { return padded() / 8; }

  uint8_t cell(int y, int x) const {
    const uint64_t w =
        words[static_cast<std::size_t>(y) * words_per_row() + x / 8];
    return static_cast<uint8_t>((w >> (8 * (x % 8))) & 0xFF);
  }
  void set_cell(int y, int x, uint8_t v) {
    uint64_t& w =
        words[static_cast<std::size_t>(y) * words_per_row() + x / 8];
    const int sh = 8 * (x % 8);
    w = (w & ~(uint64_t{0xFF} << sh)) | (uint64_t{v} << sh);
  }
};

PackedGrid pack(const Grid& grid);
Grid unpack(const PackedGrid& packed);  // row-major result

// Periodic halo fill on the packed form; same image rule as the Grid fill.
void fill_periodic_halo(PackedGrid& packed);

// One generation on packed words. Neighbor lanes are gathered from up to
// ceil(r/8) words per side and accumulated in full-width integers: a Moore
// count reaches (2r+1)^2 = 1089, past any byte-lane SWAR range. Requires
// halo >= 8 * ceil(r/8) so gathers stay inside the row.
void pack_step(const PackedGrid& packed, const LtlRule& rule, PackedGrid& out);

PackedGrid simulate_packed(PackedGrid packed, const LtlRule& rule, int steps);

}  // namespace catsim
