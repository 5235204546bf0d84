#pragma once

#include <cstdint>
#include <vector>

#include "catsim/rule.hpp"

namespace catsim {

// Square integer tile, the unit the MMA kernels operate on. Arithmetic is
// exact int32; every value produced by the engines stays far below the
// half-precision exactness ceiling (see fp16_exactness_bound).
struct Fragment {
  int side = 0;
  std::vector<int32_t> data;  // side * side, row-major

  Fragment() = default;
  explicit Fragment(int side_)
      : side(side_), data(static_cast<std::size_t>(side_) * side_, 0) {}

  int32_t at(int row, int col) const {
    return data[static_cast<std::size_t>(row) * side + col];
  }
  int32_t& at(int row, int col) {
    return data[static_cast<std::size_t>(row) * side + col];
  }
};

Fragment identity_fragment(int side);

// d = a * b + acc, exact. All three operands must share one side length.
Fragment mma(const Fragment& a, const Fragment& b, const Fragment& acc);

// The three f x f blocks of the banded window matrix B (B[x][y] = 1 iff
// |x - y| <= r) in block-tridiagonal position: pi1 on the super-diagonal,
// pi2 on the diagonal, pi3 on the sub-diagonal.
//
//   pi1[a][b] = 1 iff a - b >= f - r   (lower-left wedge)
//   pi2[a][b] = 1 iff |a - b| <= r
//   pi3[a][b] = 1 iff b - a >= f - r   (upper-right wedge)
struct BandFragments {
  int f = 0;
  int r = 0;
  Fragment pi1, pi2, pi3;
};

BandFragments gen_band_fragments(int f, int r);  // requires 1 <= r <= f

// Largest value any intermediate (horizontal) or final reduction can reach:
// (2r+1)^2 for Moore, 2(2r+1) for the doubled-center Von Neumann cross. At
// r = 16 that is 1089, inside the 2048 window where IEEE half-precision
// accumulation is still exact for integer-valued operands.
int fp16_exactness_bound(int r, NeighborhoodKind kind);

namespace detail {

// acc += a * b on raw side x side row-major tiles. Shared by the public mma
// and the engine phases so both routes run the same arithmetic.
template <typename TA, typename TB>
inline void mma_accum(const TA* a, const TB* b, int32_t* acc, int side) {
  for (int i = 0; i < side; ++i) {
    const TA* arow = a + static_cast<std::size_t>(i) * side;
    int32_t* crow = acc + static_cast<std::size_t>(i) * side;
    for (int k = 0; k < side; ++k) {
      const int32_t aik = static_cast<int32_t>(arow[k]);
      const TB* brow = b + static_cast<std::size_t>(k) * side;
      for (int j = 0; j < side; ++j)
        crow[j] += aik * static_cast<int32_t>(brow[j]);
    }
  }
}

}  // namespace detail

}  // namespace catsim
