#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace catsim {

inline constexpr int kDefaultFragmentSide = 16;

// In-memory cell order of the padded buffer. RowMajor is plain y*side+x;
// FragmentContiguous stores each f x f fragment as a contiguous row-major
// block so a fragment can be handed to the MMA kernels as one pointer.
enum class Layout { RowMajor, FragmentContiguous };

namespace detail {

// Linear offset of padded coordinate (y, x) in fragment-contiguous order.
inline std::size_t fragment_offset(int f, int fragments_per_row, int y, int x) {
  const int fy = y / f, fx = x / f;
  return (static_cast<std::size_t>(fy) * fragments_per_row + fx) *
             (static_cast<std::size_t>(f) * f) +
         static_cast<std::size_t>(y % f) * f + (x % f);
}

}  // namespace detail

// splitmix64. The stream is pinned by known-answer tests: grids must be
// reproducible bit-for-bit across implementations given (n, density, seed).
struct SplitMix64 {
  uint64_t state;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    state += 0x9E3779B97F4A7C15ULL;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
};

// Exact predicate for "z / 2^64 < density". Floating-point evaluation
// misclassifies at density = 1.0 and near mantissa boundaries, so the
// comparison is done in integer arithmetic on the scaled mantissa.
bool alive_threshold(uint64_t z, double density);

// Square torus of two-state cells with a halo of width f on every side.
// Interior coordinates are (0..n), padded coordinates (0..n+2f); the halo
// mirrors the interior periodically once fill_periodic_halo has run.
struct Grid {
  int n = 0;  // logical side, multiple of f
  int f = kDefaultFragmentSide;
  Layout layout = Layout::RowMajor;
  // Staleness flag: set by fill_periodic_halo, cleared by operations that
  // rewrite the interior. Engine steps refuse to run on a stale halo.
  bool halo_valid = false;
  std::vector<uint8_t> cells;  // (n + 2f)^2 values in {0, 1}

  int halo() const { return f; }
  int padded() const { return n + 2 * f; }
  int fragments_per_row() const { return padded() / f; }

  std::size_t index(int y, int x) const {
    if (layout == Layout::RowMajor)
      return static_cast<std::size_t>(y) * padded() + x;
    return detail::fragment_offset(f, fragments_per_row(), y, x);
  }

  uint8_t at(int y, int x) const { return cells[index(y, x)]; }
  uint8_t& at(int y, int x) { return cells[index(y, x)]; }

  // Interior accessors take logical coordinates in [0, n).
  uint8_t interior(int iy, int ix) const { return at(iy + f, ix + f); }
  uint8_t& interior(int iy, int ix) { return at(iy + f, ix + f); }
};

// Integer field sharing Grid geometry; holds horizontal (H) and full (R)
// neighborhood reductions. `valid` marks a completed producing pass.
struct IntField {
  int n = 0;
  int f = kDefaultFragmentSide;
  Layout layout = Layout::FragmentContiguous;
  bool valid = false;
  std::vector<int32_t> values;

  int padded() const { return n + 2 * f; }
  int fragments_per_row() const { return padded() / f; }

  std::size_t index(int y, int x) const {
    if (layout == Layout::RowMajor)
      return static_cast<std::size_t>(y) * padded() + x;
    return detail::fragment_offset(f, fragments_per_row(), y, x);
  }

  int32_t at(int y, int x) const { return values[index(y, x)]; }
  int32_t& at(int y, int x) { return values[index(y, x)]; }
};

// All-dead grid. n must be a non-negative multiple of f.
Grid make_grid(int n, int f = kDefaultFragmentSide,
               Layout layout = Layout::RowMajor);

IntField make_field(int n, int f = kDefaultFragmentSide,
                    Layout layout = Layout::FragmentContiguous);

// Deterministic random fill: one splitmix64 draw per cell in row-major
// interior order, alive iff draw/2^64 < density (exact comparison).
// fill_n < n restricts the randomized region to the top-left fill_n x fill_n
// cells (CLI padding policy); the remainder stays dead. fill_n = -1 means n.
Grid init_random(int n, double density, uint64_t seed,
                 int f = kDefaultFragmentSide, int fill_n = -1);

// Copies every halo cell from its interior image (congruent mod n in both
// axes). Idempotent; sets halo_valid.
void fill_periodic_halo(Grid& grid);

long long count_alive(const Grid& grid);

struct CellCoord {
  int y = 0, x = 0;  // logical interior coordinates
};

// First interior cell (row-major) where the two grids differ, if any.
// Grids must share n; layouts may differ.
std::optional<CellCoord> first_interior_difference(const Grid& a,
                                                   const Grid& b);

}  // namespace catsim
