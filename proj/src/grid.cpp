#include "catsim/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace catsim {

namespace {

void check_geometry(int n, int f) {
  if (f <= 0) throw std::invalid_argument("geometry error: f must be positive");
  if (n < 0 || n % f != 0)
    throw std::invalid_argument("geometry error: n (" + std::to_string(n) +
                                ") must be a non-negative multiple of f (" +
                                std::to_string(f) + ")");
}

}  // namespace

bool alive_threshold(uint64_t z, double density) {
  if (std::isnan(density) || density <= 0.0) return false;
  if (density >= 1.0) return true;
  // density = m * 2^(e-53) with m the 53-bit mantissa, so density * 2^64 =
  // m * 2^(e+11); the comparison is exact in shifted integer arithmetic.
  int e = 0;
  const double frac = std::frexp(density, &e);  // density = frac * 2^e
  const auto m = static_cast<uint64_t>(std::ldexp(frac, 53));
  const int sh = e + 11;
  if (sh >= 0)  // sh <= 11 since density < 1
    return static_cast<unsigned __int128>(z) <
           (static_cast<unsigned __int128>(m) << sh);
  const int right = -sh;
  // Bound is below 1: only z = 0 can sit under it.
  if (right >= 64) return z == 0;
  // z < m * 2^-right  <=>  z * 2^right < m, widened to 128 bits.
  return (static_cast<unsigned __int128>(z) << right) <
         static_cast<unsigned __int128>(m);
}

Grid make_grid(int n, int f, Layout layout) {
  check_geometry(n, f);
  Grid g;
  g.n = n;
  g.f = f;
  g.layout = layout;
  g.cells.assign(static_cast<std::size_t>(g.padded()) * g.padded(), 0);
  return g;
}

IntField make_field(int n, int f, Layout layout) {
  check_geometry(n, f);
  IntField h;
  h.n = n;
  h.f = f;
  h.layout = layout;
  h.values.assign(static_cast<std::size_t>(h.padded()) * h.padded(), 0);
  return h;
}

Grid init_random(int n, double density, uint64_t seed, int f, int fill_n) {
  if (!(density >= 0.0 && density <= 1.0) || std::isnan(density))
    throw std::invalid_argument("init_random: density must be in [0, 1]");
  if (fill_n < 0) fill_n = n;
  if (fill_n > n)
    throw std::invalid_argument("init_random: fill_n exceeds n");
  Grid g = make_grid(n, f, Layout::RowMajor);
  SplitMix64 rng(seed);
  for (int y = 0; y < fill_n; ++y)
    for (int x = 0; x < fill_n; ++x)
      g.interior(y, x) = alive_threshold(rng.next(), density) ? 1 : 0;
  return g;
}

void fill_periodic_halo(Grid& grid) {
  const int n = grid.n, f = grid.f, p = grid.padded();
  if (n == 0) {  // no interior to mirror; vacuous halo
    grid.halo_valid = true;
    return;
  }
  for (int y = 0; y < p; ++y) {
    const bool y_halo = y < f || y >= f + n;
    const int sy = f + ((y - f) % n + n) % n;
    for (int x = 0; x < p; ++x) {
      if (!y_halo && x >= f && x < f + n) {
        x = f + n - 1;  // skip the interior span of this row
        continue;
      }
      const int sx = f + ((x - f) % n + n) % n;
      grid.at(y, x) = grid.at(sy, sx);
    }
  }
  grid.halo_valid = true;
}

long long count_alive(const Grid& grid) {
  long long alive = 0;
  for (int y = 0; y < grid.n; ++y)
    for (int x = 0; x < grid.n; ++x) alive += grid.interior(y, x);
  return alive;
}

std::optional<CellCoord> first_interior_difference(const Grid& a,
                                                   const Grid& b) {
  if (a.n != b.n)
    throw std::invalid_argument("geometry error: grids differ in n");
  for (int y = 0; y < a.n; ++y)
    for (int x = 0; x < a.n; ++x)
      if (a.interior(y, x) != b.interior(y, x)) return CellCoord{y, x};
  return std::nullopt;
}

}  // namespace catsim
