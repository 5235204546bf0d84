#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "catsim/grid.hpp"
#include "catsim/layout.hpp"

using namespace catsim;

TEST_CASE("splitmix64 matches the pinned stream") {
  // Known-answer values generated independently before this implementation.
  SplitMix64 a(0);
  CHECK(a.next() == 0xE220A8397B1DCDAFULL);
  CHECK(a.next() == 0x6E789E6AA1B965F4ULL);
  CHECK(a.next() == 0x06C45D188009454FULL);
  CHECK(a.next() == 0xF88BB8A8724C81ECULL);
  SplitMix64 b(12345);
  CHECK(b.next() == 0x22118258A9D111A0ULL);
  CHECK(b.next() == 0x346EDCE5F713F8EDULL);
}

TEST_CASE("alive_threshold is exact at the edges") {
  CHECK_FALSE(alive_threshold(0, 0.0));
  CHECK_FALSE(alive_threshold(UINT64_MAX, 0.0));
  CHECK(alive_threshold(0, 1.0));
  CHECK(alive_threshold(UINT64_MAX, 1.0));  // exact: 1.0 admits every draw
  // density 0.5 splits the range exactly at 2^63
  CHECK(alive_threshold((1ULL << 63) - 1, 0.5));
  CHECK_FALSE(alive_threshold(1ULL << 63, 0.5));
  // tiny densities: only z = 0 can fall below the bound
  CHECK(alive_threshold(0, 0x1p-70));
  CHECK_FALSE(alive_threshold(1, 0x1p-70));
  CHECK(alive_threshold(0, 0x1p-100));
  CHECK_FALSE(alive_threshold(1, 0x1p-100));
  // 0.25 boundary: 2^62 is the first excluded draw
  CHECK(alive_threshold((1ULL << 62) - 1, 0.25));
  CHECK_FALSE(alive_threshold(1ULL << 62, 0.25));
}

TEST_CASE("make_grid geometry") {
  const Grid g = make_grid(32, 16);
  CHECK(g.padded() == 64);
  CHECK(g.halo() == 16);
  CHECK(g.fragments_per_row() == 4);
  CHECK(g.cells.size() == 64u * 64u);
  CHECK_FALSE(g.halo_valid);
  CHECK_THROWS_AS(make_grid(10, 16), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(-16, 16), std::invalid_argument);
}

TEST_CASE("init_random determinism and the first-row pin") {
  const Grid a = init_random(64, 0.37, 99);
  const Grid b = init_random(64, 0.37, 99);
  CHECK(a.cells == b.cells);
  const Grid c = init_random(64, 0.37, 100);
  CHECK(a.cells != c.cells);

  // Row-major interior order, one draw per cell: seed 0, density 0.5 pins
  // the first cells to the splitmix64 stream's top bits.
  const Grid g = init_random(16, 0.5, 0);
  CHECK(g.interior(0, 0) == 0);  // 0xE220... >= 2^63
  CHECK(g.interior(0, 1) == 1);  // 0x6E78... < 2^63
  CHECK(g.interior(0, 2) == 1);  // 0x06C4... < 2^63
  CHECK(g.interior(0, 3) == 0);  // 0xF88B... >= 2^63
}

TEST_CASE("init_random density extremes and errors") {
  CHECK(count_alive(init_random(64, 0.0, 5)) == 0);
  CHECK(count_alive(init_random(64, 1.0, 5)) == 64 * 64);
  const Grid g = init_random(512, 0.07, 1);
  const double frac =
      static_cast<double>(count_alive(g)) / (512.0 * 512.0);
  CHECK(frac == doctest::Approx(0.07).epsilon(0.15));  // ~40 sigma window
  CHECK(std::abs(frac - 0.07) < 0.01);
  CHECK_THROWS_AS(init_random(64, -0.1, 1), std::invalid_argument);
  CHECK_THROWS_AS(init_random(64, 1.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(init_random(30, 0.5, 1), std::invalid_argument);
}

TEST_CASE("init_random fill_n pads the remainder dead") {
  const Grid g = init_random(64, 1.0, 3, 16, 48);
  for (int y = 0; y < 64; ++y)
    for (int x = 0; x < 64; ++x)
      CHECK(g.interior(y, x) == ((y < 48 && x < 48) ? 1 : 0));
  CHECK_THROWS_AS(init_random(32, 0.5, 1, 16, 33), std::invalid_argument);
}

TEST_CASE("periodic halo equals the modular image everywhere") {
  for (const int n : {16, 32}) {
    Grid g = init_random(n, 0.4, 7);
    CHECK_FALSE(g.halo_valid);
    fill_periodic_halo(g);
    CHECK(g.halo_valid);
    const int f = g.f, p = g.padded();
    for (int y = 0; y < p; ++y)
      for (int x = 0; x < p; ++x) {
        const int sy = ((y - f) % n + n) % n;
        const int sx = ((x - f) % n + n) % n;
        CHECK(g.at(y, x) == g.interior(sy, sx));
      }
  }
}

TEST_CASE("halo fill is idempotent and layout-independent") {
  Grid g = init_random(32, 0.5, 11);
  fill_periodic_halo(g);
  const std::vector<uint8_t> once = g.cells;
  fill_periodic_halo(g);
  CHECK(g.cells == once);

  // Same fill through the fragment-contiguous layout.
  Grid frag = to_fragment_layout(init_random(32, 0.5, 11));
  fill_periodic_halo(frag);
  const Grid back = to_row_major(frag);
  CHECK(back.cells == once);
  CHECK(back.halo_valid);
}

TEST_CASE("first_interior_difference finds the earliest mismatch") {
  Grid a = init_random(32, 0.5, 2);
  Grid b = a;
  CHECK_FALSE(first_interior_difference(a, b).has_value());
  b.interior(5, 30) ^= 1;
  b.interior(9, 0) ^= 1;
  const auto diff = first_interior_difference(a, b);
  REQUIRE(diff.has_value());
  CHECK(diff->y == 5);
  CHECK(diff->x == 30);
}
