#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>

#include "catsim/layout.hpp"
#include "catsim/reference.hpp"
#include "oracle.hpp"

using namespace catsim;

namespace {

bool same_interior(const Grid& a, const Grid& b) {
  return !first_interior_difference(a, b).has_value();
}

Grid packed_round_trip(const Grid& start, const LtlRule& rule, int steps) {
  return unpack(simulate_packed(pack(start), rule, steps));
}

}  // namespace

TEST_CASE("per-cell engine matches the torus oracle") {
  struct Probe {
    const char* rule;
    int n;
    double density;
  };
  const Probe probes[] = {
      {"R1,C2,M0,S2..3,B3..3,NM", 32, 0.30},
      {"R5,C2,M0,S35..59,B34..45,NM", 32, 0.21},
      {"R8,C2,M0,S163..223,B74..252,NM", 48, 0.23},
  };
  for (const Probe& p : probes) {
    INFO("rule ", p.rule);
    const LtlRule rule = parse_ltl_rule(p.rule);
    const Grid start = init_random(p.n, p.density, 42);
    const Grid expected = oracle::torus_rule_steps(start, rule, 2);
    const Grid got = simulate_base(start, rule, 2);
    CHECK(same_interior(expected, got));
  }
}

TEST_CASE("per-cell engine matches the torus oracle on cross windows") {
  for (const int r : {1, 4, 9}) {
    CAPTURE(r);
    const LtlRule rule = von_neumann_probe_rule(r);
    const Grid start = init_random(32, 0.25, 7);
    const Grid expected = oracle::torus_rule_steps(start, rule, 2);
    const Grid got = simulate_base(start, rule, 2);
    CHECK(same_interior(expected, got));
  }
}

TEST_CASE("access accounting: box window costs (2r+1)^2 + 2 per cell") {
  const LtlRule rule = parse_ltl_rule("R2,C2,M0,S7..12,B8..11,NM");
  Grid grid = init_random(16, 0.5, 1);
  fill_periodic_halo(grid);
  Grid out = make_grid(16, 16);
  BaseStats stats;
  base_step(grid, rule, out, &stats);
  const long long cells = 16 * 16;
  CHECK(stats.cells == cells);
  CHECK(stats.window_reads == 25 * cells);
  CHECK(stats.cell_reads == cells);
  CHECK(stats.writes == cells);
  CHECK(stats.accesses() == 27 * cells);
}

TEST_CASE("access accounting: cross window costs 2(2r+1) + 2 per cell") {
  const LtlRule rule = von_neumann_probe_rule(3);
  Grid grid = init_random(16, 0.5, 2);
  fill_periodic_halo(grid);
  Grid out = make_grid(16, 16);
  BaseStats stats;
  base_step(grid, rule, out, &stats);
  const long long cells = 16 * 16;
  CHECK(stats.window_reads == 14 * cells);
  CHECK(stats.accesses() == 16 * cells);
}

TEST_CASE("accesses grow quadratically with the radius") {
  Grid grid = init_random(32, 0.5, 3);
  fill_periodic_halo(grid);
  Grid out = make_grid(32, 16);
  BaseStats narrow, wide;
  base_step(grid, parse_ltl_rule("R1,C2,M0,S2..3,B3..3,NM"), out, &narrow);
  base_step(grid, parse_ltl_rule("R16,C2,M0,S170..296,B170..300,NM"), out,
            &wide);
  // Per-cell accesses are 3^2 + 2 = 11 and 33^2 + 2 = 1091.
  CHECK(wide.accesses() * 11 == narrow.accesses() * 1091);
}

TEST_CASE("packing puts lane 0 in the least significant byte") {
  Grid g = make_grid(16, 16);  // padded 48, six words per row
  for (int x = 0; x < 8; ++x) g.interior(0, x) = 1;
  g.interior(1, 3) = 1;
  const PackedGrid packed = pack(g);
  const int wpr = packed.words_per_row();
  CHECK(packed.words[static_cast<std::size_t>(16) * wpr + 2] ==
        UINT64_C(0x0101010101010101));
  CHECK(packed.words[static_cast<std::size_t>(17) * wpr + 2] ==
        uint64_t{1} << 24);
  CHECK(packed.cell(17, 19) == 1);
  CHECK(packed.cell(17, 18) == 0);
}

TEST_CASE("pack and unpack round trip the whole padded grid") {
  Grid grid = init_random(32, 0.5, 99);
  SUBCASE("halo filled") { fill_periodic_halo(grid); }
  SUBCASE("halo unset") {}
  const Grid back = unpack(pack(grid));
  CHECK(back.cells == grid.cells);
  CHECK(back.halo_valid == grid.halo_valid);
  CHECK(back.n == grid.n);
  CHECK(back.f == grid.f);
}

TEST_CASE("packed engine equals the per-cell engine") {
  for (const char* name : {"life", "globe", "gravity", "tangy-ramen"}) {
    CAPTURE(name);
    const LtlPreset* preset = find_preset(name);
    REQUIRE(preset != nullptr);
    const LtlRule rule = parse_ltl_rule(preset->rule);
    const Grid start = init_random(32, preset->density, 5);
    const Grid expected = simulate_base(start, rule, 2);
    CHECK(same_interior(expected, packed_round_trip(start, rule, 2)));
  }
}

TEST_CASE("packed engine equals the per-cell engine on cross windows") {
  const LtlRule rule = von_neumann_probe_rule(9);
  const Grid start = init_random(32, 0.25, 6);
  const Grid expected = simulate_base(start, rule, 2);
  CHECK(same_interior(expected, packed_round_trip(start, rule, 2)));
}

TEST_CASE("packed engine works with the minimum halo for its radius") {
  const LtlRule rule = parse_ltl_rule("R8,C2,M0,S163..223,B74..252,NM");
  const Grid start = init_random(32, 0.23, 8, 8);  // halo 8 = 8 * ceil(8/8)
  const Grid expected = simulate_base(start, rule, 2);
  CHECK(same_interior(expected, packed_round_trip(start, rule, 2)));
}

TEST_CASE("a lone cell births its full radius-9 box across word boundaries") {
  // B1..1 turns every cell whose window sees exactly the one live cell on;
  // S0..0 keeps the originator. One step paints the Chebyshev-9 ball.
  const LtlRule rule = parse_ltl_rule("R9,C2,M0,S0..0,B1..1,NM");
  Grid start = make_grid(32, 16);
  start.interior(16, 16) = 1;
  const Grid base = simulate_base(start, rule, 1);
  const Grid packed = packed_round_trip(start, rule, 1);
  CHECK(same_interior(base, packed));
  CHECK(base.interior(16, 16) == 1);
  for (const int d : {-9, 9}) {
    CHECK(base.interior(16, 16 + d) == 1);
    CHECK(base.interior(16 + d, 16) == 1);
    CHECK(base.interior(16 + d, 16 + d) == 1);
  }
  CHECK(base.interior(16, 26) == 0);
  CHECK(base.interior(6, 16) == 0);
}

TEST_CASE("pack rejects a padded width that is not a multiple of 8") {
  const Grid g = make_grid(4, 4);  // padded 12
  CHECK_THROWS_WITH_AS(pack(g), doctest::Contains("multiple of 8"),
                       std::invalid_argument);
}

TEST_CASE("packed step rejects a halo too small for its word gathers") {
  const LtlRule wide = parse_ltl_rule("R9,C2,M0,S108..181,B100..140,NM");
  PackedGrid p = pack(make_grid(8, 8));  // padded 24
  fill_periodic_halo(p);
  PackedGrid out = p;
  CHECK_THROWS_WITH_AS(pack_step(p, wide, out), doctest::Contains(">= 16"),
                       std::invalid_argument);

  const LtlRule narrow = parse_ltl_rule("R1,C2,M0,S2..3,B3..3,NM");
  PackedGrid tiny = pack(make_grid(8, 4));  // padded 16, halo 4 < 8
  fill_periodic_halo(tiny);
  PackedGrid tiny_out = tiny;
  CHECK_THROWS_WITH_AS(pack_step(tiny, narrow, tiny_out),
                       doctest::Contains(">= 8"), std::invalid_argument);
}

TEST_CASE("engines demand a filled halo and row-major layout") {
  const LtlRule gol = parse_ltl_rule("R1,C2,M0,S2..3,B3..3,NM");
  Grid grid = init_random(16, 0.5, 4);
  Grid out = make_grid(16, 16);
  CHECK_THROWS_AS(base_step(grid, gol, out), std::logic_error);

  PackedGrid packed = pack(grid);
  PackedGrid pout = packed;
  CHECK_THROWS_AS(pack_step(packed, gol, pout), std::logic_error);

  fill_periodic_halo(grid);
  const Grid frag = to_fragment_layout(grid);
  CHECK_THROWS_AS(base_step(frag, gol, out), std::invalid_argument);

  Grid small_out = make_grid(32, 16);
  CHECK_THROWS_AS(base_step(grid, gol, small_out), std::invalid_argument);
}

TEST_CASE("zero steps return the input, negative steps are rejected") {
  const LtlRule gol = parse_ltl_rule("R1,C2,M0,S2..3,B3..3,NM");
  const Grid start = init_random(16, 0.5, 11);
  CHECK(simulate_base(start, gol, 0).cells == start.cells);
  CHECK(simulate_packed(pack(start), gol, 0).words == pack(start).words);
  CHECK_THROWS_AS(simulate_base(start, gol, -1), std::invalid_argument);
  CHECK_THROWS_AS(simulate_packed(pack(start), gol, -1),
                  std::invalid_argument);
}
