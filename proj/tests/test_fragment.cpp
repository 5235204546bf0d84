#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "catsim/fragment.hpp"
#include "catsim/grid.hpp"

using namespace catsim;

namespace {

// Independent reference product: different loop order, separate accumulator.
Fragment naive_mma(const Fragment& a, const Fragment& b, const Fragment& c) {
  Fragment d(a.side);
  for (int i = 0; i < a.side; ++i)
    for (int j = 0; j < a.side; ++j) {
      long long acc = c.at(i, j);
      for (int k = 0; k < a.side; ++k)
        acc += static_cast<long long>(a.at(i, k)) * b.at(k, j);
      d.at(i, j) = static_cast<int32_t>(acc);
    }
  return d;
}

Fragment random_fragment(int side, SplitMix64& rng, int span) {
  Fragment out(side);
  for (auto& v : out.data)
    v = static_cast<int32_t>(rng.next() % (2 * span + 1)) - span;
  return out;
}

int count_ones(const Fragment& frag) {
  int ones = 0;
  for (const auto v : frag.data) ones += v == 1 ? 1 : 0;
  return ones;
}

}  // namespace

TEST_CASE("mma worked example, f=2") {
  Fragment a(2), c(2);
  a.data = {1, 2, 3, 4};
  c.data = {1, 1, 1, 1};
  const Fragment d = mma(a, identity_fragment(2), c);
  CHECK(d.data == std::vector<int32_t>{2, 3, 4, 5});
}

TEST_CASE("mma identity and zero accumulator") {
  SplitMix64 rng(17);
  const Fragment a = random_fragment(16, rng, 50);
  const Fragment d = mma(a, identity_fragment(16), Fragment(16));
  CHECK(d.data == a.data);
  const Fragment e = mma(identity_fragment(16), a, Fragment(16));
  CHECK(e.data == a.data);
}

TEST_CASE("mma agrees with the naive reference") {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Fragment a = random_fragment(4, rng, 30);
    const Fragment b = random_fragment(4, rng, 30);
    const Fragment c = random_fragment(4, rng, 30);
    CHECK(mma(a, b, c).data == naive_mma(a, b, c).data);
  }
  for (int trial = 0; trial < 10; ++trial) {
    const Fragment a = random_fragment(16, rng, 20);
    const Fragment b = random_fragment(16, rng, 20);
    const Fragment c = random_fragment(16, rng, 20);
    CHECK(mma(a, b, c).data == naive_mma(a, b, c).data);
  }
}

TEST_CASE("mma rejects mismatched shapes") {
  CHECK_THROWS_AS(mma(Fragment(4), Fragment(8), Fragment(4)),
                  std::invalid_argument);
  CHECK_THROWS_AS(mma(Fragment(4), Fragment(4), Fragment(8)),
                  std::invalid_argument);
  CHECK_THROWS_AS(mma(Fragment(0), Fragment(0), Fragment(0)),
                  std::invalid_argument);
}

TEST_CASE("band fragments, f=4 r=1: tridiagonal plus single wedge cells") {
  const BandFragments bands = gen_band_fragments(4, 1);
  CHECK(count_ones(bands.pi2) == 10);  // 4 diagonal + 3 + 3 off-diagonal
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      CHECK(bands.pi2.at(a, b) == (std::abs(a - b) <= 1 ? 1 : 0));
  CHECK(count_ones(bands.pi1) == 1);
  CHECK(bands.pi1.at(3, 0) == 1);  // lower-left corner
  CHECK(count_ones(bands.pi3) == 1);
  CHECK(bands.pi3.at(0, 3) == 1);  // upper-right corner
}

TEST_CASE("band fragments, f=16 r=16: full block and triangular wedges") {
  const BandFragments bands = gen_band_fragments(16, 16);
  CHECK(count_ones(bands.pi2) == 256);
  for (int a = 0; a < 16; ++a)
    for (int b = 0; b < 16; ++b) {
      CHECK(bands.pi1.at(a, b) == (a >= b ? 1 : 0));
      CHECK(bands.pi3.at(a, b) == (b >= a ? 1 : 0));
    }
}

TEST_CASE("band fragments, f=16 r=8: wedge sizes") {
  const BandFragments bands = gen_band_fragments(16, 8);
  // a - b >= 8 has 8+7+...+1 = 36 solutions in a 16x16 block.
  CHECK(count_ones(bands.pi1) == 36);
  CHECK(count_ones(bands.pi3) == 36);
  for (int a = 0; a < 16; ++a)
    for (int b = 0; b < 16; ++b)
      CHECK(bands.pi2.at(a, b) == (std::abs(a - b) <= 8 ? 1 : 0));
}

TEST_CASE("block-tridiagonal assembly reproduces the banded matrix") {
  for (const int f : {4, 8, 16})
    for (int r = 1; r <= f; ++r) {
      const BandFragments bands = gen_band_fragments(f, r);
      const int nb = 4;  // blocks per side
      const int n = nb * f;
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
          const int bi = x / f, bj = y / f, a = x % f, b = y % f;
          int assembled = 0;
          if (bi == bj)
            assembled = bands.pi2.at(a, b);
          else if (bi + 1 == bj)
            assembled = bands.pi1.at(a, b);  // super-diagonal block
          else if (bi == bj + 1)
            assembled = bands.pi3.at(a, b);  // sub-diagonal block
          const int direct = std::abs(x - y) <= r ? 1 : 0;
          REQUIRE(assembled == direct);
        }
    }
}

TEST_CASE("band generation rejects out-of-range radii") {
  CHECK_THROWS_AS(gen_band_fragments(16, 0), std::invalid_argument);
  CHECK_THROWS_AS(gen_band_fragments(16, 17), std::invalid_argument);
  CHECK_THROWS_AS(gen_band_fragments(4, 5), std::invalid_argument);
}

TEST_CASE("half-precision exactness bound") {
  CHECK(fp16_exactness_bound(1, NeighborhoodKind::Moore) == 9);
  CHECK(fp16_exactness_bound(16, NeighborhoodKind::Moore) == 1089);
  CHECK(fp16_exactness_bound(16, NeighborhoodKind::VonNeumannSimplified) ==
        66);
  for (int r = 1; r <= 16; ++r) {
    CHECK(fp16_exactness_bound(r, NeighborhoodKind::Moore) <= 2048);
    CHECK(fp16_exactness_bound(r, NeighborhoodKind::VonNeumannSimplified) <=
          2048);
  }
  CHECK_THROWS_AS(fp16_exactness_bound(0, NeighborhoodKind::Moore),
                  std::invalid_argument);
  CHECK_THROWS_AS(fp16_exactness_bound(17, NeighborhoodKind::Moore),
                  std::invalid_argument);
}
