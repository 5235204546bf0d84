#include "catsim/fragment.hpp"

#include <stdexcept>
#include <string>

namespace catsim {

Fragment identity_fragment(int side) {
  Fragment out(side);
  for (int i = 0; i < side; ++i) out.at(i, i) = 1;
  return out;
}

Fragment mma(const Fragment& a, const Fragment& b, const Fragment& acc) {
  if (a.side != b.side || a.side != acc.side || a.side <= 0)
    throw std::invalid_argument(
        "fragment shape mismatch: mma needs three equal square sides");
  Fragment d = acc;
  detail::mma_accum(a.data.data(), b.data.data(), d.data.data(), a.side);
  return d;
}

BandFragments gen_band_fragments(int f, int r) {
  if (f <= 0) throw std::invalid_argument("unsupported fragment side");
  if (r < 1 || r > f)
    throw std::invalid_argument("unsupported radius r=" + std::to_string(r) +
                                " for fragment side f=" + std::to_string(f));
  BandFragments bands;
  bands.f = f;
  bands.r = r;
  bands.pi1 = Fragment(f);
  bands.pi2 = Fragment(f);
  bands.pi3 = Fragment(f);
  for (int a = 0; a < f; ++a)
    for (int b = 0; b < f; ++b) {
      if (a - b >= f - r) bands.pi1.at(a, b) = 1;
      if (a - b <= r && b - a <= r) bands.pi2.at(a, b) = 1;
      if (b - a >= f - r) bands.pi3.at(a, b) = 1;
    }
  return bands;
}

int fp16_exactness_bound(int r, NeighborhoodKind kind) {
  if (r < kMinRadius || r > kMaxRadius)
    throw std::invalid_argument("unsupported radius r=" + std::to_string(r));
  const int w = 2 * r + 1;
  return kind == NeighborhoodKind::Moore ? w * w : 2 * w;
}

}  // namespace catsim
