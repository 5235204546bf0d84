#include "catsim/reference.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace catsim {

namespace {

void check_base_inputs(const Grid& grid, const Grid& out) {
  if (grid.layout != Layout::RowMajor || out.layout != Layout::RowMajor)
    throw std::invalid_argument("layout error: expected row-major grids");
  if (!grid.halo_valid)
    throw std::logic_error("sequencing error: periodic halo not filled");
  if (out.n != grid.n || out.f != grid.f)
    throw std::invalid_argument("geometry error: output grid shape mismatch");
}

template <bool WithStats>
void base_step_impl(const Grid& grid, const LtlRule& rule, Grid& out,
                    BaseStats* stats) {
  const int n = grid.n, f = grid.f, p = grid.padded(), r = rule.r;
  const uint8_t* cells = grid.cells.data();
  uint8_t* dst = out.cells.data();
  const int w = 2 * r + 1;
  const bool moore = rule.kind == NeighborhoodKind::Moore;
  const int mult = moore ? 1 : 2;

  for (int y = f; y < f + n; ++y) {
    for (int x = f; x < f + n; ++x) {
      int sum = 0;
      if (moore) {
        for (int dy = -r; dy <= r; ++dy) {
          const uint8_t* row =
              cells + static_cast<std::size_t>(y + dy) * p + (x - r);
          for (int dx = 0; dx < w; ++dx) sum += row[dx];
          if constexpr (WithStats) stats->window_reads += w;
        }
      } else {
        const uint8_t* row = cells + static_cast<std::size_t>(y) * p + (x - r);
        for (int dx = 0; dx < w; ++dx) sum += row[dx];
        for (int dy = -r; dy <= r; ++dy)
          sum += cells[static_cast<std::size_t>(y + dy) * p + x];
        if constexpr (WithStats) stats->window_reads += 2 * w;
      }
      const uint8_t state = cells[static_cast<std::size_t>(y) * p + x];
      dst[static_cast<std::size_t>(y) * p + x] =
          apply_transition(state, sum, rule, mult);
      if constexpr (WithStats) {
        ++stats->cell_reads;
        ++stats->writes;
        ++stats->cells;
      }
    }
  }
}

void check_packed_geometry(const Grid& grid) {
  if (grid.padded() % 8 != 0)
    throw std::invalid_argument("geometry error: padded width " +
                                std::to_string(grid.padded()) +
                                " must be a multiple of 8 to pack");
}

}  // namespace

void base_step(const Grid& grid, const LtlRule& rule, Grid& out,
               BaseStats* stats) {
  check_base_inputs(grid, out);
  if (stats)
    base_step_impl<true>(grid, rule, out, stats);
  else
    base_step_impl<false>(grid, rule, out, nullptr);
  out.halo_valid = false;
}

Grid simulate_base(Grid grid, const LtlRule& rule, int steps,
                   BaseStats* stats) {
  if (steps < 0)
    throw std::invalid_argument("config error: steps must be >= 0");
  if (steps == 0) return grid;
  Grid buffer = make_grid(grid.n, grid.f, Layout::RowMajor);
  Grid* cur = &grid;
  Grid* nxt = &buffer;
  for (int s = 0; s < steps; ++s) {
    fill_periodic_halo(*cur);
    base_step(*cur, rule, *nxt, stats);
    std::swap(cur, nxt);
  }
  return std::move(*cur);
}

PackedGrid pack(const Grid& grid) {
  check_packed_geometry(grid);
  PackedGrid out;
  out.n = grid.n;
  out.f = grid.f;
  out.halo_valid = grid.halo_valid;
  out.words.assign(
      static_cast<std::size_t>(grid.padded()) * (grid.padded() / 8), 0);
  const int p = grid.padded();
  for (int y = 0; y < p; ++y)
    for (int wx = 0; wx < p / 8; ++wx) {
      uint64_t w = 0;
      for (int k = 0; k < 8; ++k)
        w |= uint64_t{grid.at(y, 8 * wx + k)} << (8 * k);
      out.words[static_cast<std::size_t>(y) * (p / 8) + wx] = w;
    }
  return out;
}

Grid unpack(const PackedGrid& packed) {
  Grid out = make_grid(packed.n, packed.f, Layout::RowMajor);
  const int p = packed.padded();
  for (int y = 0; y < p; ++y)
    for (int x = 0; x < p; ++x) out.at(y, x) = packed.cell(y, x);
  out.halo_valid = packed.halo_valid;
  return out;
}

void fill_periodic_halo(PackedGrid& packed) {
  const int n = packed.n, f = packed.f, p = packed.padded();
  if (n == 0) {
    packed.halo_valid = true;
    return;
  }
  for (int y = 0; y < p; ++y) {
    const bool y_halo = y < f || y >= f + n;
    const int sy = f + ((y - f) % n + n) % n;
    for (int x = 0; x < p; ++x) {
      if (!y_halo && x >= f && x < f + n) {
        x = f + n - 1;
        continue;
      }
      const int sx = f + ((x - f) % n + n) % n;
      packed.set_cell(y, x, packed.cell(sy, sx));
    }
  }
  packed.halo_valid = true;
}

void pack_step(const PackedGrid& packed, const LtlRule& rule,
               PackedGrid& out) {
  if (!packed.halo_valid)
    throw std::logic_error("sequencing error: periodic halo not filled");
  if (out.n != packed.n || out.f != packed.f)
    throw std::invalid_argument("geometry error: output grid shape mismatch");
  const int n = packed.n, f = packed.f, r = rule.r;
  const int wpr = packed.words_per_row();
  const int nw = (r + 7) / 8;  // neighbor words gathered per side
  if (f < 8 * nw)
    throw std::invalid_argument(
        "geometry error: halo " + std::to_string(f) +
        " too small for radius " + std::to_string(r) +
        " word gathers (needs >= " + std::to_string(8 * nw) + ")");

  const bool moore = rule.kind == NeighborhoodKind::Moore;
  const int mult = moore ? 1 : 2;
  const int center = 8 * nw;  // buffer index of lane 0
  const uint64_t* in = packed.words.data();
  uint64_t* dst = out.words.data();

  uint8_t buf[40];  // span <= 40 for r <= 16
  for (int y = f; y < f + n; ++y) {
    for (int wx = f / 8; wx < (f + n) / 8; ++wx) {
      int counts[8] = {0, 0, 0, 0, 0, 0, 0, 0};
      if (moore) {
        for (int dy = -r; dy <= r; ++dy) {
          const uint64_t* wrow =
              in + static_cast<std::size_t>(y + dy) * wpr + (wx - nw);
          for (int t = 0; t < 2 * nw + 1; ++t) {
            const uint64_t w = wrow[t];
            for (int b = 0; b < 8; ++b)
              buf[8 * t + b] = static_cast<uint8_t>((w >> (8 * b)) & 0xFF);
          }
          for (int k = 0; k < 8; ++k)
            for (int dx = -r; dx <= r; ++dx) counts[k] += buf[center + k + dx];
        }
      } else {
        const uint64_t* wrow =
            in + static_cast<std::size_t>(y) * wpr + (wx - nw);
        for (int t = 0; t < 2 * nw + 1; ++t) {
          const uint64_t w = wrow[t];
          for (int b = 0; b < 8; ++b)
            buf[8 * t + b] = static_cast<uint8_t>((w >> (8 * b)) & 0xFF);
        }
        for (int k = 0; k < 8; ++k)
          for (int dx = -r; dx <= r; ++dx) counts[k] += buf[center + k + dx];
        for (int dy = -r; dy <= r; ++dy) {
          const uint64_t w = in[static_cast<std::size_t>(y + dy) * wpr + wx];
          for (int k = 0; k < 8; ++k)
            counts[k] += static_cast<int>((w >> (8 * k)) & 0xFF);
        }
      }
      const uint64_t cw = in[static_cast<std::size_t>(y) * wpr + wx];
      uint64_t ow = 0;
      for (int k = 0; k < 8; ++k) {
        const auto state = static_cast<uint8_t>((cw >> (8 * k)) & 0xFF);
        ow |= uint64_t{apply_transition(state, counts[k], rule, mult)}
              << (8 * k);
      }
      dst[static_cast<std::size_t>(y) * wpr + wx] = ow;
    }
  }
  out.halo_valid = false;
}

PackedGrid simulate_packed(PackedGrid packed, const LtlRule& rule, int steps) {
  if (steps < 0)
    throw std::invalid_argument("config error: steps must be >= 0");
  if (steps == 0) return packed;
  PackedGrid buffer = packed;  // shape clone; contents overwritten
  PackedGrid* cur = &packed;
  PackedGrid* nxt = &buffer;
  for (int s = 0; s < steps; ++s) {
    fill_periodic_halo(*cur);
    pack_step(*cur, rule, *nxt);
    std::swap(cur, nxt);
  }
  return std::move(*cur);
}

}  // namespace catsim
