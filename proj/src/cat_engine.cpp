#include "catsim/cat_engine.hpp"

#include <algorithm>
#include <atomic>
#include <cstring>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>

namespace catsim {

namespace {

// Rectangle of fragment coordinates, [i0, i1) x [j0, j1).
struct TileRange {
  int i0, i1, j0, j1;
};

std::vector<TileRange> make_tiles(int i0, int i1, int j0, int j1, int tile_h,
                                  int tile_w) {
  std::vector<TileRange> tiles;
  for (int i = i0; i < i1; i += tile_h)
    for (int j = j0; j < j1; j += tile_w)
      tiles.push_back(
          {i, std::min(i + tile_h, i1), j, std::min(j + tile_w, j1)});
  return tiles;
}

// Runs fn(tile) across `workers` threads. Tile order is irrelevant: tiles
// write disjoint fragments. Exceptions are rethrown on the caller thread.
template <typename Fn>
void run_tiles(const std::vector<TileRange>& tiles, int workers, Fn&& fn) {
  const int count = static_cast<int>(tiles.size());
  if (workers <= 1 || count <= 1) {
    for (const TileRange& t : tiles) fn(t);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto body = [&] {
    try {
      for (int t = next.fetch_add(1); t < count; t = next.fetch_add(1))
        fn(tiles[t]);
    } catch (...) {
      const std::lock_guard<std::mutex> lock(error_mu);
      if (!error) error = std::current_exception();
      next.store(count);  // drain remaining tiles
    }
  };
  std::vector<std::thread> pool;
  const int spawn = std::min(workers, count);
  pool.reserve(spawn);
  for (int w = 0; w < spawn; ++w) pool.emplace_back(body);
  for (std::thread& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

// Thread-safe accumulation into CatStats; per-fragment counters are written
// directly since fragments belong to exactly one tile.
struct StatsSink {
  CatStats* stats;
  std::mutex mu;

  void add(long long mmas, int32_t local_max_h, int32_t local_max_r) {
    if (!stats) return;
    const std::lock_guard<std::mutex> lock(mu);
    stats->mma_count += mmas;
    stats->max_h = std::max(stats->max_h, local_max_h);
    stats->max_r = std::max(stats->max_r, local_max_r);
  }
};

void reset_per_fragment(CatStats* stats, int fragments_per_row) {
  if (!stats) return;
  stats->fragments_per_row = fragments_per_row;
  stats->mma_per_fragment.assign(
      static_cast<std::size_t>(fragments_per_row) * fragments_per_row, 0);
}

void check_config(const CatConfig& cfg) {
  if (cfg.f != 4 && cfg.f != 8 && cfg.f != 16)
    throw std::invalid_argument("config error: fragment side must be 4, 8, or 16");
  if (cfg.tile_w < 1 || cfg.tile_h < 1)
    throw std::invalid_argument("config error: tile sides must be >= 1");
  if (cfg.workers < 1)
    throw std::invalid_argument("config error: workers must be >= 1");
}

void check_engine_grid(const Grid& grid, const BandFragments& bands,
                       const CatConfig& cfg) {
  check_config(cfg);
  if (grid.layout != Layout::FragmentContiguous)
    throw std::invalid_argument(
        "layout error: engine needs a fragment-contiguous grid");
  if (grid.f != cfg.f)
    throw std::invalid_argument("config error: grid fragment side " +
                                std::to_string(grid.f) +
                                " disagrees with config f " +
                                std::to_string(cfg.f));
  if (bands.f != grid.f)
    throw std::invalid_argument("config error: band fragments built for f=" +
                                std::to_string(bands.f));
  if (!grid.halo_valid)
    throw std::logic_error("sequencing error: periodic halo not filled");
}

std::size_t frag_offset(int fragments_per_row, int f, int fi, int fj) {
  return (static_cast<std::size_t>(fi) * fragments_per_row + fj) *
         (static_cast<std::size_t>(f) * f);
}

int32_t block_max(const int32_t* values, int count) {
  int32_t best = 0;
  for (int i = 0; i < count; ++i) best = std::max(best, values[i]);
  return best;
}

}  // namespace

IntField horizontal_step(const Grid& grid, const BandFragments& bands,
                         const CatConfig& cfg, CatStats* stats) {
  check_engine_grid(grid, bands, cfg);
  const int f = grid.f;
  const int fpr = grid.fragments_per_row();
  IntField h = make_field(grid.n, f, Layout::FragmentContiguous);
  reset_per_fragment(stats, fpr);
  StatsSink sink{stats, {}};

  const int32_t* pi1 = bands.pi1.data.data();
  const int32_t* pi2 = bands.pi2.data.data();
  const int32_t* pi3 = bands.pi3.data.data();
  const uint8_t* cells = grid.cells.data();
  int32_t* hv = h.values.data();
  const int fcells = f * f;

  // All fragment rows, interior fragment columns: vertical reduction later
  // reaches one halo fragment row above and below the interior.
  const auto tiles = make_tiles(0, fpr, 1, fpr - 1, cfg.tile_h, cfg.tile_w);
  run_tiles(tiles, cfg.workers, [&](const TileRange& t) {
    long long mmas = 0;
    int32_t local_max = 0;
    for (int i = t.i0; i < t.i1; ++i)
      for (int j = t.j0; j < t.j1; ++j) {
        int32_t* acc = hv + frag_offset(fpr, f, i, j);
        detail::mma_accum(cells + frag_offset(fpr, f, i, j - 1), pi1, acc, f);
        detail::mma_accum(cells + frag_offset(fpr, f, i, j), pi2, acc, f);
        detail::mma_accum(cells + frag_offset(fpr, f, i, j + 1), pi3, acc, f);
        if (stats) {
          mmas += 3;
          stats->mma_per_fragment[static_cast<std::size_t>(i) * fpr + j] += 3;
          local_max = std::max(local_max, block_max(acc, fcells));
        }
      }
    sink.add(mmas, local_max, 0);
  });
  h.valid = true;
  return h;
}

IntField vertical_step_moore(const IntField& h, const BandFragments& bands,
                             const CatConfig& cfg, CatStats* stats) {
  check_config(cfg);
  if (h.layout != Layout::FragmentContiguous)
    throw std::invalid_argument(
        "layout error: engine needs a fragment-contiguous field");
  if (!h.valid)
    throw std::logic_error(
        "sequencing error: horizontal field not yet computed");
  if (bands.f != h.f || h.f != cfg.f)
    throw std::invalid_argument("config error: fragment side mismatch");

  const int f = h.f;
  const int fpr = h.fragments_per_row();
  IntField red = make_field(h.n, f, Layout::FragmentContiguous);
  StatsSink sink{stats, {}};

  const int32_t* pi1 = bands.pi1.data.data();
  const int32_t* pi2 = bands.pi2.data.data();
  const int32_t* pi3 = bands.pi3.data.data();
  const int32_t* hv = h.values.data();
  int32_t* rv = red.values.data();
  const int fcells = f * f;

  const auto tiles =
      make_tiles(1, fpr - 1, 1, fpr - 1, cfg.tile_h, cfg.tile_w);
  run_tiles(tiles, cfg.workers, [&](const TileRange& t) {
    long long mmas = 0;
    int32_t local_max = 0;
    for (int i = t.i0; i < t.i1; ++i)
      for (int j = t.j0; j < t.j1; ++j) {
        int32_t* acc = rv + frag_offset(fpr, f, i, j);
        detail::mma_accum(pi3, hv + frag_offset(fpr, f, i - 1, j), acc, f);
        detail::mma_accum(pi2, hv + frag_offset(fpr, f, i, j), acc, f);
        detail::mma_accum(pi1, hv + frag_offset(fpr, f, i + 1, j), acc, f);
        if (stats) {
          mmas += 3;
          stats->mma_per_fragment[static_cast<std::size_t>(i) * fpr + j] += 3;
          local_max = std::max(local_max, block_max(acc, fcells));
        }
      }
    sink.add(mmas, 0, local_max);
  });
  red.valid = true;
  return red;
}

IntField vertical_step_von_neumann(const Grid& grid, const IntField& h,
                                   const BandFragments& bands,
                                   const CatConfig& cfg, CatStats* stats) {
  check_engine_grid(grid, bands, cfg);
  if (h.layout != Layout::FragmentContiguous || h.n != grid.n || h.f != grid.f)
    throw std::invalid_argument(
        "layout error: horizontal field does not match the grid");
  if (!h.valid)
    throw std::logic_error(
        "sequencing error: horizontal field not yet computed");

  const int f = grid.f;
  const int fpr = grid.fragments_per_row();
  IntField red = make_field(grid.n, f, Layout::FragmentContiguous);
  StatsSink sink{stats, {}};

  const int32_t* pi1 = bands.pi1.data.data();
  const int32_t* pi2 = bands.pi2.data.data();
  const int32_t* pi3 = bands.pi3.data.data();
  const uint8_t* cells = grid.cells.data();
  const int32_t* hv = h.values.data();
  int32_t* rv = red.values.data();
  const int fcells = f * f;

  const auto tiles =
      make_tiles(1, fpr - 1, 1, fpr - 1, cfg.tile_h, cfg.tile_w);
  run_tiles(tiles, cfg.workers, [&](const TileRange& t) {
    long long mmas = 0;
    int32_t local_max = 0;
    for (int i = t.i0; i < t.i1; ++i)
      for (int j = t.j0; j < t.j1; ++j) {
        int32_t* acc = rv + frag_offset(fpr, f, i, j);
        // Horizontal fragment seeds the accumulator of the first MMA.
        std::memcpy(acc, hv + frag_offset(fpr, f, i, j),
                    static_cast<std::size_t>(fcells) * sizeof(int32_t));
        detail::mma_accum(pi3, cells + frag_offset(fpr, f, i - 1, j), acc, f);
        detail::mma_accum(pi2, cells + frag_offset(fpr, f, i, j), acc, f);
        detail::mma_accum(pi1, cells + frag_offset(fpr, f, i + 1, j), acc, f);
        if (stats) {
          mmas += 3;
          stats->mma_per_fragment[static_cast<std::size_t>(i) * fpr + j] += 3;
          local_max = std::max(local_max, block_max(acc, fcells));
        }
      }
    sink.add(mmas, 0, local_max);
  });
  red.valid = true;
  return red;
}

void simulate_step(Grid& grid, const LtlRule& rule, const CatConfig& cfg,
                   Grid& out, CatStats* stats) {
  check_config(cfg);
  if (&grid == &out)
    throw std::invalid_argument("config error: in-place step not supported");
  if (rule.kind != cfg.kind)
    throw std::invalid_argument(
        "config error: rule kind disagrees with engine config");
  if (grid.layout != Layout::FragmentContiguous ||
      out.layout != Layout::FragmentContiguous)
    throw std::invalid_argument(
        "layout error: engine needs fragment-contiguous grids");
  if (out.n != grid.n || out.f != grid.f)
    throw std::invalid_argument("geometry error: output grid shape mismatch");

  fill_periodic_halo(grid);
  BandFragments bands = gen_band_fragments(grid.f, rule.r);
  if (cfg.inject_band_fault) bands.pi2.at(0, 0) ^= 1;

  const IntField h = horizontal_step(grid, bands, cfg, stats);
  const IntField red =
      cfg.kind == NeighborhoodKind::Moore
          ? vertical_step_moore(h, bands, cfg, stats)
          : vertical_step_von_neumann(grid, h, bands, cfg, stats);

  const int f = grid.f;
  const int fpr = grid.fragments_per_row();
  const int fcells = f * f;
  const int mult = cfg.kind == NeighborhoodKind::Moore ? 1 : 2;
  const uint8_t* in_cells = grid.cells.data();
  const int32_t* rv = red.values.data();
  uint8_t* out_cells = out.cells.data();

  const auto tiles =
      make_tiles(1, fpr - 1, 1, fpr - 1, cfg.tile_h, cfg.tile_w);
  run_tiles(tiles, cfg.workers, [&](const TileRange& t) {
    for (int i = t.i0; i < t.i1; ++i)
      for (int j = t.j0; j < t.j1; ++j) {
        const std::size_t base = frag_offset(fpr, f, i, j);
        for (int k = 0; k < fcells; ++k)
          out_cells[base + k] = apply_transition(
              in_cells[base + k], rv[base + k], rule, mult);
      }
  });
  out.halo_valid = false;
  if (stats) ++stats->steps;
}

Grid simulate(Grid grid, const LtlRule& rule, const CatConfig& cfg, int steps,
              CatStats* stats) {
  if (steps < 0)
    throw std::invalid_argument("config error: steps must be >= 0");
  if (steps == 0) return grid;
  Grid buffer = make_grid(grid.n, grid.f, Layout::FragmentContiguous);
  Grid* cur = &grid;
  Grid* nxt = &buffer;
  for (int s = 0; s < steps; ++s) {
    simulate_step(*cur, rule, cfg, *nxt, stats);
    std::swap(cur, nxt);
  }
  return std::move(*cur);
}

}  // namespace catsim
