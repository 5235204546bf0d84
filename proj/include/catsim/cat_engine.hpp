#pragma once

#include <cstdint>
#include <vector>

#include "catsim/fragment.hpp"
#include "catsim/grid.hpp"
#include "catsim/rule.hpp"

namespace catsim {

// Engine configuration. Tiles of tile_w x tile_h fragments are independent
// work items inside each phase; any tile shape and worker count yields
// byte-identical grids because every value is an exact integer and tiles
// write disjoint fragments.
struct CatConfig {
  int f = kDefaultFragmentSide;  // fragment side, one of 4/8/16
  int tile_w = 1;
  int tile_h = 14;
  NeighborhoodKind kind = NeighborhoodKind::Moore;
  int workers = 1;
  // Test hook: corrupts one pi2 entry so downstream verification must flag a
  // mismatch. Never set outside fault-injection tests.
  bool inject_band_fault = false;
};

// Optional per-run instrumentation. MMA counts are attributed to the
// destination fragment; max_h / max_r accumulate across steps.
struct CatStats {
  long long mma_count = 0;
  long long steps = 0;
  int32_t max_h = 0;
  int32_t max_r = 0;
  int fragments_per_row = 0;
  // Per padded fragment coordinate (fi * fragments_per_row + fj), MMAs issued
  // during the most recent step.
  std::vector<uint32_t> mma_per_fragment;
};

// Phase 1: horizontal window sums as three banded MMAs per fragment, for all
// fragment rows (halo rows included) and interior fragment columns.
IntField horizontal_step(const Grid& grid, const BandFragments& bands,
                         const CatConfig& cfg, CatStats* stats = nullptr);

// Phase 2, Moore: full box sums from the horizontal field, three banded MMAs
// per interior fragment.
IntField vertical_step_moore(const IntField& h, const BandFragments& bands,
                             const CatConfig& cfg, CatStats* stats = nullptr);

// Phase 2, simplified Von Neumann: vertical window sums over the cells, with
// the horizontal field fragment seeding the accumulator. Still exactly three
// MMAs per interior fragment; the center ends up counted twice.
IntField vertical_step_von_neumann(const Grid& grid, const IntField& h,
                                   const BandFragments& bands,
                                   const CatConfig& cfg,
                                   CatStats* stats = nullptr);

// One full generation: halo fill, both MMA phases, then the rule applied per
// cell. `grid` keeps its interior but gets a refreshed halo; `out` receives
// the next generation (halo left stale).
void simulate_step(Grid& grid, const LtlRule& rule, const CatConfig& cfg,
                   Grid& out, CatStats* stats = nullptr);

// Runs `steps` generations, ping-ponging two buffers. steps = 0 returns the
// input unchanged.
Grid simulate(Grid grid, const LtlRule& rule, const CatConfig& cfg, int steps,
              CatStats* stats = nullptr);

}  // namespace catsim
