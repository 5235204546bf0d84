#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace catsim {

// Analytical GPU cost model for one simulation step, in cycles. Defaults are
// the reference hardware profile; every field can be overridden from
// key=value text (see apply_override).
struct CostParams {
  double mem_global = 6.0;      // C: global/L2 access cost
  double mem_cache = 1.0;       // c: shared-memory/L1 access cost
  int frag_p = 16;              // p: fragment rows
  int frag_q = 16;              // q: fragment cols
  double mma_cycles = 16.0;     // tau: one-cycle executions per MMA
  int cores_per_sm = 128;       // P_sm: FP32 cores per SM
  int tc_per_sm = 4;            // Z_sm: tensor cores per SM
  double rule_cost = 20.0;      // delta: cycles per cell-rule evaluation
  int tile_w = 1;               // w: fragments per tile, horizontal
  int tile_h = 14;              // h: fragments per tile, vertical
  int num_sms = 144;            // P: streaming multiprocessors on the chip
  double tile_efficiency = 1.0; // E: effective tiles in flight per SM
};

void validate(const CostParams& p);  // positivity, E >= 1, C > c

// Single-fragment phase costs.
double time_fh(const CostParams& p);  // horizontal fragment: 3C + 3tau + 4c
double time_fr(const CostParams& p);  // reduction fragment: 6c + 3tau + C

// Per-tile phase costs (ceilings model tensor-core scheduling granularity).
double time_tile_h(const CostParams& p);
double time_tile_r(const CostParams& p);
double time_f_stage(const CostParams& p);  // per-cell rule stage
double time_band(const CostParams& p);     // one band fragment load
double time_tile(const CostParams& p);     // full tile: 3 bands + E-scaled phases

// Per-cell cost of the naive per-cell reference on the same hardware.
double t_ref_cell(const CostParams& p, int r);

// Absolute step costs for an n x n grid (n need not divide evenly; ceilings
// apply). Both scale linearly in n^2 once the ceilings are exact.
double t_cat(const CostParams& p, long long n);
double t_ref(const CostParams& p, long long n, int r);

// Asymptotic speedup of the banded engine over the per-cell reference as
// n -> infinity (the outer ceilings cancel; the number of SMs drops out).
double speedup_limit(const CostParams& p, int r);

// Tile efficiency E that makes speedup_limit hit the target. E enters
// time_tile linearly, so the solve is closed-form. Solutions below 1 are
// infeasible (an SM cannot run a fractional tile slower than serial issue).
double derive_e(const CostParams& p, int r, double target_speedup);

// key=value override; keys follow the parameter symbols:
//   C c p q tau P_sm Z_sm delta w h P E
void apply_override(CostParams& p, std::string_view key,
                    std::string_view value);
void apply_override_line(CostParams& p, std::string_view line);  // "key=value"

struct Scenario {
  std::string name;
  std::vector<std::pair<std::string, std::string>> overrides;
};

struct SpeedupTable {
  std::vector<int> radii;
  std::vector<std::string> scenario_names;
  std::vector<std::vector<double>> speedups;  // [scenario][radius]
};

// The published six-scenario study: baseline chip, more tensor cores, faster
// tensor cores, more FP cores, square tiles, expensive rule. Tile efficiency
// is calibrated from two anchor measurements: 1.20x at r=1 for 1x14 tiles and
// 14.8x at r=16 for 16x16 tiles.
std::vector<Scenario> reference_scenarios(const CostParams& base);

SpeedupTable scenario_table(const CostParams& base,
                            const std::vector<Scenario>& scenarios,
                            const std::vector<int>& radii);

std::string format_table_text(const SpeedupTable& table);
std::string format_table_csv(const SpeedupTable& table);

}  // namespace catsim
