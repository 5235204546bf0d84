#include "catsim/cost_model.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace catsim {

namespace {

long long ceil_div(long long a, long long b) { return (a + b - 1) / b; }

[[noreturn]] void bad_params(const std::string& why) {
  throw std::invalid_argument("cost model: " + why);
}

}  // namespace

void validate(const CostParams& p) {
  if (p.mem_cache <= 0 || p.mem_global <= 0) bad_params("memory costs must be positive");
  if (p.mem_global <= p.mem_cache)
    bad_params("global access cost C must exceed cache cost c");
  if (p.frag_p <= 0 || p.frag_q <= 0) bad_params("fragment shape must be positive");
  if (p.mma_cycles <= 0) bad_params("tau must be positive");
  if (p.cores_per_sm <= 0 || p.tc_per_sm <= 0 || p.num_sms <= 0)
    bad_params("hardware unit counts must be positive");
  if (p.rule_cost <= 0) bad_params("delta must be positive");
  if (p.tile_w <= 0 || p.tile_h <= 0) bad_params("tile shape must be positive");
  if (p.tile_efficiency < 1.0)
    bad_params("tile efficiency E must be >= 1");
}

double time_fh(const CostParams& p) {
  // Three band loads from cache feed three MMAs; the fragment itself moves
  // through global memory (load + store) plus a cache spill of the seed.
  return 3 * p.mem_global + 3 * p.mma_cycles + 4 * p.mem_cache;
}

double time_fr(const CostParams& p) {
  // Operands are already cache-resident; only the result goes to global.
  return 6 * p.mem_cache + 3 * p.mma_cycles + p.mem_global;
}

double time_tile_h(const CostParams& p) {
  // Horizontal phase covers the tile plus one fragment row above and below.
  const long long frags =
      static_cast<long long>(p.tile_w) * (p.tile_h + 2);
  return static_cast<double>(ceil_div(frags, p.tc_per_sm)) * time_fh(p);
}

double time_tile_r(const CostParams& p) {
  const long long frags = static_cast<long long>(p.tile_w) * p.tile_h;
  return static_cast<double>(ceil_div(frags, p.tc_per_sm)) * time_fr(p);
}

double time_f_stage(const CostParams& p) {
  const long long cells = static_cast<long long>(p.tile_w) * p.tile_h *
                          p.frag_p * p.frag_q;
  return (p.rule_cost + 3 * p.mem_global) *
         static_cast<double>(ceil_div(cells, p.cores_per_sm));
}

double time_band(const CostParams& p) {
  return p.mem_cache *
         static_cast<double>(
             ceil_div(static_cast<long long>(p.frag_p) * p.frag_q,
                      p.cores_per_sm));
}

double time_tile(const CostParams& p) {
  validate(p);
  return 3 * time_band(p) +
         p.tile_efficiency * (time_tile_h(p) + time_tile_r(p) + time_f_stage(p));
}

double t_ref_cell(const CostParams& p, int r) {
  const double w = 2.0 * r + 1.0;
  // (1+2r)^2 neighborhood loads at global cost, (1+2r)^2 - 1 additions,
  // delta for the rule, one store.
  return w * w * p.mem_global + (w * w - 1.0) + p.rule_cost + p.mem_global;
}

double t_cat(const CostParams& p, long long n) {
  const long long cells_per_tile = static_cast<long long>(p.frag_p) *
                                   p.frag_q * p.tile_w * p.tile_h;
  const long long waves = ceil_div(n * n, cells_per_tile * p.num_sms);
  return static_cast<double>(waves) * time_tile(p);
}

double t_ref(const CostParams& p, long long n, int r) {
  validate(p);
  const long long waves =
      ceil_div(n * n, static_cast<long long>(p.num_sms) * p.cores_per_sm);
  return static_cast<double>(waves) * t_ref_cell(p, r);
}

double speedup_limit(const CostParams& p, int r) {
  const double cells_per_tile = static_cast<double>(p.frag_p) * p.frag_q *
                                p.tile_w * p.tile_h;
  return (cells_per_tile / p.cores_per_sm) * t_ref_cell(p, r) / time_tile(p);
}

double derive_e(const CostParams& p, int r, double target_speedup) {
  if (target_speedup <= 0)
    throw std::invalid_argument("cost model: target speedup must be positive");
  CostParams checked = p;
  checked.tile_efficiency = 1.0;  // E is the unknown; ignore the input value
  validate(checked);
  const double cells_per_tile = static_cast<double>(p.frag_p) * p.frag_q *
                                p.tile_w * p.tile_h;
  const double phases = time_tile_h(p) + time_tile_r(p) + time_f_stage(p);
  const double e = ((cells_per_tile / p.cores_per_sm) * t_ref_cell(p, r) /
                        target_speedup -
                    3 * time_band(p)) /
                   phases;
  if (e < 1.0 - 1e-9)
    throw std::invalid_argument(
        "cost model: infeasible target speedup (solved E = " +
        std::to_string(e) + " < 1)");
  return e;
}

void apply_override(CostParams& p, std::string_view key,
                    std::string_view value) {
  double num = 0.0;
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), num);
  if (ec != std::errc() || ptr != value.data() + value.size())
    throw std::invalid_argument("cost model: bad value '" +
                                std::string(value) + "' for key '" +
                                std::string(key) + "'");
  const auto as_int = [&](const char* name) {
    const int i = static_cast<int>(num);
    if (static_cast<double>(i) != num)
      throw std::invalid_argument(std::string("cost model: key '") + name +
                                  "' needs an integer value");
    return i;
  };
  if (key == "C") p.mem_global = num;
  else if (key == "c") p.mem_cache = num;
  else if (key == "p") p.frag_p = as_int("p");
  else if (key == "q") p.frag_q = as_int("q");
  else if (key == "tau") p.mma_cycles = num;
  else if (key == "P_sm") p.cores_per_sm = as_int("P_sm");
  else if (key == "Z_sm") p.tc_per_sm = as_int("Z_sm");
  else if (key == "delta") p.rule_cost = num;
  else if (key == "w") p.tile_w = as_int("w");
  else if (key == "h") p.tile_h = as_int("h");
  else if (key == "P") p.num_sms = as_int("P");
  else if (key == "E") p.tile_efficiency = num;
  else
    throw std::invalid_argument("cost model: unknown parameter key '" +
                                std::string(key) + "'");
}

void apply_override_line(CostParams& p, std::string_view line) {
  const auto eq = line.find('=');
  if (eq == std::string_view::npos)
    throw std::invalid_argument("cost model: override '" + std::string(line) +
                                "' is not key=value");
  apply_override(p, line.substr(0, eq), line.substr(eq + 1));
}

std::vector<Scenario> reference_scenarios(const CostParams& base) {
  // Calibrate tile efficiency against the two anchor speedups.
  CostParams narrow = base;
  narrow.tile_w = 1;
  narrow.tile_h = 14;
  const double e_narrow = derive_e(narrow, 1, 1.20);
  CostParams square = base;
  square.tile_w = 16;
  square.tile_h = 16;
  const double e_square = derive_e(square, 16, 14.8);

  // %.17g survives the text round-trip without losing the double.
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", e_narrow);
  const std::string en = buf;
  std::snprintf(buf, sizeof buf, "%.17g", e_square);
  const std::string es = buf;
  return {
      {"GH100 Chip", {{"E", en}}},
      {"More TC Units", {{"Z_sm", "16"}, {"E", en}}},
      {"Faster TC Units", {{"tau", "1"}, {"E", en}}},
      {"More FP Units", {{"P_sm", "512"}, {"E", en}}},
      {"Regular Tiles", {{"w", "16"}, {"h", "16"}, {"E", es}}},
      {"Expensive f()", {{"delta", "1000"}, {"E", en}}},
  };
}

SpeedupTable scenario_table(const CostParams& base,
                            const std::vector<Scenario>& scenarios,
                            const std::vector<int>& radii) {
  SpeedupTable table;
  table.radii = radii;
  for (const Scenario& sc : scenarios) {
    CostParams p = base;
    for (const auto& [key, value] : sc.overrides)
      apply_override(p, key, value);
    std::vector<double> row;
    row.reserve(radii.size());
    for (const int r : radii) row.push_back(speedup_limit(p, r));
    table.scenario_names.push_back(sc.name);
    table.speedups.push_back(std::move(row));
  }
  return table;
}

std::string format_table_text(const SpeedupTable& table) {
  std::string out = "speedup limit vs per-cell reference (n -> inf)\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%-18s", "scenario");
  out += buf;
  for (const int r : table.radii) {
    std::snprintf(buf, sizeof buf, "  r=%-7d", r);
    out += buf;
  }
  out += '\n';
  for (std::size_t s = 0; s < table.scenario_names.size(); ++s) {
    std::snprintf(buf, sizeof buf, "%-18s", table.scenario_names[s].c_str());
    out += buf;
    for (const double v : table.speedups[s]) {
      std::snprintf(buf, sizeof buf, "  %-9.2f", v);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

std::string format_table_csv(const SpeedupTable& table) {
  std::string out = "scenario";
  for (const int r : table.radii) out += ",r=" + std::to_string(r);
  out += '\n';
  char buf[32];
  for (std::size_t s = 0; s < table.scenario_names.size(); ++s) {
    out += table.scenario_names[s];
    for (const double v : table.speedups[s]) {
      std::snprintf(buf, sizeof buf, ",%.6g", v);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace catsim
