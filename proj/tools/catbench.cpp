// Command-line front end: run single simulations, cross-verify the engines,
// benchmark them, sweep tile shapes, and evaluate the analytical cost model.
#include <CLI11.hpp>

#include <charconv>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "catsim/bench.hpp"
#include "catsim/cost_model.hpp"
#include "catsim/engines.hpp"
#include "catsim/layout.hpp"
#include "catsim/snapshot.hpp"

using namespace catsim;

namespace {

[[noreturn]] void config_fail(const std::string& why) {
  throw std::invalid_argument("config error: " + why);
}

int parse_int_token(std::string_view tok) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    config_fail("bad integer '" + std::string(tok) + "'");
  return v;
}

// Comma list with ranges: "1,3-5,16" -> {1,3,4,5,16}. Empty text -> empty.
std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    const auto dash = tok.find('-', 1);
    if (dash == std::string::npos) {
      out.push_back(parse_int_token(tok));
    } else {
      const int a = parse_int_token(tok.substr(0, dash));
      const int b = parse_int_token(tok.substr(dash + 1));
      if (b < a) config_fail("descending range '" + tok + "'");
      for (int v = a; v <= b; ++v) out.push_back(v);
    }
  }
  return out;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(tok);
  return out;
}

// "4x4,1x14" -> {{4,4},{1,14}}
std::vector<std::pair<int, int>> parse_shape_list(const std::string& text) {
  std::vector<std::pair<int, int>> out;
  for (const std::string& tok : split_list(text)) {
    const auto x = tok.find('x');
    if (x == std::string::npos || x == 0 || x + 1 == tok.size())
      config_fail("bad tile shape '" + tok + "' (expected WxH)");
    out.emplace_back(parse_int_token(tok.substr(0, x)),
                     parse_int_token(tok.substr(x + 1)));
  }
  return out;
}

struct RuleChoice {
  LtlRule rule;
  double density = 0.25;
};

// Exactly one of --rule / --preset; the preset brings its published density.
RuleChoice resolve_rule(const std::string& rule_text,
                        const std::string& preset_name, double density,
                        bool density_set) {
  RuleChoice rc;
  if (!rule_text.empty() && !preset_name.empty())
    config_fail("--rule and --preset are mutually exclusive");
  if (!rule_text.empty()) {
    rc.rule = parse_ltl_rule(rule_text);
  } else {
    const std::string name = preset_name.empty() ? "life" : preset_name;
    const LtlPreset* preset = find_preset(name);
    if (!preset) {
      std::string known;
      for (const LtlPreset& p : ltl_presets()) {
        if (!known.empty()) known += ", ";
        known += p.name;
      }
      config_fail("unknown preset '" + name + "' (known: " + known + ")");
    }
    rc.rule = parse_ltl_rule(preset->rule);
    rc.density = preset->density;
  }
  if (density_set) rc.density = density;
  if (rc.density < 0.0 || rc.density > 1.0)
    config_fail("density must be in [0, 1]");
  return rc;
}

int round_up(int n, int f) { return (n + f - 1) / f * f; }

Grid make_initial(int n, int f, double density, uint64_t seed) {
  const int rounded = round_up(n, f);
  return init_random(rounded, density, seed, f, rounded == n ? -1 : n);
}

double time_run_ms(EngineKind kind, const Grid& initial, const LtlRule& rule,
                   const CatConfig& cfg, int steps, RunStats* stats = nullptr) {
  const auto t0 = std::chrono::steady_clock::now();
  const Grid out = run_engine(kind, initial, rule, cfg, steps, stats);
  const auto t1 = std::chrono::steady_clock::now();
  (void)out;
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

// Shared engine/geometry options.
struct EngineOpts {
  int f = kDefaultFragmentSide;
  int tile_w = 1;
  int tile_h = 14;
  int workers = 1;
};

void add_engine_opts(CLI::App* cmd, EngineOpts& opts) {
  cmd->add_option("--f", opts.f, "fragment side (4, 8, or 16)")
      ->check(CLI::IsMember({4, 8, 16}));
  cmd->add_option("--tile-w", opts.tile_w, "tile width in fragments");
  cmd->add_option("--tile-h", opts.tile_h, "tile height in fragments");
  cmd->add_option("--workers", opts.workers, "worker threads per phase")
      ->envname("CAT_WORKERS");
}

CatConfig make_config(const EngineOpts& opts, NeighborhoodKind kind) {
  CatConfig cfg;
  cfg.f = opts.f;
  cfg.tile_w = opts.tile_w;
  cfg.tile_h = opts.tile_h;
  cfg.workers = opts.workers;
  cfg.kind = kind;
  return cfg;
}

int cmd_run(const std::string& rule_text, const std::string& preset,
            double density, bool density_set, int n, int steps, uint64_t seed,
            const std::string& engine, const EngineOpts& opts,
            const std::string& out_path) {
  const RuleChoice rc = resolve_rule(rule_text, preset, density, density_set);
  const EngineKind kind = parse_engine(engine);
  const CatConfig cfg = make_config(opts, rc.rule.kind);
  const int rounded = round_up(n, opts.f);
  const Grid initial = make_initial(n, opts.f, rc.density, seed);

  RunStats stats;
  const auto t0 = std::chrono::steady_clock::now();
  const Grid final_grid = run_engine(kind, initial, rc.rule, cfg, steps, &stats);
  const auto t1 = std::chrono::steady_clock::now();
  const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

  std::cout << "engine " << engine_name(kind) << " rule "
            << format_ltl_rule(rc.rule) << " n " << rounded;
  if (rounded != n) std::cout << " (requested " << n << ", padded to fit f)";
  std::cout << " f " << opts.f << " steps " << steps << " seed " << seed
            << " density " << rc.density << '\n';
  std::cout << "alive " << count_alive(final_grid) << '\n';
  const double per_step = steps > 0 ? ms / steps : ms;
  char line[160];
  std::snprintf(line, sizeof line,
                "elapsed_ms %.3f ms_per_step %.4f cells_per_sec %.4g",
                ms, per_step,
                per_step > 0 ? static_cast<double>(rounded) * rounded *
                                   1000.0 / per_step
                             : 0.0);
  std::cout << line << '\n';
  if (kind == EngineKind::Cat)
    std::cout << "mma_count " << stats.cat.mma_count << " max_h "
              << stats.cat.max_h << " max_r " << stats.cat.max_r << '\n';
  if (kind == EngineKind::Base)
    std::cout << "memory_accesses " << stats.base.accesses() << '\n';
  if (!out_path.empty()) {
    snapshot_write(final_grid, out_path);
    std::cout << "snapshot " << out_path << '\n';
  }
  return 0;
}

int cmd_verify(const std::string& radii_text, const std::string& sizes_text,
               const std::string& seeds_text, const std::string& kinds_text,
               const std::string& steps_text, bool inject_fault,
               const EngineOpts& opts) {
  const std::vector<int> radii = parse_int_list(radii_text);
  const std::vector<int> sizes = parse_int_list(sizes_text);
  const std::vector<int> seeds = parse_int_list(seeds_text);
  const std::vector<int> steps_list = parse_int_list(steps_text);
  const std::vector<std::string> kinds = split_list(kinds_text);
  if (radii.empty() || sizes.empty() || seeds.empty() || steps_list.empty() ||
      kinds.empty()) {
    std::cout << "nothing to verify\n";
    return 0;
  }

  int pass = 0, fail = 0;
  for (const int r : radii) {
    if (r < 1 || r > 16) config_fail("radius must be in 1..16");
    for (const std::string& kind_name : kinds) {
      LtlRule rule;
      double density = 0.25;
      if (kind_name == "moore") {
        const LtlPreset& preset = ltl_presets()[static_cast<std::size_t>(r - 1)];
        rule = parse_ltl_rule(preset.rule);
        density = preset.density;
      } else if (kind_name == "vn") {
        rule = von_neumann_probe_rule(r);
      } else {
        config_fail("unknown kind '" + kind_name + "' (moore, vn)");
      }
      const bool pack_fits = opts.f >= 8 * ((r + 7) / 8);
      for (const int n : sizes)
        for (const int seed : seeds)
          for (const int steps : steps_list) {
            if (n % opts.f != 0)
              config_fail("size " + std::to_string(n) +
                          " is not a multiple of f");
            const Grid initial =
                make_initial(n, opts.f, density, static_cast<uint64_t>(seed));
            CatConfig cfg = make_config(opts, rule.kind);
            cfg.inject_band_fault = inject_fault;
            // A corrupted band may also trip the engine's negative-count
            // guard; an abort counts as detection, same as a diverged grid.
            std::optional<Grid> cat_out;
            std::string abort_reason;
            try {
              cat_out = run_engine(EngineKind::Cat, initial, rule, cfg, steps);
            } catch (const std::exception& ex) {
              if (!inject_fault) throw;
              abort_reason = ex.what();
            }
            cfg.inject_band_fault = false;
            const Grid base_out =
                run_engine(EngineKind::Base, initial, rule, cfg, steps);
            std::optional<CellCoord> diff;
            if (cat_out) diff = first_interior_difference(base_out, *cat_out);

            std::string label = "r=" + std::to_string(r) + " kind=" +
                                kind_name + " n=" + std::to_string(n) +
                                " seed=" + std::to_string(seed) +
                                " steps=" + std::to_string(steps);
            bool ok;
            if (inject_fault) {
              ok = !cat_out || diff.has_value();
              label += !ok ? " (fault missed)"
                           : !cat_out ? " (fault detected: engine aborted)"
                                      : " (fault detected: grid diverged)";
            } else {
              ok = !diff.has_value();
              if (ok && pack_fits) {
                const Grid pack_out =
                    run_engine(EngineKind::Pack, initial, rule, cfg, steps);
                const auto pd = first_interior_difference(base_out, pack_out);
                if (pd.has_value()) {
                  ok = false;
                  label += " pack first-diff=(" + std::to_string(pd->y) + "," +
                           std::to_string(pd->x) + ")";
                } else {
                  label += " engines=cat,base,pack";
                }
              } else if (ok) {
                label += " engines=cat,base";
              }
              if (!ok && diff.has_value()) {
                label += " first-diff=(" + std::to_string(diff->y) + "," +
                         std::to_string(diff->x) + ") base=" +
                         std::to_string(base_out.interior(diff->y, diff->x)) +
                         " cat=" +
                         std::to_string(cat_out->interior(diff->y, diff->x));
              }
            }
            std::cout << (ok ? "PASS " : "FAIL ") << label << '\n';
            ++(ok ? pass : fail);
          }
    }
  }
  std::cout << "verified " << (pass + fail) << " combinations: " << pass
            << " pass, " << fail << " fail\n";
  return fail == 0 ? 0 : 1;
}

int cmd_bench(const std::string& rule_text, const std::string& preset,
              double density, bool density_set, int n, int steps,
              uint64_t seed, const std::string& engines_text,
              int max_realizations, double target_stderr,
              const EngineOpts& opts, const std::string& csv_path) {
  const RuleChoice rc = resolve_rule(rule_text, preset, density, density_set);
  const CatConfig cfg = make_config(opts, rc.rule.kind);
  const Grid initial = make_initial(n, opts.f, rc.density, seed);
  const int rounded = round_up(n, opts.f);
  if (steps < 1) config_fail("bench needs steps >= 1");
  if (max_realizations < 3) config_fail("bench needs at least 3 realizations");

  std::ostringstream out;
  out << bench_csv_header() << '\n';
  for (const std::string& name : split_list(engines_text)) {
    const EngineKind kind = parse_engine(name);
    time_run_ms(kind, initial, rc.rule, cfg, 1);  // warm caches and buffers
    BenchAccumulator acc;
    while (acc.count() < max_realizations &&
           !acc.converged(target_stderr, 3))
      acc.add(time_run_ms(kind, initial, rc.rule, cfg, steps) / steps);
    out << bench_csv_row(engine_name(kind), rounded, rc.rule.r, steps, acc)
        << '\n';
  }
  if (csv_path.empty()) {
    std::cout << out.str();
  } else {
    std::ofstream file(csv_path);
    if (!file) config_fail("cannot open '" + csv_path + "' for writing");
    file << out.str();
    std::cout << "wrote " << csv_path << '\n';
  }
  return 0;
}

int cmd_sweep_tiles(const std::string& rule_text, const std::string& preset,
                    double density, bool density_set, int n, int steps,
                    uint64_t seed, const std::string& shapes_text,
                    int realizations, const EngineOpts& opts) {
  const RuleChoice rc = resolve_rule(rule_text, preset, density, density_set);
  const Grid initial = make_initial(n, opts.f, rc.density, seed);
  if (realizations < 1) config_fail("sweep needs realizations >= 1");
  std::cout << "tile_w,tile_h,ms_per_step\n";
  for (const auto& [tw, th] : parse_shape_list(shapes_text)) {
    EngineOpts shaped = opts;
    shaped.tile_w = tw;
    shaped.tile_h = th;
    const CatConfig cfg = make_config(shaped, rc.rule.kind);
    time_run_ms(EngineKind::Cat, initial, rc.rule, cfg, 1);
    BenchAccumulator acc;
    for (int i = 0; i < realizations; ++i)
      acc.add(time_run_ms(EngineKind::Cat, initial, rc.rule, cfg, steps) /
              steps);
    char line[64];
    std::snprintf(line, sizeof line, "%d,%d,%.6g", tw, th, acc.mean());
    std::cout << line << '\n';
  }
  return 0;
}

int cmd_cost_model(const std::string& params_path,
                   const std::vector<std::string>& sets,
                   const std::string& radii_text, bool csv,
                   const std::vector<std::string>& derive_args) {
  CostParams base;
  bool customized = false;
  if (!params_path.empty()) {
    std::ifstream file(params_path);
    if (!file) config_fail("cannot open '" + params_path + "'");
    std::string line;
    while (std::getline(file, line)) {
      const auto start = line.find_first_not_of(" \t");
      if (start == std::string::npos || line[start] == '#') continue;
      const auto end = line.find_last_not_of(" \t\r");
      apply_override_line(base, line.substr(start, end - start + 1));
      customized = true;
    }
  }
  for (const std::string& kv : sets) {
    apply_override_line(base, kv);
    customized = true;
  }

  if (!derive_args.empty()) {
    const int r = parse_int_token(derive_args[0]);
    double target = 0.0;
    try {
      target = std::stod(derive_args[1]);
    } catch (const std::exception&) {
      config_fail("bad speedup target '" + derive_args[1] + "'");
    }
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", derive_e(base, r, target));
    std::cout << "E=" << buf << '\n';
    return 0;
  }

  const std::vector<int> radii = parse_int_list(radii_text);
  if (radii.empty()) config_fail("no radii given");
  const std::vector<Scenario> scenarios =
      customized ? std::vector<Scenario>{{"custom", {}}}
                 : reference_scenarios(base);
  const SpeedupTable table = scenario_table(base, scenarios, radii);
  std::cout << (csv ? format_table_csv(table) : format_table_text(table));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"banded matrix-multiply cellular automata toolkit"};
  app.require_subcommand(1);

  std::string rule_text, preset, engine = "cat", out_path;
  double density = 0.25;
  int n = 256, steps = 1;
  uint64_t seed = 1;
  EngineOpts opts;

  CLI::App* run = app.add_subcommand("run", "simulate one configuration");
  run->add_option("--rule", rule_text, "rule string, e.g. R1,C2,M0,S2..3,B3..3,NM");
  run->add_option("--preset", preset, "published rule name (default: life)");
  CLI::Option* run_density =
      run->add_option("--density", density, "live-cell seeding probability");
  run->add_option("--n", n, "logical grid side (rounded up to a multiple of f)");
  run->add_option("--steps", steps, "generations to run");
  run->add_option("--seed", seed, "RNG seed");
  run->add_option("--engine", engine, "cat, base, or pack");
  run->add_option("--out", out_path, "write the final grid as a snapshot");
  add_engine_opts(run, opts);

  std::string radii_text = "1-16", sizes_text = "32,64", seeds_text = "1,2";
  std::string kinds_text = "moore,vn", steps_text = "1,25";
  bool inject_fault = false;
  CLI::App* verify =
      app.add_subcommand("verify", "cross-check the engines cell for cell");
  verify->add_option("--radii", radii_text, "radii, with ranges: 1-4,8");
  verify->add_option("--sizes", sizes_text, "grid sides (multiples of f)");
  verify->add_option("--seeds", seeds_text, "RNG seeds");
  verify->add_option("--kinds", kinds_text, "moore,vn");
  verify->add_option("--steps", steps_text, "step counts");
  verify->add_flag("--inject-fault", inject_fault,
                   "corrupt one band entry and demand a detected mismatch");
  EngineOpts verify_opts;
  add_engine_opts(verify, verify_opts);

  std::string engines_text = "cat,base,pack", csv_path;
  int bench_n = 1024, bench_steps = 10, max_realizations = 16;
  double target_stderr = 1.0;
  uint64_t bench_seed = 1;
  std::string bench_rule, bench_preset;
  double bench_density = 0.25;
  CLI::App* bench = app.add_subcommand("bench", "time the engines to a CSV");
  bench->add_option("--rule", bench_rule, "rule string");
  bench->add_option("--preset", bench_preset, "published rule name");
  CLI::Option* bench_density_opt =
      bench->add_option("--density", bench_density, "seeding probability");
  bench->add_option("--n", bench_n, "grid side");
  bench->add_option("--steps", bench_steps, "generations per realization");
  bench->add_option("--seed", bench_seed, "RNG seed");
  bench->add_option("--engines", engines_text, "comma list: cat,base,pack");
  bench->add_option("--max-realizations", max_realizations,
                    "realization cap per engine");
  bench->add_option("--target-stderr", target_stderr,
                    "stop when stderr of the mean is below this percent");
  bench->add_option("--csv", csv_path, "write rows to a file instead of stdout");
  EngineOpts bench_opts;
  add_engine_opts(bench, bench_opts);

  std::string shapes_text = "1x1,1x14,14x1,2x7,7x2,4x4,8x8,16x16";
  int sweep_n = 1024, sweep_steps = 5, sweep_realizations = 3;
  uint64_t sweep_seed = 1;
  std::string sweep_rule, sweep_preset;
  double sweep_density = 0.25;
  CLI::App* sweep =
      app.add_subcommand("sweep-tiles", "time tile shapes for the MMA engine");
  sweep->add_option("--rule", sweep_rule, "rule string");
  sweep->add_option("--preset", sweep_preset, "published rule name");
  CLI::Option* sweep_density_opt =
      sweep->add_option("--density", sweep_density, "seeding probability");
  sweep->add_option("--n", sweep_n, "grid side");
  sweep->add_option("--steps", sweep_steps, "generations per realization");
  sweep->add_option("--seed", sweep_seed, "RNG seed");
  sweep->add_option("--shapes", shapes_text, "tile shapes, WxH comma list");
  sweep->add_option("--realizations", sweep_realizations,
                    "timed repeats per shape");
  EngineOpts sweep_opts;
  add_engine_opts(sweep, sweep_opts);

  std::string params_path, cm_radii = "1,4,8,16";
  std::vector<std::string> sets, derive_args;
  bool cm_csv = false;
  CLI::App* cost =
      app.add_subcommand("cost-model", "analytical speedup limits");
  cost->add_option("--params", params_path, "key=value file, # comments");
  cost->add_option("--set", sets, "inline key=value override (repeatable)");
  cost->add_option("--radii", cm_radii, "radii for the table");
  cost->add_flag("--csv", cm_csv, "emit CSV instead of aligned text");
  cost->add_option("--derive-e", derive_args,
                   "radius and target speedup; solves tile efficiency E")
      ->expected(2);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed())
      return cmd_run(rule_text, preset, density, run_density->count() > 0, n,
                     steps, seed, engine, opts, out_path);
    if (verify->parsed())
      return cmd_verify(radii_text, sizes_text, seeds_text, kinds_text,
                        steps_text, inject_fault, verify_opts);
    if (bench->parsed())
      return cmd_bench(bench_rule, bench_preset, bench_density,
                       bench_density_opt->count() > 0, bench_n, bench_steps,
                       bench_seed, engines_text, max_realizations,
                       target_stderr, bench_opts, csv_path);
    if (sweep->parsed())
      return cmd_sweep_tiles(sweep_rule, sweep_preset, sweep_density,
                             sweep_density_opt->count() > 0, sweep_n,
                             sweep_steps, sweep_seed, shapes_text,
                             sweep_realizations, sweep_opts);
    if (cost->parsed())
      return cmd_cost_model(params_path, sets, cm_radii, cm_csv, derive_args);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 2;
  }
  return 0;
}
