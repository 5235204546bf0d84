#include "catsim/engines.hpp"

#include <stdexcept>

#include "catsim/layout.hpp"

namespace catsim {

EngineKind parse_engine(std::string_view name) {
  if (name == "cat") return EngineKind::Cat;
  if (name == "base") return EngineKind::Base;
  if (name == "pack") return EngineKind::Pack;
  throw std::invalid_argument("config error: unknown engine '" +
                              std::string(name) + "' (cat, base, pack)");
}

const char* engine_name(EngineKind kind) {
  switch (kind) {
    case EngineKind::Cat: return "cat";
    case EngineKind::Base: return "base";
    case EngineKind::Pack: return "pack";
  }
  return "?";
}

Grid run_engine(EngineKind kind, const Grid& initial, const LtlRule& rule,
                const CatConfig& cfg, int steps, RunStats* stats) {
  if (initial.layout != Layout::RowMajor)
    throw std::invalid_argument("layout error: expected a row-major grid");
  switch (kind) {
    case EngineKind::Cat: {
      Grid frag = to_fragment_layout(initial);
      Grid done = simulate(std::move(frag), rule, cfg, steps,
                           stats ? &stats->cat : nullptr);
      return to_row_major(done);
    }
    case EngineKind::Base:
      return simulate_base(initial, rule, steps,
                           stats ? &stats->base : nullptr);
    case EngineKind::Pack: {
      PackedGrid packed = pack(initial);
      return unpack(simulate_packed(std::move(packed), rule, steps));
    }
  }
  throw std::logic_error("internal consistency: unreachable engine kind");
}

}  // namespace catsim
