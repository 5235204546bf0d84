#pragma once

#include <string>
#include <string_view>

#include "catsim/cat_engine.hpp"
#include "catsim/reference.hpp"

namespace catsim {

enum class EngineKind { Cat, Base, Pack };

EngineKind parse_engine(std::string_view name);  // cat | base | pack
const char* engine_name(EngineKind kind);

struct RunStats {
  CatStats cat;
  BaseStats base;
};

// One step interface over all engines: takes a row-major grid, runs `steps`
// generations on a torus, returns a row-major grid. Layout conversion and
// packing happen inside, so outputs are directly comparable byte for byte.
Grid run_engine(EngineKind kind, const Grid& initial, const LtlRule& rule,
                const CatConfig& cfg, int steps, RunStats* stats = nullptr);

}  // namespace catsim
