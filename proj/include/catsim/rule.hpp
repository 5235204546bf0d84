#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace catsim {

inline constexpr int kMinRadius = 1;
inline constexpr int kMaxRadius = 16;

enum class NeighborhoodKind { Moore, VonNeumannSimplified };

// Larger-than-Life rule over two-state cells: a live cell survives when its
// neighborhood count lands in [s1, s2], a dead cell is born in [b1, b2].
struct LtlRule {
  int r = 1;   // neighborhood radius, 1..16
  int c = 2;   // states per cell; only 2 supported
  int m = 0;   // 1 if the center cell contributes to its own count
  int s1 = 0, s2 = 0;
  int b1 = 0, b2 = 0;
  NeighborhoodKind kind = NeighborhoodKind::Moore;

  // Distinct cells in the neighborhood shape, center included.
  int neighborhood_cells() const {
    const int w = 2 * r + 1;
    return kind == NeighborhoodKind::Moore ? w * w : 2 * w - 1;
  }
  // Largest count a cell can observe under this rule's m.
  int max_count() const { return neighborhood_cells() - (1 - m); }
};

// Grammar: R<r>,C<c>,M<m>,S<s1>..<s2>,B<b1>..<b2>,N<M|N>
// Parse errors name the offending field; parse o format is the identity.
LtlRule parse_ltl_rule(std::string_view text);
std::string format_ltl_rule(const LtlRule& rule);

// Next state of one cell given the raw neighborhood reduction. The reduction
// counts the center with the given multiplicity (1 for a Moore box sum, 2 for
// the simplified Von Neumann cross sum); the rule's m decides how much of
// that self-contribution is kept.
uint8_t apply_transition(uint8_t state, int reduction, const LtlRule& rule,
                         int center_multiplicity);

// Published rule instances, one per radius 1..16, with the cell density each
// is typically seeded at.
struct LtlPreset {
  const char* name;
  const char* rule;
  double density;
};

const std::vector<LtlPreset>& ltl_presets();
const LtlPreset* find_preset(std::string_view name);  // nullptr when unknown

// Deterministic Von Neumann probe rule for engine cross-checks (the published
// instances are Moore-only). Ranges sit near the expected window count at
// density 0.25 so the dynamics stay active.
LtlRule von_neumann_probe_rule(int r);

}  // namespace catsim
