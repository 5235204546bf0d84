#include "catsim/rule.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace catsim {

namespace {

[[noreturn]] void parse_fail(char field, const std::string& why) {
  throw std::invalid_argument(std::string("rule parse error: field ") + field +
                              ": " + why);
}

// Consumes a decimal integer; the field letter names the error source.
int take_int(std::string_view& s, char field) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr == s.data())
    parse_fail(field, "expected an integer");
  s.remove_prefix(static_cast<std::size_t>(ptr - s.data()));
  return value;
}

void expect(std::string_view& s, std::string_view token, char field) {
  if (s.substr(0, token.size()) != token)
    parse_fail(field, "expected '" + std::string(token) + "'");
  s.remove_prefix(token.size());
}

void validate(const LtlRule& rule) {
  if (rule.r < kMinRadius || rule.r > kMaxRadius)
    throw std::invalid_argument("unsupported rule: radius " +
                                std::to_string(rule.r) + " outside 1..16");
  if (rule.c != 2)
    throw std::invalid_argument("unsupported rule: only two-state rules (C2)");
  if (rule.m != 0 && rule.m != 1)
    throw std::invalid_argument("rule parse error: field M: must be 0 or 1");
  if (rule.s1 < 0 || rule.s1 > rule.s2)
    throw std::invalid_argument(
        "rule parse error: field S: need 0 <= s1 <= s2");
  if (rule.b1 < 0 || rule.b1 > rule.b2)
    throw std::invalid_argument(
        "rule parse error: field B: need 0 <= b1 <= b2");
  const int cap = rule.max_count();
  if (rule.s2 > cap)
    throw std::invalid_argument("rule parse error: field S: s2 (" +
                                std::to_string(rule.s2) +
                                ") exceeds neighborhood capacity " +
                                std::to_string(cap));
  if (rule.b2 > cap)
    throw std::invalid_argument("rule parse error: field B: b2 (" +
                                std::to_string(rule.b2) +
                                ") exceeds neighborhood capacity " +
                                std::to_string(cap));
}

}  // namespace

LtlRule parse_ltl_rule(std::string_view text) {
  std::string_view s = text;
  LtlRule rule;
  expect(s, "R", 'R');
  rule.r = take_int(s, 'R');
  expect(s, ",C", 'C');
  rule.c = take_int(s, 'C');
  expect(s, ",M", 'M');
  rule.m = take_int(s, 'M');
  expect(s, ",S", 'S');
  rule.s1 = take_int(s, 'S');
  expect(s, "..", 'S');
  rule.s2 = take_int(s, 'S');
  expect(s, ",B", 'B');
  rule.b1 = take_int(s, 'B');
  expect(s, "..", 'B');
  rule.b2 = take_int(s, 'B');
  expect(s, ",N", 'N');
  if (s == "M")
    rule.kind = NeighborhoodKind::Moore;
  else if (s == "N")
    rule.kind = NeighborhoodKind::VonNeumannSimplified;
  else
    parse_fail('N', "expected neighborhood letter M or N");
  validate(rule);
  return rule;
}

std::string format_ltl_rule(const LtlRule& rule) {
  std::string out = "R" + std::to_string(rule.r) + ",C" +
                    std::to_string(rule.c) + ",M" + std::to_string(rule.m) +
                    ",S" + std::to_string(rule.s1) + ".." +
                    std::to_string(rule.s2) + ",B" + std::to_string(rule.b1) +
                    ".." + std::to_string(rule.b2) + ",N";
  out += rule.kind == NeighborhoodKind::Moore ? 'M' : 'N';
  return out;
}

uint8_t apply_transition(uint8_t state, int reduction, const LtlRule& rule,
                         int center_multiplicity) {
  // The reduction includes the center state center_multiplicity times; keep
  // m of those contributions.
  const int count = reduction - (center_multiplicity - rule.m) * state;
  if (count < 0)
    throw std::logic_error(
        "internal consistency: negative neighborhood count " +
        std::to_string(count));
  if (state)
    return (count >= rule.s1 && count <= rule.s2) ? 1 : 0;
  return (count >= rule.b1 && count <= rule.b2) ? 1 : 0;
}

const std::vector<LtlPreset>& ltl_presets() {
  static const std::vector<LtlPreset> presets = {
      {"life", "R1,C2,M0,S2..3,B3..3,NM", 0.07},
      {"starry-night", "R2,C2,M0,S7..12,B8..11,NM", 0.15},
      {"boiling-gnocchi", "R3,C2,M0,S15..23,B14..17,NM", 0.25},
      {"majority", "R4,C2,M0,S40..80,B41..80,NM", 0.50},
      {"bosco", "R5,C2,M0,S35..59,B34..45,NM", 0.21},
      {"radiation", "R6,C2,M0,S49..81,B46..65,NM", 0.22},
      {"waffles", "R7,C2,M0,S101..201,B75..170,NM", 0.29},
      {"globe", "R8,C2,M0,S163..223,B74..252,NM", 0.23},
      {"gravity", "R9,C2,M0,S108..181,B100..140,NM", 0.24},
      {"bugsmovie", "R10,C2,M0,S122..211,B123..170,NM", 0.25},
      {"broken-ships", "R11,C2,M0,S156..265,B147..205,NM", 0.24},
      {"scaled-gol", "R12,C2,M0,S170..296,B170..240,NM", 0.25},
      {"cleansing", "R13,C2,M0,S213..364,B203..283,NM", 0.25},
      {"scaled-bugsmovie", "R14,C2,M0,S245..420,B234..326,NM", 0.25},
      {"pretzels", "R15,C2,M0,S170..296,B170..240,NM", 0.28},
      {"tangy-ramen", "R16,C2,M0,S170..296,B170..300,NM", 0.26},
  };
  return presets;
}

const LtlPreset* find_preset(std::string_view name) {
  const auto& all = ltl_presets();
  const auto it = std::find_if(all.begin(), all.end(),
                               [&](const LtlPreset& p) { return name == p.name; });
  return it == all.end() ? nullptr : &*it;
}

LtlRule von_neumann_probe_rule(int r) {
  LtlRule rule;
  rule.r = r;
  rule.kind = NeighborhoodKind::VonNeumannSimplified;
  const int cross = 2 * (2 * r + 1) - 1;
  rule.s1 = std::max(1, cross / 6);
  rule.s2 = cross / 2;
  rule.b1 = std::max(1, cross / 5);
  rule.b2 = cross / 3;
  return rule;
}

}  // namespace catsim
