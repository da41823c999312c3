#pragma once

// Exact predicates over a Configuration. Violations are returned as data so
// the enumerator can use them as pruning signals.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hamfix/model.hpp"

namespace hamfix {

enum class Rule : std::uint8_t {
    Divisibility,
    ModK,
    SmallestWeightBalance,
    ComponentRegularity,
    IndexBound,
    ExtremalEdge,
    C1Consistency,
    GammaRelation,
    Effectiveness,
    // Raised by the cohomology module.
    Integrality,
    Duality,
    Consistency,
    Localization,
};

inline constexpr int kRuleCount = 13;

std::string_view rule_name(Rule r);
std::optional<Rule> rule_from_name(std::string_view name);

/// Bit set over Rule.
using RuleMask = std::uint32_t;
inline constexpr RuleMask rule_bit(Rule r) { return RuleMask{1} << static_cast<unsigned>(r); }
inline constexpr RuleMask kAllRules = (RuleMask{1} << kRuleCount) - 1;

struct Violation {
    Rule rule = Rule::Divisibility;
    std::vector<int> vertices;
    std::vector<WeightEdge> edges;
    std::string detail;

    friend auto operator<=>(const Violation&, const Violation&) = default;
};

std::vector<Violation> check_divisibility(const Configuration& c);
std::vector<Violation> check_mod(const Configuration& c);
std::vector<Violation> check_smallest_weight_balance(const Configuration& c);
/// Emits ComponentRegularity and IndexBound violations.
std::vector<Violation> check_component_regularity(const Configuration& c);
std::vector<Violation> check_extremal_edges(const Configuration& c);
std::vector<Violation> check_effectiveness(const Configuration& c);

/// c1 = k[omega]; either k or the first disagreeing pair.
std::variant<std::int64_t, Violation> compute_c1(const Configuration& c);

std::vector<Violation> check_gamma_relation(const Configuration& c, std::int64_t k);

struct CheckFlags {
    bool require_effective = false;
    RuleMask rules = kAllRules;
    /// Stop after the first checker that reports; c1 may then be missing.
    bool fail_fast = false;
};

struct CheckReport {
    bool pass = true;
    std::optional<std::int64_t> c1;
    std::vector<Violation> violations; // sorted
};

/// Runs every checker enabled in flags.rules. Effectiveness runs when
/// flags.require_effective or the configuration's own flag is set.
CheckReport check_all(const Configuration& c, const CheckFlags& flags = {});

/// True if +w at lo, -w at hi and both lie in one w-subgraph component.
bool weight_between(const Configuration& c, int lo, int hi, std::int64_t w);

nlohmann::json to_json(const Violation& v);
nlohmann::json to_json(const CheckReport& r);

} // namespace hamfix
