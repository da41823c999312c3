#pragma once

// Exhaustive enumeration of configurations under weight and width bounds,
// and the classification checks built on top of it.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hamfix/constraints.hpp"
#include "hamfix/model.hpp"

namespace hamfix {

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Each toggle only fires when the rule it anticipates is part of
/// SearchSpec::rules, so switching rules off never loses results.
struct PruningToggles {
    bool divisibility = true; // weights divide moment gaps (Divisibility)
    bool extremal = true;     // forced edges at both ends (ExtremalEdge)
    bool c1 = true;           // gamma targets from c1 (C1Consistency or a c1 filter)
    bool mod = true;          // residues on closed vertices (ModK)
    bool symmetry = true;     // canonical gap orientation only
    bool width = true;        // width <= 10 * maxWeight / c1 (C1Consistency)

    static PruningToggles none() { return {false, false, false, false, false, false}; }
    friend bool operator==(const PruningToggles&, const PruningToggles&) = default;
};

struct SearchSpec {
    std::int64_t max_weight = 5;
    std::int64_t max_width = 10;
    std::int64_t min_width = kDim;
    std::optional<std::int64_t> c1;
    /// Pairs (lo, hi) that must carry the largest weight of the configuration.
    std::vector<std::pair<int, int>> largest_from;
    bool require_effective = false;
    /// phi_1 - phi_0 = phi_5 - phi_4 and phi_2 - phi_0 = phi_5 - phi_3.
    bool symmetry_gaps = false;
    /// Exact gap vector, compared in canonical orientation.
    std::optional<std::array<std::int64_t, kDim>> fixed_gaps;
    /// Largest weight must equal max_weight.
    bool require_max_weight = false;
    /// Rules a configuration must satisfy (constraints and cohomology).
    RuleMask rules = kAllRules;
    PruningToggles pruning;
    std::optional<std::uint64_t> node_limit;
    /// 0 selects HAMFIX_THREADS or the hardware concurrency.
    int threads = 0;
};

struct SearchStats {
    std::uint64_t gap_vectors = 0; // gap vectors explored
    std::uint64_t nodes = 0;
    std::uint64_t leaves = 0;
    std::map<std::string, std::uint64_t> pruned;
    double wall_seconds = 0.0;

    SearchStats& operator+=(const SearchStats& o);
};

struct SearchResult {
    std::vector<Configuration> configurations; // canonical, sorted, distinct
    SearchStats stats;
};

void validate(const SearchSpec& spec);
SearchResult enumerate(const SearchSpec& spec);

/// Worker count used when spec.threads == 0.
int default_thread_count();

/// Configurations grouped by weight system; groups ordered by their first
/// (smallest) pairing.
std::vector<std::vector<Configuration>> group_by_weight_system(const std::vector<Configuration>& cs);

/// Semantic filter used by largestFrom and the theorem conditions.
bool carries_largest(const Configuration& c, int lo, int hi);

struct TheoremCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct TheoremReport {
    std::string theorem;
    bool pass = false;
    std::vector<TheoremCheck> checks;
    std::vector<std::vector<Configuration>> weight_systems;
    SearchStats stats;
};

struct TheoremOptions {
    int threads = 0;
    std::optional<std::uint64_t> node_limit;
};

/// No configuration with largest weight < 5. With max_weight >= 5 the check
/// flips: the pool must be nonempty and contain the orbit's weight system.
TheoremReport verify_theorem1(std::int64_t max_width = 40, std::int64_t max_weight = 4,
                              const TheoremOptions& opt = {});
TheoremReport verify_theorem2(std::int64_t max_width = 50, const TheoremOptions& opt = {});
TheoremReport verify_theorem3(const TheoremOptions& opt = {});
/// Throws ParamError unless a >= 1, c >= 3, 3 | c and gcd(a, c/3) = 1.
TheoremReport verify_theorem4(std::int64_t a, std::int64_t c, const TheoremOptions& opt = {});

/// Expected weight sets of the parametric family (b = c / 3).
WeightSystem parametric_weight_system(std::int64_t a, std::int64_t c);

nlohmann::json to_json(const SearchSpec& spec);
SearchSpec spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SearchStats& s, bool timing = false);
nlohmann::json to_json(const SearchResult& r, bool timing = false);
nlohmann::json to_json(const TheoremReport& r, bool timing = false);

} // namespace hamfix
