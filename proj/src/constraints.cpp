#include "hamfix/constraints.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include <nlohmann/json.hpp>

namespace hamfix {

namespace {

constexpr std::array<std::string_view, kRuleCount> kRuleNames = {
    "Divisibility",   "ModK",          "SmallestWeightBalance", "ComponentRegularity", "IndexBound",
    "ExtremalEdge",   "C1Consistency", "GammaRelation",         "Effectiveness",       "Integrality",
    "Duality",        "Consistency",   "Localization",
};

std::int64_t floor_mod(std::int64_t a, std::int64_t k) { return ((a % k) + k) % k; }

std::string vstr(int v) { return "P" + std::to_string(v); }

} // namespace

std::string_view rule_name(Rule r) { return kRuleNames[static_cast<std::size_t>(r)]; }

std::optional<Rule> rule_from_name(std::string_view name) {
    for (int i = 0; i < kRuleCount; ++i) {
        if (kRuleNames[i] == name) return static_cast<Rule>(i);
    }
    return std::nullopt;
}

std::vector<Violation> check_divisibility(const Configuration& c) {
    std::vector<Violation> out;
    const auto& p = c.profile();
    for (const auto& e : c.edges()) {
        if (p.gap(e.lo, e.hi) % e.weight != 0) {
            out.push_back({Rule::Divisibility, {e.lo, e.hi}, {e},
                           "weight " + std::to_string(e.weight) + " does not divide moment gap " +
                               std::to_string(p.gap(e.lo, e.hi))});
        }
    }
    const auto ws = derive_weight_system(c);
    for (int v = 0; v < kPoints; ++v) {
        for (auto w : ws.points[v].weights) {
            const auto a = w < 0 ? -w : w;
            bool found = false;
            for (int u = 0; u < kPoints && !found; ++u) {
                if ((w < 0 ? u < v : u > v) && p.gap(std::min(u, v), std::max(u, v)) % a == 0) found = true;
            }
            if (!found) {
                out.push_back({Rule::Divisibility, {v}, {},
                               "weight " + std::to_string(w) + " at " + vstr(v) +
                                   " divides no moment gap in its direction"});
            }
        }
    }
    return out;
}

std::vector<Violation> check_mod(const Configuration& c) {
    std::vector<Violation> out;
    const auto ws = derive_weight_system(c);
    auto residues = [&](int v, std::int64_t k) {
        std::vector<std::int64_t> r;
        for (auto w : ws.points[v].weights) r.push_back(floor_mod(w, k));
        std::sort(r.begin(), r.end());
        return r;
    };
    for (std::int64_t k = 2; k <= c.max_weight(); ++k) {
        for (const auto& comp : isotropy_components(c, k)) {
            const int first = comp.vertices.front();
            const auto base = residues(first, k);
            for (std::size_t i = 1; i < comp.vertices.size(); ++i) {
                const int v = comp.vertices[i];
                if (residues(v, k) != base) {
                    out.push_back({Rule::ModK, {first, v}, {},
                                   "weights at " + vstr(first) + " and " + vstr(v) + " differ modulo " +
                                       std::to_string(k)});
                }
            }
        }
    }
    return out;
}

std::vector<Violation> check_smallest_weight_balance(const Configuration& c) {
    std::vector<Violation> out;
    const auto ws = derive_weight_system(c);

    auto balance = [&](const std::vector<int>& vertices, const std::array<int, kPoints>& index, int depth,
                       std::int64_t w, const std::string& scope) {
        for (int m = 0; m < depth; ++m) {
            int minus = 0, plus = 0;
            std::vector<int> involved;
            for (int v : vertices) {
                if (index[v] == m + 1) minus += ws.count(v, -w);
                if (index[v] == m) plus += ws.count(v, w);
                if (index[v] == m || index[v] == m + 1) involved.push_back(v);
            }
            if (minus != plus) {
                out.push_back({Rule::SmallestWeightBalance, involved, {},
                               scope + ": " + std::to_string(minus) + " copies of -" + std::to_string(w) +
                                   " at index " + std::to_string(2 * m + 2) + " vs " + std::to_string(plus) +
                                   " copies of +" + std::to_string(w) + " at index " + std::to_string(2 * m)});
            }
        }
    };

    std::int64_t smallest = 0;
    for (const auto& e : c.edges()) smallest = smallest ? std::min(smallest, e.weight) : e.weight;
    std::array<int, kPoints> global_index{};
    std::vector<int> all(kPoints);
    std::iota(all.begin(), all.end(), 0);
    std::iota(global_index.begin(), global_index.end(), 0);
    balance(all, global_index, kDim, smallest, "global");

    for (std::int64_t k = 2; k <= c.max_weight(); ++k) {
        for (const auto& comp : isotropy_components(c, k)) {
            if (!comp.saturated) continue;
            std::int64_t w = 0;
            for (int v : comp.vertices) {
                for (auto x : ws.points[v].weights) {
                    if (x > 0 && x % k == 0) w = w ? std::min(w, x) : x;
                }
            }
            if (w == 0) continue;
            balance(comp.vertices, comp.within_index, comp.divisible_count[comp.vertices.front()], w,
                    "Z_" + std::to_string(k) + " component");
        }
    }
    return out;
}

std::vector<Violation> check_component_regularity(const Configuration& c) {
    std::vector<Violation> out;
    for (std::int64_t k = 2; k <= c.max_weight(); ++k) {
        for (const auto& comp : isotropy_components(c, k)) {
            const std::string scope = "Z_" + std::to_string(k) + " component";
            const int d = comp.divisible_count[comp.vertices.front()];
            bool constant = true;
            for (int v : comp.vertices) constant = constant && comp.divisible_count[v] == d;
            if (!constant) {
                out.push_back({Rule::ComponentRegularity, comp.vertices, {},
                               scope + ": divisible weight count is not constant"});
                continue;
            }
            if (!comp.saturated) continue;

            std::vector<int> level(static_cast<std::size_t>(d) + 1, 0);
            for (int v : comp.vertices) ++level[static_cast<std::size_t>(comp.within_index[v])];
            if (level[0] != 1 || level[static_cast<std::size_t>(d)] != 1) {
                out.push_back({Rule::ComponentRegularity, comp.vertices, {},
                               scope + ": needs exactly one minimum and one maximum"});
            }
            for (int m = 0; m <= d; ++m) {
                if (level[static_cast<std::size_t>(m)] == 0) {
                    out.push_back({Rule::ComponentRegularity, comp.vertices, {},
                                   scope + ": no fixed point of index " + std::to_string(2 * m)});
                }
                if (level[static_cast<std::size_t>(m)] != level[static_cast<std::size_t>(d - m)]) {
                    out.push_back({Rule::ComponentRegularity, comp.vertices, {},
                                   scope + ": index counts are not symmetric at " + std::to_string(2 * m)});
                }
            }
            for (std::size_t p = 0; p < comp.vertices.size(); ++p) {
                const int v = comp.vertices[p];
                if (comp.within_index[v] > static_cast<int>(p)) {
                    out.push_back({Rule::IndexBound, {v}, {},
                                   scope + ": " + vstr(v) + " has index " + std::to_string(2 * comp.within_index[v]) +
                                       " with only " + std::to_string(p) + " lower fixed points"});
                }
            }
        }
    }
    return out;
}

std::vector<Violation> check_extremal_edges(const Configuration& c) {
    std::vector<Violation> out;
    const auto& p = c.profile();
    for (auto [lo, hi] : {std::pair{0, 1}, std::pair{kDim - 1, kDim}}) {
        const auto w = p.gap(lo, hi);
        if (c.multiplicity(lo, hi, w) == 0) {
            out.push_back({Rule::ExtremalEdge, {lo, hi}, {},
                           "no weight " + std::to_string(w) + " between " + vstr(lo) + " and " + vstr(hi)});
        }
    }
    return out;
}

std::vector<Violation> check_effectiveness(const Configuration& c) {
    if (c.weight_gcd() == 1) return {};
    std::vector<int> all(kPoints);
    std::iota(all.begin(), all.end(), 0);
    return {{Rule::Effectiveness, all, {}, "weights share the factor " + std::to_string(c.weight_gcd())}};
}

std::variant<std::int64_t, Violation> compute_c1(const Configuration& c) {
    const auto ws = derive_weight_system(c);
    const auto& p = c.profile();
    std::optional<std::int64_t> k;
    for (int a = 0; a < kPoints; ++a) {
        for (int b = a + 1; b < kPoints; ++b) {
            const auto num = ws.points[a].gamma - ws.points[b].gamma;
            const auto den = p.gap(a, b);
            const std::string pair = vstr(a) + "," + vstr(b);
            if (num % den != 0) {
                return Violation{Rule::C1Consistency, {a, b}, {},
                                 "gamma difference " + std::to_string(num) + " is not a multiple of " +
                                     std::to_string(den) + " at " + pair};
            }
            if (k && *k != num / den) {
                return Violation{Rule::C1Consistency, {a, b}, {},
                                 "c1 " + std::to_string(num / den) + " at " + pair + " disagrees with " +
                                     std::to_string(*k)};
            }
            k = num / den;
        }
    }
    if (*k < 1 || *k > kPoints) {
        return Violation{Rule::C1Consistency, {0, kDim}, {}, "c1 " + std::to_string(*k) + " outside 1..6"};
    }
    return *k;
}

std::vector<Violation> check_gamma_relation(const Configuration& c, std::int64_t k) {
    std::vector<Violation> out;
    const auto ws = derive_weight_system(c);
    const auto& p = c.profile();
    for (const auto& e : c.edges()) {
        const auto w = e.weight;
        const auto& wi = ws.points[e.lo].weights;
        const auto& wj = ws.points[e.hi].weights;
        if (ws.count(e.lo, -w) > 0) continue;
        auto bounded = [w](const std::vector<std::int64_t>& xs) {
            return std::all_of(xs.begin(), xs.end(), [w](auto x) { return (x < 0 ? -x : x) <= w; });
        };
        if (!bounded(wi) || !bounded(wj)) continue;
        if (p.gap(e.lo, e.hi) % w != 0) continue;
        const int s = ws.count(e.hi, -w);
        if (ws.count(e.lo, w) < s) {
            out.push_back({Rule::GammaRelation, {e.lo, e.hi}, {e},
                           "weight " + std::to_string(w) + " at " + vstr(e.lo) + " has multiplicity below " +
                               std::to_string(s)});
        }
        const auto lhs = e.hi - e.lo + s;
        const auto rhs = k * p.gap(e.lo, e.hi) / w;
        if (lhs != rhs) {
            out.push_back({Rule::GammaRelation, {e.lo, e.hi}, {e},
                           "j-i+s = " + std::to_string(lhs) + " but c1*gap/w = " + std::to_string(rhs)});
        }
    }
    return out;
}

CheckReport check_all(const Configuration& c, const CheckFlags& flags) {
    CheckReport r;
    auto on = [&](Rule rule) { return (flags.rules & rule_bit(rule)) != 0; };
    auto take = [&](std::vector<Violation> vs) {
        for (auto& v : vs) {
            if (on(v.rule)) r.violations.push_back(std::move(v));
        }
        return !(flags.fail_fast && !r.violations.empty());
    };
    auto finish = [&] {
        std::sort(r.violations.begin(), r.violations.end());
        r.pass = r.violations.empty();
        return r;
    };
    // checkers run in Rule order so a fail-fast report keeps the smallest rule
    if (on(Rule::Divisibility) && !take(check_divisibility(c))) return finish();
    if (on(Rule::ModK) && !take(check_mod(c))) return finish();
    if (on(Rule::SmallestWeightBalance) && !take(check_smallest_weight_balance(c))) return finish();
    if ((on(Rule::ComponentRegularity) || on(Rule::IndexBound)) && !take(check_component_regularity(c))) {
        return finish();
    }
    if (on(Rule::ExtremalEdge) && !take(check_extremal_edges(c))) return finish();

    auto c1 = compute_c1(c);
    if (auto* k = std::get_if<std::int64_t>(&c1)) {
        r.c1 = *k;
        if (on(Rule::GammaRelation) && !take(check_gamma_relation(c, *k))) return finish();
    } else if (on(Rule::C1Consistency)) {
        r.violations.push_back(std::get<Violation>(std::move(c1)));
        if (flags.fail_fast) return finish();
    }
    if ((flags.require_effective || c.effective()) && on(Rule::Effectiveness)) take(check_effectiveness(c));
    return finish();
}

bool weight_between(const Configuration& c, int lo, int hi, std::int64_t w) {
    const auto ws = derive_weight_system(c);
    if (ws.count(lo, w) == 0 || ws.count(hi, -w) == 0) return false;
    if (w == 1) return true;
    for (const auto& comp : isotropy_components(c, w)) {
        const auto& vs = comp.vertices;
        if (std::find(vs.begin(), vs.end(), lo) != vs.end()) {
            return std::find(vs.begin(), vs.end(), hi) != vs.end();
        }
    }
    return false;
}

nlohmann::json to_json(const Violation& v) {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : v.edges) edges.push_back({e.lo, e.hi, e.weight});
    return {{"rule", rule_name(v.rule)},
            {"location", {{"vertices", v.vertices}, {"edges", edges}}},
            {"detail", v.detail}};
}

nlohmann::json to_json(const CheckReport& r) {
    nlohmann::json vs = nlohmann::json::array();
    for (const auto& v : r.violations) vs.push_back(to_json(v));
    return {{"pass", r.pass}, {"c1", r.c1 ? nlohmann::json(*r.c1) : nlohmann::json(nullptr)}, {"violations", vs}};
}

} // namespace hamfix
