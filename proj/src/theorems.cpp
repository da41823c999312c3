#include <algorithm>
#include <numeric>

#include <nlohmann/json.hpp>

#include "hamfix/cohomology.hpp"
#include "hamfix/examples.hpp"
#include "hamfix/search.hpp"

namespace hamfix {

namespace {

SearchSpec base_spec(const TheoremOptions& opt) {
    SearchSpec s;
    s.threads = opt.threads;
    s.node_limit = opt.node_limit;
    return s;
}

void add(TheoremReport& r, std::string name, bool pass, std::string detail = {}) {
    r.checks.push_back({std::move(name), pass, std::move(detail)});
}

void finish(TheoremReport& r) {
    r.pass = std::all_of(r.checks.begin(), r.checks.end(), [](const TheoremCheck& c) { return c.pass; });
}

bool same_weights(const Configuration& c, const WeightSystem& expected) {
    return derive_weight_system(c) == expected || derive_weight_system(flip(c)) == expected;
}

bool one_edge_per_pair(const Configuration& c) {
    if (c.edges().size() != static_cast<std::size_t>(kPoints * kDim / 2)) return false;
    for (std::size_t i = 1; i < c.edges().size(); ++i) {
        const auto& a = c.edges()[i - 1];
        const auto& b = c.edges()[i];
        if (a.lo == b.lo && a.hi == b.hi) return false;
    }
    return std::all_of(c.edges().begin(), c.edges().end(), [](const WeightEdge& e) { return e.mult == 1; });
}

std::string gaps_string(const Configuration& c) {
    const auto g = c.profile().gaps();
    return to_string(std::vector<std::int64_t>(g.begin(), g.end()));
}

// Uniqueness, weight sets, pairing shape and the global invariants shared by
// the two classification results.
void check_unique_orbit_type(TheoremReport& r, const WeightSystem& expected, const std::array<std::int64_t, kDim>& gaps) {
    add(r, "unique weight system", r.weight_systems.size() == 1,
        std::to_string(r.weight_systems.size()) + " weight system(s)");
    if (r.weight_systems.size() != 1) return;
    const auto& group = r.weight_systems.front();
    const auto& rep = group.front();
    add(r, "weight sets match", same_weights(rep, expected));
    const auto g = rep.profile().gaps();
    add(r, "gap profile", g == gaps, gaps_string(rep));
    add(r, "one edge per vertex pair", std::any_of(group.begin(), group.end(), one_edge_per_pair),
        std::to_string(group.size()) + " pairing(s)");

    const auto ring = ring_presentation(rep);
    const std::array<Rational, kPoints> q{1, 1, Rational(1, 3), Rational(1, 6), Rational(1, 18), Rational(1, 18)};
    add(r, "ring generators 1, w, w^2/3, w^3/6, w^4/18, w^5/18", ring && ring->q == q);
    const auto chern = total_chern(rep);
    const std::array<std::int64_t, kDim> ordinary{3, 13, 22, 30, 6};
    add(r, "total Chern class 1+3a1+13a2+22a3+30a4+6a5", chern && chern->ordinary == ordinary);
}

} // namespace

WeightSystem parametric_weight_system(std::int64_t a, std::int64_t c) {
    const auto b = c / 3;
    std::array<std::vector<std::int64_t>, kPoints> w;
    w[0] = {a, a + 3 * b, a + b, a + 2 * b, 2 * a + 3 * b};
    w[1] = {-a, b, 2 * a + 3 * b, a + 3 * b, a + 2 * b};
    w[2] = {-a - 3 * b, -b, a, 2 * a + 3 * b, a + b};
    w[3] = {-a - b, -2 * a - 3 * b, -a, b, a + 3 * b};
    for (auto x : w[1]) w[4].push_back(-x);
    for (auto x : w[0]) w[5].push_back(-x);
    WeightSystem ws;
    for (int i = 0; i < kPoints; ++i) {
        std::sort(w[i].begin(), w[i].end());
        ws.points[i].weights = w[i];
    }
    return ws;
}

TheoremReport verify_theorem1(std::int64_t max_width, std::int64_t max_weight, const TheoremOptions& opt) {
    TheoremReport r;
    r.theorem = "thm1";
    auto spec = base_spec(opt);
    spec.max_weight = max_weight;
    spec.max_width = max_width;
    auto res = enumerate(spec);
    r.stats = res.stats;
    r.weight_systems = group_by_weight_system(res.configurations);
    const auto n = std::to_string(res.configurations.size()) + " configuration(s)";
    if (max_weight < 5) {
        add(r, "no configuration with largest weight <= " + std::to_string(max_weight), res.configurations.empty(), n);
    } else {
        add(r, "pool is nonempty at largest weight <= " + std::to_string(max_weight), !res.configurations.empty(), n);
        const auto key = weight_system_key(builtin_orbit());
        add(r, "orbit weight system present",
            std::any_of(res.configurations.begin(), res.configurations.end(),
                        [&](const Configuration& c) { return weight_system_key(c) == key; }));
    }
    bool c1_range = true;
    for (const auto& c : res.configurations) {
        auto k = compute_c1(c);
        c1_range = c1_range && std::holds_alternative<std::int64_t>(k);
    }
    add(r, "c1 in 1..6 for every member", c1_range);
    finish(r);
    return r;
}

TheoremReport verify_theorem2(std::int64_t max_width, const TheoremOptions& opt) {
    TheoremReport r;
    r.theorem = "thm2";
    constexpr std::int64_t L = 5;
    auto spec = base_spec(opt);
    spec.max_weight = L;
    spec.max_width = max_width;
    spec.require_max_weight = true;
    auto res = enumerate(spec);
    r.stats = res.stats;
    r.weight_systems = group_by_weight_system(res.configurations);

    std::size_t n1 = 0, n2 = 0, n3 = 0, other_c1 = 0;
    bool equal = true, multiplicity_one = true;
    for (const auto& group : r.weight_systems) {
        const auto& c = group.front();
        const auto& p = c.profile();
        const auto k = compute_c1(c);
        const bool c1 = std::holds_alternative<std::int64_t>(k) && std::get<std::int64_t>(k) == 3;
        const bool c2 = weight_between(c, 0, kDim, L) && p.width() == 2 * L;
        const bool c3 = weight_between(c, 1, 3, L) && weight_between(c, 2, 4, L) && p.gap(1, 3) == L &&
                        p.gap(2, 4) == L && p.gap(0, 1) == p.gap(4, 5);
        n1 += c1;
        n2 += c2;
        n3 += c3;
        other_c1 += !c1;
        equal = equal && c1 == c2 && c2 == c3;
        if (c1 || c2 || c3) {
            const auto ws = derive_weight_system(c);
            for (int v = 0; v < kPoints; ++v) {
                multiplicity_one = multiplicity_one && ws.count(v, L) + ws.count(v, -L) == 1;
            }
        }
    }
    const auto pool = std::to_string(r.weight_systems.size()) + " weight system(s)";
    add(r, "pool is nonempty", !r.weight_systems.empty(), pool);
    add(r, "conditions (1), (2), (3) select the same subset", equal,
        std::to_string(n1) + " / " + std::to_string(n2) + " / " + std::to_string(n3));
    add(r, "largest weight occurs once at every fixed point of the subset", multiplicity_one);
    add(r, "pool has members with c1 != 3", other_c1 > 0, std::to_string(other_c1));
    // the Grassmannian with gaps (1,1,2,1,1) has largest weight 5 and c1 = 5
    const auto grass = builtin_grass(1, 1, 2);
    const auto key = weight_system_key(grass);
    const bool grass_in_pool = std::any_of(r.weight_systems.begin(), r.weight_systems.end(), [&](const auto& g) {
        return weight_system_key(g.front()) == key;
    });
    const bool grass_fails =
        !weight_between(grass, 0, kDim, L) && !(weight_between(grass, 1, 3, L) && weight_between(grass, 2, 4, L));
    add(r, "Grassmannian (c1 = 5) is in the pool and fails (2) and (3)", grass_in_pool && grass_fails);
    finish(r);
    return r;
}

TheoremReport verify_theorem3(const TheoremOptions& opt) {
    TheoremReport r;
    r.theorem = "thm3";
    auto spec = base_spec(opt);
    spec.max_weight = 5;
    spec.min_width = spec.max_width = 10;
    spec.largest_from = {{0, kDim}};
    spec.require_max_weight = true;
    auto res = enumerate(spec);
    r.stats = res.stats;
    r.weight_systems = group_by_weight_system(res.configurations);
    check_unique_orbit_type(r, parametric_weight_system(1, 3), {1, 3, 2, 3, 1});
    finish(r);
    return r;
}

TheoremReport verify_theorem4(std::int64_t a, std::int64_t c, const TheoremOptions& opt) {
    if (a < 1 || c < 3 || c % 3 != 0) throw ParamError("the parametric family needs a >= 1 and c a positive multiple of 3");
    if (std::gcd(a, c / 3) != 1) throw ParamError("gcd(a, c/3) must be 1 for an effective action");
    TheoremReport r;
    r.theorem = "thm4";
    auto spec = base_spec(opt);
    spec.max_weight = 2 * a + c;
    spec.fixed_gaps = std::array<std::int64_t, kDim>{a, c, 2 * a, c, a};
    spec.min_width = spec.max_width = 4 * a + 2 * c;
    spec.largest_from = {{0, kDim}, {1, 3}, {2, 4}};
    spec.require_effective = true;
    spec.require_max_weight = true;
    auto res = enumerate(spec);
    r.stats = res.stats;
    r.weight_systems = group_by_weight_system(res.configurations);
    check_unique_orbit_type(r, parametric_weight_system(a, c), *spec.fixed_gaps);
    finish(r);
    return r;
}

nlohmann::json to_json(const TheoremReport& r, bool timing) {
    using nlohmann::json;
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    json groups = json::array();
    for (const auto& g : r.weight_systems) {
        json pairings = json::array();
        for (const auto& c : g) pairings.push_back(to_json(c));
        groups.push_back(pairings);
    }
    return {{"theorem", r.theorem},
            {"pass", r.pass},
            {"checks", checks},
            {"weightSystems", groups},
            {"stats", to_json(r.stats, timing)}};
}

} // namespace hamfix
