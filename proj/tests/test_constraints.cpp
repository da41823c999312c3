#include <doctest.h>

#include <nlohmann/json.hpp>

#include "hamfix/constraints.hpp"
#include "hamfix/examples.hpp"
#include "oracle.hpp"

using namespace hamfix;

namespace {

std::optional<std::int64_t> c1_of(const Configuration& c) {
    auto k = compute_c1(c);
    if (auto* v = std::get_if<std::int64_t>(&k)) return *v;
    return std::nullopt;
}

bool has_rule(const CheckReport& r, Rule rule) {
    for (const auto& v : r.violations) {
        if (v.rule == rule) return true;
    }
    return false;
}

// The orbit with the weight of one edge changed.
std::vector<Configuration> weight_mutations(const Configuration& c, std::int64_t max_weight) {
    std::vector<Configuration> out;
    for (std::size_t i = 0; i < c.edges().size(); ++i) {
        for (std::int64_t w = 1; w <= max_weight; ++w) {
            if (w == c.edges()[i].weight) continue;
            auto edges = c.edges();
            edges[i].mult -= 1;
            edges.push_back({edges[i].lo, edges[i].hi, w, 1});
            std::erase_if(edges, [](const WeightEdge& e) { return e.mult == 0; });
            out.emplace_back(c.profile(), edges);
        }
    }
    return out;
}

} // namespace

TEST_CASE("rule names round trip") {
    for (int r = 0; r < kRuleCount; ++r) {
        const auto rule = static_cast<Rule>(r);
        CHECK(rule_from_name(rule_name(rule)) == rule);
    }
    CHECK_FALSE(rule_from_name("NoSuchRule"));
}

TEST_CASE("c1 of the fixtures agrees with the oracle") {
    CHECK(c1_of(builtin("o")) == 3);
    CHECK(c1_of(builtin("cp5")) == 6);
    CHECK(c1_of(builtin("grass", {1, 1, 2})) == 5);
    CHECK(c1_of(builtin("remark_w7")) == 3);
    for (const auto& c : {builtin("o"), builtin("cp5"), builtin("grass", {1, 1, 2}), builtin("remark_w7"),
                          builtin_cp5({2, 1, 3, 1, 2}), builtin_grass(1, 2, 4)}) {
        CHECK(c1_of(c) == oracle::c1(c));
        CHECK(c1_of(flip(c)) == c1_of(c));
    }
}

TEST_CASE("fixtures satisfy every constraint") {
    for (const auto& c : {builtin("o"), builtin("cp5"), builtin("grass", {1, 1, 2}), builtin("remark_w7")}) {
        CAPTURE(c.label());
        const auto r = check_all(c);
        CHECK(r.pass);
        CHECK(r.violations.empty());
    }
}

TEST_CASE("divisibility violation is located") {
    auto edges = builtin_orbit().edges();
    // P0 -> P1 has gap 1; give it weight 2
    for (auto& e : edges) {
        if (e.lo == 0 && e.hi == 1) e.weight = 2;
    }
    const Configuration c(builtin_orbit().profile(), edges);
    const auto r = check_all(c);
    CHECK_FALSE(r.pass);
    REQUIRE(has_rule(r, Rule::Divisibility));
    const auto j = to_json(r);
    bool located = false;
    for (const auto& v : j["violations"]) {
        if (v["rule"] == "Divisibility") located = located || v["location"]["vertices"] == nlohmann::json{0, 1};
    }
    CHECK(located);
    CHECK(std::is_sorted(r.violations.begin(), r.violations.end()));
}

TEST_CASE("effectiveness") {
    const auto doubled = builtin_cp5({2, 2, 2, 2, 2});
    CHECK(doubled.weight_gcd() == 2);
    CHECK(check_all(doubled).pass);
    CheckFlags flags;
    flags.require_effective = true;
    const auto r = check_all(doubled, flags);
    CHECK_FALSE(r.pass);
    CHECK(has_rule(r, Rule::Effectiveness));
    CHECK(check_all(builtin_orbit(), flags).pass);
}

TEST_CASE("rules mask switches checkers off") {
    auto edges = builtin_orbit().edges();
    for (auto& e : edges) {
        if (e.lo == 0 && e.hi == 1) e.weight = 2;
    }
    const Configuration c(builtin_orbit().profile(), edges);
    CheckFlags flags;
    flags.rules = kAllRules & ~rule_bit(Rule::Divisibility);
    const auto r = check_all(c, flags);
    CHECK_FALSE(has_rule(r, Rule::Divisibility));
    flags.rules = 0;
    CHECK(check_all(c, flags).pass);
}

TEST_CASE("every single-edge weight mutation of the orbit is detected") {
    const auto o = builtin_orbit();
    const auto muts = weight_mutations(o, 12);
    CHECK(muts.size() >= 100);
    for (const auto& m : muts) {
        const auto r = check_all(m);
        CHECK((!r.pass || r.c1 != 3));
    }
}

TEST_CASE("weight_between") {
    const auto o = builtin_orbit();
    CHECK(weight_between(o, 0, 5, 5));
    CHECK(weight_between(o, 1, 3, 5));
    CHECK(weight_between(o, 2, 4, 5));
    CHECK_FALSE(weight_between(o, 1, 4, 5));
    CHECK(weight_between(o, 0, 1, 1));
    CHECK_FALSE(weight_between(o, 5, 0, 5));
}

TEST_CASE("gamma relation holds on the orbit") {
    CHECK(check_gamma_relation(builtin_orbit(), 3).empty());
}
