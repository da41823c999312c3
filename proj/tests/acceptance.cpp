// One line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hamfix/cohomology.hpp"
#include "hamfix/constraints.hpp"
#include "hamfix/examples.hpp"
#include "hamfix/search.hpp"
#include "oracle.hpp"

using namespace hamfix;

namespace {

struct Outcome {
    bool pass = true;
    std::string note;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!note.empty()) note += "; ";
            note += what;
        }
    }
};

std::optional<std::int64_t> c1_of(const Configuration& c) {
    auto k = compute_c1(c);
    if (auto* v = std::get_if<std::int64_t>(&k)) return *v;
    return std::nullopt;
}

std::vector<Configuration> fixtures() {
    return {builtin("o"), builtin("cp5", {1, 1, 1, 1, 1}), builtin("grass", {1, 1, 2}), builtin("remark_w7")};
}

void theorem_checks(Outcome& out, const TheoremReport& r) {
    for (const auto& c : r.checks) out.require(c.pass, c.name + (c.detail.empty() ? "" : " (" + c.detail + ")"));
}

Outcome c1_reproduction() {
    Outcome o;
    o.require(c1_of(builtin("o")) == 3, "o");
    o.require(c1_of(builtin("cp5", {1, 1, 1, 1, 1})) == 6, "cp5");
    o.require(c1_of(builtin("grass", {1, 1, 2})) == 5, "grass");
    o.require(c1_of(builtin("remark_w7")) == 3, "remark_w7");
    for (const auto& c : fixtures()) o.require(c1_of(c) == oracle::c1(c), c.label() + " disagrees with oracle");
    return o;
}

Outcome ring_reproduction() {
    Outcome o;
    const auto r = ring_presentation(builtin("o"));
    o.require(r && r->q == std::array<Rational, kPoints>{1, 1, Rational(1, 3), Rational(1, 6), Rational(1, 18),
                                                           Rational(1, 18)},
              "o");
    const auto w = ring_presentation(builtin("remark_w7"));
    o.require(w && w->q == std::array<Rational, kPoints>{1, 1, 1, Rational(1, 12), Rational(1, 12), Rational(1, 12)},
              "remark_w7");
    for (const auto& c : fixtures()) {
        const auto p = ring_presentation(c);
        if (!p) {
            o.require(false, c.label() + " has no integral ring");
            continue;
        }
        for (int i = 0; i < kPoints; ++i) o.require(p->q[i] * p->q[kDim - i] == p->q[kDim], c.label() + " duality");
    }
    return o;
}

Outcome chern_reproduction() {
    Outcome o;
    const auto ch = total_chern(builtin("o"));
    if (!ch) {
        o.require(false, "no Chern classes");
        return o;
    }
    o.require(ch->ordinary == std::array<std::int64_t, kDim>{3, 13, 22, 30, 6}, "ordinary coefficients");
    o.require(ch->equivariant.size() == 5 && ch->equivariant[0] == std::vector<Rational>{15, 3}, "c1 expansion");
    o.require(ch->equivariant.size() == 5 && ch->equivariant[1] == std::vector<Rational>{85, 39, 13},
              "c2 expansion");
    return o;
}

Outcome localization() {
    Outcome o;
    const auto orbit = builtin("o");
    const auto ws = derive_weight_system(orbit);
    const auto u = u_tilde(orbit.profile());
    for (int m = 0; m <= kDim; ++m) {
        const auto v = localize_integral(power(u, m), ws);
        o.require(v == oracle::integral_u_power(orbit, m), "oracle at m=" + std::to_string(m));
        o.require(v == (m == kDim ? Rational(18) : Rational(0)), "u^" + std::to_string(m));
    }
    const auto basis = equivariant_basis(orbit);
    o.require(basis && localize_integral(basis->alpha[kDim], ws) == 1, "alpha_5");
    for (const auto& c : fixtures()) {
        const auto w = derive_weight_system(c);
        o.require(localize_integral(unit_class(), w) == 0, c.label() + " integral of 1");
        o.require(localize_integral(chern_restrictions(w, kDim), w) == 6, c.label() + " integral of c5");
    }
    return o;
}

Outcome theorem1() {
    Outcome o;
    const auto r4 = verify_theorem1(40, 4);
    theorem_checks(o, r4);
    const auto r5 = verify_theorem1(40, 5);
    theorem_checks(o, r5);
    return o;
}

Outcome theorem3() {
    Outcome o;
    theorem_checks(o, verify_theorem3());
    return o;
}

Outcome theorem4() {
    Outcome o;
    for (auto [a, c] : {std::pair<std::int64_t, std::int64_t>{1, 3}, {2, 3}, {1, 6}}) {
        const auto r = verify_theorem4(a, c);
        for (const auto& ch : r.checks) {
            o.require(ch.pass, "(" + std::to_string(a) + "," + std::to_string(c) + ") " + ch.name);
        }
    }
    o.require(parametric_weight_system(1, 3) == derive_weight_system(builtin("o")), "(1,3) is the orbit");
    return o;
}

Outcome theorem2() {
    Outcome o;
    theorem_checks(o, verify_theorem2());
    return o;
}

Outcome gkm_projection() {
    Outcome o;
    o.require(canonicalize(project_gkm(orbit_gkm_graph(), {1, 2})) == canonicalize(builtin("o")), "(1,2)");
    return o;
}

Outcome property_suites() {
    Outcome o;
    // (i) pruned vs unpruned vs brute force; relaxed masks keep the pools nonempty
    const std::vector<RuleMask> masks = {kAllRules, rule_bit(Rule::Divisibility),
                                         rule_bit(Rule::Divisibility) | rule_bit(Rule::ModK),
                                         rule_bit(Rule::Divisibility) | rule_bit(Rule::C1Consistency)};
    for (std::int64_t w = 1; w <= 2; ++w) {
        for (std::int64_t width = 5; width <= 6; ++width) {
            for (auto m : masks) {
                SearchSpec s;
                s.max_weight = w;
                s.max_width = width;
                s.rules = m;
                const auto pruned = enumerate(s).configurations;
                const auto tag = "w" + std::to_string(w) + " width " + std::to_string(width) + " mask " +
                                 std::to_string(m);
                o.require(pruned == oracle::brute_force(s), "oracle differs at " + tag);
                // fully unpruned runs visit every structure; relaxed masks only at width 5
                if (m == kAllRules || width == 5) {
                    auto off = s;
                    off.pruning = PruningToggles::none();
                    o.require(pruned == enumerate(off).configurations, "unpruned differs at " + tag);
                }
            }
        }
    }
    // (ii) mutation sensitivity
    const auto orbit = builtin("o");
    for (std::size_t i = 0; i < orbit.edges().size(); ++i) {
        for (std::int64_t w = 1; w <= 12; ++w) {
            if (w == orbit.edges()[i].weight) continue;
            auto edges = orbit.edges();
            edges[i].weight = w;
            const Configuration m(orbit.profile(), edges);
            const auto r = check_all(m);
            o.require(!r.pass || r.c1 != 3, "undetected mutation of edge " + std::to_string(i) + " to " + std::to_string(w));
        }
    }
    // (iii) determinism
    for (auto s : {SearchSpec{}, SearchSpec{}}) {
        s.max_weight = 5;
        s.max_width = 14;
        std::string first;
        for (int t : {1, 2, default_thread_count()}) {
            s.threads = t;
            const auto d = to_json(enumerate(s)).dump();
            if (first.empty()) first = d;
            o.require(d == first, "thread count " + std::to_string(t) + " changes output");
        }
    }
    return o;
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"c1 reproduction", c1_reproduction},
        {"ring reproduction", ring_reproduction},
        {"Chern reproduction", chern_reproduction},
        {"localization identities", localization},
        {"largest weight at least 5 (maxWeight 4, maxWidth 40)", theorem1},
        {"uniqueness at weight 5 and width 10", theorem3},
        {"parametric uniqueness (1,3) (2,3) (1,6)", theorem4},
        {"equivalence of the three weight-5 conditions", theorem2},
        {"GKM projection", gkm_projection},
        {"property suites", property_suites},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
        std::printf("%s %2zu %s (%.2fs)%s%s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    dt.count(), o.note.empty() ? "" : ": ", o.note.c_str());
        std::fflush(stdout);
        failed += !o.pass;
    }
    return failed ? 1 : 0;
}
