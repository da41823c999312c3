#include "oracle.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "hamfix/cohomology.hpp"
#include "hamfix/constraints.hpp"

namespace oracle {

using namespace hamfix;

namespace {

using Gaps = std::array<std::int64_t, kDim>;

// Vertex v hands out 5 - v upward slots to higher vertices; vertex u accepts
// exactly u downward ones. Edge lists are built in nondecreasing (hi, w)
// order per vertex so each multiset appears once.
void structures(const MomentProfile& p, std::int64_t max_weight, bool divisible,
                const std::function<void(const std::vector<WeightEdge>&)>& emit) {
    std::vector<WeightEdge> edges;
    std::array<int, kPoints> open{};
    for (int u = 0; u < kPoints; ++u) open[u] = u;

    std::function<void(int, int, int, std::int64_t)> go = [&](int v, int left, int min_hi, std::int64_t min_w) {
        if (left == 0) {
            if (open[v + 1] != 0) return;
            if (v + 1 == kDim) {
                emit(edges);
                return;
            }
            go(v + 1, kDim - (v + 1), v + 2, 1);
            return;
        }
        for (int u = min_hi; u < kPoints; ++u) {
            if (open[u] == 0) continue;
            for (std::int64_t w = (u == min_hi ? min_w : 1); w <= max_weight; ++w) {
                if (divisible && p.gap(v, u) % w != 0) continue;
                --open[u];
                edges.push_back({v, u, w, 1});
                go(v, left - 1, u, w);
                edges.pop_back();
                ++open[u];
            }
        }
    };
    go(0, kDim, 1, 1);
}

bool gaps_ok(const Gaps& g, const SearchSpec& spec) {
    if (spec.symmetry_gaps && (g[0] != g[4] || g[1] != g[3])) return false;
    if (spec.fixed_gaps) {
        Gaps f = *spec.fixed_gaps, r = f;
        std::reverse(r.begin(), r.end());
        if (g != f && g != r) return false;
    }
    return true;
}

Rational lambda(const PointWeights& pw) {
    Rational l = 1;
    for (auto w : pw.weights) l *= w;
    return l;
}

} // namespace

std::uint64_t count_structures(const MomentProfile& p, std::int64_t max_weight) {
    std::uint64_t n = 0;
    structures(p, max_weight, false, [&](const std::vector<WeightEdge>&) { ++n; });
    return n;
}

std::vector<Configuration> brute_force(const SearchSpec& spec) {
    std::set<Configuration> out;
    // an edge whose weight does not divide its gap is a Divisibility violation on its own
    const bool divisible = spec.rules & rule_bit(Rule::Divisibility);
    const RuleMask cohomology_rules = rule_bit(Rule::Integrality) | rule_bit(Rule::Duality) |
                                      rule_bit(Rule::Consistency) | rule_bit(Rule::Localization);
    const std::int64_t lo = std::max<std::int64_t>(spec.min_width, kDim);
    for (std::int64_t width = lo; width <= spec.max_width; ++width) {
        // all compositions of width into five positive parts
        std::function<void(Gaps&, int, std::int64_t)> gaps = [&](Gaps& g, int i, std::int64_t rest) {
            if (i == kDim - 1) {
                g[i] = rest;
                if (!gaps_ok(g, spec)) return;
                structures(MomentProfile::from_gaps(g), spec.max_weight, divisible, [&](const std::vector<WeightEdge>& e) {
                    const auto c = canonicalize(Configuration(MomentProfile::from_gaps(g), e));
                    CheckFlags flags;
                    flags.rules = spec.rules;
                    const auto report = check_all(c, flags);
                    if (!report.pass) return;
                    if (spec.rules & cohomology_rules) {
                        for (const auto& v : cohomology_obstructions(c)) {
                            if (spec.rules & rule_bit(v.rule)) return;
                        }
                    }
                    if (spec.c1 && report.c1 != spec.c1) return;
                    if (spec.require_max_weight && c.max_weight() != spec.max_weight) return;
                    if (spec.require_effective && c.weight_gcd() != 1) return;
                    for (auto [a, b] : spec.largest_from) {
                        if (!weight_between(c, a, b, c.max_weight())) return;
                    }
                    out.insert(Configuration(c.profile(), c.edges(), {}, c.weight_gcd() == 1));
                });
                return;
            }
            for (std::int64_t x = 1; x <= rest - (kDim - 1 - i); ++x) {
                g[i] = x;
                gaps(g, i + 1, rest - x);
            }
        };
        Gaps g{};
        gaps(g, 0, width);
    }
    return {out.begin(), out.end()};
}

std::optional<std::int64_t> c1(const Configuration& c) {
    const auto ws = derive_weight_system(c);
    const auto& p = c.profile();
    std::array<std::int64_t, kPoints> gamma{};
    for (int i = 0; i < kPoints; ++i) {
        for (auto w : ws.points[i].weights) gamma[i] += w;
    }
    if ((gamma[0] - gamma[kDim]) % p.width() != 0) return std::nullopt;
    const auto k = (gamma[0] - gamma[kDim]) / p.width();
    for (int i = 0; i < kPoints; ++i) {
        for (int j = i + 1; j < kPoints; ++j) {
            if (gamma[i] - gamma[j] != k * p.gap(i, j)) return std::nullopt;
        }
    }
    return k;
}

Rational integral_u_power(const Configuration& c, int m) {
    const auto ws = derive_weight_system(c);
    Rational sum = 0;
    for (int i = 0; i < kPoints; ++i) {
        Rational f = 1;
        for (int n = 0; n < m; ++n) f *= -c.profile()[i];
        sum += f / lambda(ws.points[i]);
    }
    return sum;
}

Rational integral_euler(const Configuration& c) {
    // sigma_5 of five weights is their product, so each term is 1
    const auto ws = derive_weight_system(c);
    Rational sum = 0;
    for (int i = 0; i < kPoints; ++i) sum += lambda(ws.points[i]) / lambda(ws.points[i]);
    return sum;
}

std::vector<Rational> ring_q(const Configuration& c) {
    const auto ws = derive_weight_system(c);
    std::vector<Rational> q;
    for (int i = 0; i < kPoints; ++i) {
        Rational num = 1, den = 1;
        for (auto w : ws.points[i].weights) {
            if (w < 0) num *= w;
        }
        for (int j = 0; j < i; ++j) den *= c.profile()[j] - c.profile()[i];
        q.push_back(num / den);
    }
    return q;
}

} // namespace oracle
