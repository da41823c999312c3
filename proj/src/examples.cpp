#include "hamfix/examples.hpp"

#include <algorithm>
#include <numeric>

namespace hamfix {

GkmGraph orbit_gkm_graph() {
    GkmGraph g;
    g.vertices = {{"U", {-1, -2}}, {"V", {-2, -1}}, {"W", {-1, 1}},
                  {"X", {1, 2}},   {"Y", {2, 1}},   {"Z", {1, -1}}};
    enum { U, V, W, X, Y, Z };
    g.edges = {
        {U, V, {-1, 1}}, {U, Z, {2, 1}},  {U, W, {0, 1}},  {U, Y, {1, 1}},  {U, X, {1, 2}},
        {V, Z, {1, 0}},  {V, W, {1, 2}},  {V, Y, {2, 1}},  {V, X, {1, 1}},  {Z, W, {-1, 1}},
        {Z, Y, {1, 2}},  {Z, X, {0, 1}},  {W, Y, {1, 0}},  {W, X, {2, 1}},  {Y, X, {-1, 1}},
    };
    return g;
}

Configuration project_gkm(const GkmGraph& g, Vec2 xi) {
    if (g.vertices.size() != static_cast<std::size_t>(kPoints)) {
        throw DegenerateDirection("GKM graph must have 6 vertices");
    }
    auto pair = [&](const Vec2& v) { return xi[0] * v[0] + xi[1] * v[1]; };

    std::vector<int> order(kPoints);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return pair(g.vertices[a].position) < pair(g.vertices[b].position); });
    std::array<int, kPoints> rank{};
    Moments m{};
    for (int i = 0; i < kPoints; ++i) {
        rank[order[i]] = i;
        m[i] = pair(g.vertices[order[i]].position);
        if (i > 0 && m[i] == m[i - 1]) {
            throw DegenerateDirection("moment values of " + g.vertices[order[i - 1]].name + " and " +
                                      g.vertices[order[i]].name + " coincide");
        }
    }

    std::vector<WeightEdge> edges;
    for (const auto& e : g.edges) {
        const auto w = pair(e.weight);
        if (w == 0) {
            throw DegenerateDirection("edge " + g.vertices[e.a].name + g.vertices[e.b].name +
                                      " has weight orthogonal to the direction");
        }
        const int lo = std::min(rank[e.a], rank[e.b]);
        const int hi = std::max(rank[e.a], rank[e.b]);
        edges.push_back({lo, hi, w < 0 ? -w : w, 1});
    }
    Configuration c(MomentProfile(m), std::move(edges));
    return Configuration(c.profile(), c.edges(), {}, c.weight_gcd() == 1);
}

Configuration builtin_orbit() {
    return Configuration(MomentProfile({0, 1, 4, 6, 9, 10}),
                         {{0, 1, 1}, {0, 2, 4}, {0, 3, 2}, {0, 4, 3}, {0, 5, 5},
                          {1, 2, 1}, {1, 3, 5}, {1, 4, 4}, {1, 5, 3}, {2, 3, 1},
                          {2, 4, 5}, {2, 5, 2}, {3, 4, 1}, {3, 5, 4}, {4, 5, 1}},
                         "o", true);
}

Configuration builtin_cp5(const std::array<std::int64_t, kDim>& gaps) {
    for (auto g : gaps) {
        if (g < 1) throw ParamError("cp5 gaps must be positive");
    }
    const auto p = MomentProfile::from_gaps(gaps);
    std::vector<WeightEdge> edges;
    for (int i = 0; i < kPoints; ++i) {
        for (int j = i + 1; j < kPoints; ++j) edges.push_back({i, j, p.gap(i, j), 1});
    }
    return Configuration(p, std::move(edges), "cp5");
}

Configuration builtin_grass(std::int64_t a, std::int64_t b, std::int64_t c) {
    if (a < 1 || b < 1) throw ParamError("grass needs a, b >= 1");
    if (c < 2 || c % 2 != 0) throw ParamError("grass needs c even and >= 2");
    const auto p = MomentProfile::from_gaps({a, b, c, b, a});
    std::vector<WeightEdge> edges;
    for (int i = 0; i < kPoints; ++i) {
        for (int j = i + 1; j < kPoints; ++j) {
            const auto gap = p.gap(i, j);
            edges.push_back({i, j, j == kDim - i ? gap / 2 : gap, 1});
        }
    }
    return Configuration(p, std::move(edges), "grass");
}

Configuration builtin_remark_w7() {
    return Configuration(MomentProfile({0, 1, 2, 8, 9, 10}),
                         {{0, 1, 1}, {0, 2, 2}, {0, 3, 4}, {0, 4, 3}, {0, 5, 5},
                          {1, 2, 1}, {1, 3, 7}, {1, 4, 2}, {1, 5, 3}, {2, 3, 1},
                          {2, 4, 7}, {2, 5, 4}, {3, 4, 1}, {3, 5, 2}, {4, 5, 1}},
                         "remark_w7", true);
}

Configuration builtin(std::string_view name, const std::vector<std::int64_t>& params) {
    auto expect = [&](std::size_t n) {
        if (!params.empty() && params.size() != n) {
            throw ParamError(std::string(name) + " takes " + std::to_string(n) + " parameters");
        }
    };
    if (name == "o") {
        expect(0);
        return builtin_orbit();
    }
    if (name == "remark_w7") {
        expect(0);
        return builtin_remark_w7();
    }
    if (name == "cp5") {
        expect(kDim);
        std::array<std::int64_t, kDim> g{1, 1, 1, 1, 1};
        if (!params.empty()) std::copy(params.begin(), params.end(), g.begin());
        return builtin_cp5(g);
    }
    if (name == "grass") {
        expect(3);
        if (params.empty()) return builtin_grass(1, 1, 2);
        return builtin_grass(params[0], params[1], params[2]);
    }
    throw ParamError("unknown example '" + std::string(name) + "'");
}

std::vector<BuiltinInfo> builtin_catalog() {
    return {
        {"o", "", "G2 coadjoint orbit, gaps (1,3,2,3,1), c1 = 3"},
        {"cp5", "a b c d e", "CP^5 with moment gaps a..e, complete graph"},
        {"grass", "a b c", "oriented Grassmannian of 2-planes in R^7, c even"},
        {"remark_w7", "", "largest weight 7 with c1 = 3"},
    };
}

} // namespace hamfix
