#pragma once

// Built-in configurations: the G2 coadjoint orbit, CP^5 and the oriented
// Grassmannian families, the weight-7 configuration with c1 = 3, and the
// T^2 GKM graph of the orbit together with its projection to a subcircle.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hamfix/model.hpp"

namespace hamfix {

class ParamError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DegenerateDirection : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Vec2 = std::array<std::int64_t, 2>;

struct GkmGraph {
    struct Vertex {
        std::string name;
        Vec2 position;
    };
    struct Edge {
        int a = 0;
        int b = 0;
        Vec2 weight{};
    };
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
};

/// T^2 moment polytope UVWXYZ with its 15 edge weight vectors.
GkmGraph orbit_gkm_graph();

/// Restrict the torus action to the circle generated by xi.
/// Throws DegenerateDirection if xi kills an edge weight or merges two
/// moment values.
Configuration project_gkm(const GkmGraph& g, Vec2 xi);

Configuration builtin_orbit();
/// Complete graph with w = phi_j - phi_i.
Configuration builtin_cp5(const std::array<std::int64_t, kDim>& gaps);
/// Requires a, b >= 1 and c even >= 2.
Configuration builtin_grass(std::int64_t a, std::int64_t b, std::int64_t c);
Configuration builtin_remark_w7();

/// Dispatch by name ("o", "cp5", "grass", "remark_w7"); empty params select
/// the unit instance of a family.
Configuration builtin(std::string_view name, const std::vector<std::int64_t>& params = {});

struct BuiltinInfo {
    std::string name;
    std::string params;
    std::string summary;
};
std::vector<BuiltinInfo> builtin_catalog();

} // namespace hamfix
