#include "hamfix/model.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

namespace hamfix {

MomentProfile::MomentProfile(const Moments& values) : values_(values) {
    for (int i = 1; i < kPoints; ++i) {
        if (values_[i] <= values_[i - 1]) {
            throw StructureError("moment values must be strictly increasing");
        }
    }
    const auto base = values_[0];
    for (auto& v : values_) v -= base;
}

MomentProfile MomentProfile::from_gaps(const std::array<std::int64_t, kDim>& gaps) {
    Moments m{};
    for (int i = 0; i < kDim; ++i) m[i + 1] = m[i] + gaps[i];
    return MomentProfile(m);
}

std::array<std::int64_t, kDim> MomentProfile::gaps() const {
    std::array<std::int64_t, kDim> g{};
    for (int i = 0; i < kDim; ++i) g[i] = values_[i + 1] - values_[i];
    return g;
}

Configuration::Configuration(MomentProfile profile, std::vector<WeightEdge> edges, std::string label,
                             bool effective)
    : profile_(profile), label_(std::move(label)), effective_(effective) {
    for (const auto& e : edges) {
        if (e.lo < 0 || e.hi >= kPoints || e.lo >= e.hi) {
            throw StructureError("edge (" + std::to_string(e.lo) + "," + std::to_string(e.hi) +
                                 ") must satisfy 0 <= lo < hi <= 5");
        }
        if (e.weight < 1) throw StructureError("edge weight must be positive");
        if (e.mult < 1) throw StructureError("edge multiplicity must be positive");
    }
    std::sort(edges.begin(), edges.end(), [](const WeightEdge& a, const WeightEdge& b) {
        return std::tie(a.lo, a.hi, a.weight) < std::tie(b.lo, b.hi, b.weight);
    });
    for (const auto& e : edges) {
        if (!edges_.empty() && edges_.back().lo == e.lo && edges_.back().hi == e.hi &&
            edges_.back().weight == e.weight) {
            edges_.back().mult += e.mult;
        } else {
            edges_.push_back(e);
        }
    }

    std::array<int, kPoints> up{}, down{};
    for (const auto& e : edges_) {
        up[e.lo] += e.mult;
        down[e.hi] += e.mult;
    }
    for (int i = 0; i < kPoints; ++i) {
        if (up[i] + down[i] != kDim) {
            throw StructureError("vertex " + std::to_string(i) + " has " + std::to_string(up[i] + down[i]) +
                                 " weight slots, expected 5");
        }
        if (down[i] != i) {
            throw StructureError("vertex " + std::to_string(i) + " has " + std::to_string(down[i]) +
                                 " negative weights, expected " + std::to_string(i));
        }
    }
}

Configuration Configuration::with_label(std::string label) const {
    Configuration c = *this;
    c.label_ = std::move(label);
    return c;
}

std::int64_t Configuration::max_weight() const {
    std::int64_t m = 0;
    for (const auto& e : edges_) m = std::max(m, e.weight);
    return m;
}

std::int64_t Configuration::weight_gcd() const {
    std::int64_t g = 0;
    for (const auto& e : edges_) g = std::gcd(g, e.weight);
    return g;
}

int Configuration::multiplicity(int lo, int hi, std::int64_t weight) const {
    int m = 0;
    for (const auto& e : edges_) {
        if (e.lo == lo && e.hi == hi && e.weight == weight) m += e.mult;
    }
    return m;
}

std::strong_ordering operator<=>(const Configuration& a, const Configuration& b) {
    if (auto cmp = a.profile_ <=> b.profile_; cmp != 0) return cmp;
    return std::lexicographical_compare_three_way(a.edges_.begin(), a.edges_.end(), b.edges_.begin(),
                                                  b.edges_.end());
}

int WeightSystem::count(int vertex, std::int64_t value) const {
    const auto& w = points[vertex].weights;
    return static_cast<int>(std::count(w.begin(), w.end(), value));
}

bool operator==(const WeightSystem& a, const WeightSystem& b) {
    for (int i = 0; i < kPoints; ++i) {
        if (a.points[i].weights != b.points[i].weights) return false;
    }
    return true;
}

WeightSystem derive_weight_system(const Configuration& c) {
    WeightSystem ws;
    for (const auto& e : c.edges()) {
        for (int m = 0; m < e.mult; ++m) {
            ws.points[e.lo].weights.push_back(e.weight);
            ws.points[e.hi].weights.push_back(-e.weight);
        }
    }
    for (int i = 0; i < kPoints; ++i) {
        auto& p = ws.points[i];
        if (p.weights.size() != static_cast<std::size_t>(kDim)) {
            throw StructureError("vertex " + std::to_string(i) + " does not carry 5 weights");
        }
        std::sort(p.weights.begin(), p.weights.end());
        for (auto w : p.weights) {
            p.gamma += w;
            p.lambda *= w;
            if (w < 0) p.lambda_minus *= w;
        }
    }
    return ws;
}

std::vector<IsotropyComponent> isotropy_components(const Configuration& c, std::int64_t k) {
    std::array<int, kPoints> parent{};
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::array<bool, kPoints> touched{};
    for (const auto& e : c.edges()) {
        if (e.weight % k != 0) continue;
        touched[e.lo] = touched[e.hi] = true;
        parent[find(e.lo)] = find(e.hi);
    }

    const auto ws = derive_weight_system(c);
    std::vector<IsotropyComponent> out;
    std::array<int, kPoints> slot{};
    slot.fill(-1);
    for (int v = 0; v < kPoints; ++v) {
        if (!touched[v]) continue;
        const int root = find(v);
        if (slot[root] < 0) {
            slot[root] = static_cast<int>(out.size());
            out.emplace_back();
            out.back().k = k;
        }
        out[slot[root]].vertices.push_back(v);
    }
    for (auto& comp : out) {
        for (const auto& e : c.edges()) {
            if (e.weight % k != 0) continue;
            if (std::find(comp.vertices.begin(), comp.vertices.end(), e.lo) == comp.vertices.end()) continue;
            comp.within_degree[e.lo] += e.mult;
            comp.within_degree[e.hi] += e.mult;
        }
        for (int v : comp.vertices) {
            for (auto w : ws.points[v].weights) {
                if (w % k != 0) continue;
                ++comp.divisible_count[v];
                if (w < 0) ++comp.within_index[v];
            }
            if (comp.within_degree[v] != comp.divisible_count[v]) comp.saturated = false;
        }
    }
    return out;
}

Configuration flip(const Configuration& c) {
    Moments m{};
    const auto& p = c.profile();
    for (int i = 0; i < kPoints; ++i) m[i] = p.width() - p[kDim - i];
    std::vector<WeightEdge> edges;
    edges.reserve(c.edges().size());
    for (const auto& e : c.edges()) edges.push_back({kDim - e.hi, kDim - e.lo, e.weight, e.mult});
    return Configuration(MomentProfile(m), std::move(edges), c.label(), c.effective());
}

Configuration canonicalize(const Configuration& c) {
    Configuration f = flip(c);
    return (f < c) ? f : c;
}

std::string weight_system_key(const Configuration& c) {
    auto key_of = [](const Configuration& x) {
        const auto ws = derive_weight_system(x);
        std::ostringstream os;
        for (auto v : x.profile().values()) os << v << ',';
        for (const auto& p : ws.points) {
            os << '|';
            for (auto w : p.weights) os << w << ',';
        }
        return os.str();
    };
    return std::min(key_of(c), key_of(flip(c)));
}

nlohmann::json to_json(const Configuration& c) {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : c.edges()) {
        edges.push_back({{"lo", e.lo}, {"hi", e.hi}, {"w", e.weight}, {"mult", e.mult}});
    }
    nlohmann::json moment = nlohmann::json::array();
    for (auto v : c.profile().values()) moment.push_back(v);
    return {{"label", c.label()}, {"moment", moment}, {"edges", edges}, {"effective", c.effective()}};
}

Configuration configuration_from_json(const nlohmann::json& j) {
    try {
        if (!j.is_object()) throw ParseError("configuration must be a JSON object");
        const auto& moment = j.at("moment");
        if (!moment.is_array() || moment.size() != static_cast<std::size_t>(kPoints)) {
            throw ParseError("\"moment\" must be an array of 6 integers");
        }
        Moments m{};
        for (int i = 0; i < kPoints; ++i) m[i] = moment.at(i).get<std::int64_t>();
        if (m[0] != 0) throw ParseError("\"moment\" must start at 0");
        std::vector<WeightEdge> edges;
        for (const auto& e : j.at("edges")) {
            edges.push_back({e.at("lo").get<int>(), e.at("hi").get<int>(), e.at("w").get<std::int64_t>(),
                             e.value("mult", 1)});
        }
        return Configuration(MomentProfile(m), std::move(edges), j.value("label", std::string{}),
                             j.value("effective", false));
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("malformed configuration: ") + ex.what());
    }
}

Configuration load_configuration(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(path + ": " + ex.what());
    }
    return configuration_from_json(j);
}

std::string to_string(const std::vector<std::int64_t>& values) {
    std::string s = "{";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(values[i]);
    }
    return s + "}";
}

} // namespace hamfix
