#pragma once

// Fixed-point data of a Hamiltonian circle action with isolated fixed points,
// in the "edge model": every weight instance is attached to a pair of fixed
// points (lo below hi in moment order).

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace hamfix {

/// Number of fixed points handled by this library (dimension 10, n = 5).
inline constexpr int kPoints = 6;
inline constexpr int kDim = kPoints - 1;

/// Thrown when a configuration violates slot counts or basic shape rules.
class StructureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown on malformed configuration JSON.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Moments = std::array<std::int64_t, kPoints>;

/// Moment map values phi_0 < ... < phi_5, normalized so phi_0 = 0.
class MomentProfile {
public:
    MomentProfile() = default;
    explicit MomentProfile(const Moments& values);

    static MomentProfile from_gaps(const std::array<std::int64_t, kDim>& gaps);

    const Moments& values() const { return values_; }
    std::int64_t operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }
    std::int64_t gap(int lo, int hi) const { return (*this)[hi] - (*this)[lo]; }
    std::int64_t width() const { return values_.back(); }
    std::array<std::int64_t, kDim> gaps() const;

    friend auto operator<=>(const MomentProfile&, const MomentProfile&) = default;

private:
    Moments values_{0, 1, 2, 3, 4, 5};
};

struct WeightEdge {
    int lo = 0;
    int hi = 0;
    std::int64_t weight = 1;
    int mult = 1;

    friend auto operator<=>(const WeightEdge&, const WeightEdge&) = default;
};

/// Moment profile plus the multiset of weighted isotropy edges.
///
/// Construction normalizes the edge list (sorted by (lo, hi, weight), equal
/// edges merged into one multiplicity) and validates the structural
/// invariants: lo < hi, weight >= 1, mult >= 1, five slots per vertex with
/// exactly i of them downward at vertex i. Divisibility of moment gaps is a
/// constraint, not structure, and is reported by the constraints module.
class Configuration {
public:
    Configuration(MomentProfile profile, std::vector<WeightEdge> edges, std::string label = {},
                  bool effective = false);

    const MomentProfile& profile() const { return profile_; }
    const std::vector<WeightEdge>& edges() const { return edges_; }
    const std::string& label() const { return label_; }
    bool effective() const { return effective_; }

    Configuration with_label(std::string label) const;

    /// Largest edge weight.
    std::int64_t max_weight() const;
    /// gcd of all edge weights.
    std::int64_t weight_gcd() const;
    /// Total multiplicity of edges between lo and hi carrying `weight`.
    int multiplicity(int lo, int hi, std::int64_t weight) const;

    /// Structural equality: moment profile and edge multiset (labels ignored).
    friend bool operator==(const Configuration& a, const Configuration& b) {
        return a.profile_ == b.profile_ && a.edges_ == b.edges_;
    }
    /// Order used for canonicalization: moments first, then sorted edges.
    friend std::strong_ordering operator<=>(const Configuration& a, const Configuration& b);

private:
    MomentProfile profile_;
    std::vector<WeightEdge> edges_;
    std::string label_;
    bool effective_ = false;
};

/// Signed weights at one fixed point, sorted ascending.
struct PointWeights {
    std::vector<std::int64_t> weights;
    std::int64_t gamma = 0;        // sum
    std::int64_t lambda_minus = 1; // product of negative entries
    std::int64_t lambda = 1;       // product of all entries
};

struct WeightSystem {
    std::array<PointWeights, kPoints> points;

    /// Number of weights at `vertex` equal to `value` (signed).
    int count(int vertex, std::int64_t value) const;
    friend bool operator==(const WeightSystem& a, const WeightSystem& b);
};

struct IsotropyComponent {
    std::int64_t k = 2;
    std::vector<int> vertices;             // ascending
    std::array<int, kPoints> within_degree{};
    std::array<int, kPoints> divisible_count{};
    std::array<int, kPoints> within_index{}; // negative weights divisible by k
    bool saturated = true;
};

WeightSystem derive_weight_system(const Configuration& c);

/// Connected components (with at least one edge) of the subgraph of edges
/// whose weight is divisible by k.
std::vector<IsotropyComponent> isotropy_components(const Configuration& c, std::int64_t k);

/// Reversed circle action: vertex i becomes 5 - i, moments are reflected.
Configuration flip(const Configuration& c);

/// The smaller of c and flip(c).
Configuration canonicalize(const Configuration& c);

/// Flip-invariant key of the weight system (moments + per-vertex multisets).
std::string weight_system_key(const Configuration& c);

nlohmann::json to_json(const Configuration& c);
Configuration configuration_from_json(const nlohmann::json& j);
Configuration load_configuration(const std::string& path);

std::string to_string(const std::vector<std::int64_t>& values);

} // namespace hamfix
