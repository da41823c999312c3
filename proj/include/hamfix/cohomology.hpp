#pragma once

// Equivariant cohomology from fixed-point restrictions, in exact rationals.
// Every class handled here is homogeneous: its restriction to P_i is
// x_i * t^m, so a class is stored as the six coefficients x_i.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json_fwd.hpp>

#include "hamfix/constraints.hpp"
#include "hamfix/model.hpp"

namespace hamfix {

using Rational = boost::multiprecision::cpp_rational;

/// "p/q" with q > 0, always written with the slash.
std::string to_string(const Rational& r);
bool is_integer(const Rational& r);

struct EquivariantClass {
    int m = 0; // complex degree; cohomological degree is 2m
    std::array<Rational, kPoints> restrictions{};

    int degree() const { return 2 * m; }

    friend EquivariantClass operator*(const EquivariantClass& a, const EquivariantClass& b);
    friend EquivariantClass operator+(const EquivariantClass& a, const EquivariantClass& b);
    friend EquivariantClass operator*(const Rational& s, const EquivariantClass& a);
    friend bool operator==(const EquivariantClass&, const EquivariantClass&) = default;
};

/// The unit class 1.
EquivariantClass unit_class();
/// The generator t of H*(CP^infty), restricting to t everywhere.
EquivariantClass t_class();
/// Equivariant extension of [omega]: restriction -phi_i t.
EquivariantClass u_tilde(const MomentProfile& p);
EquivariantClass power(const EquivariantClass& x, int n);

/// Both lists are returned together; lambda_minus[0] = 1.
struct LambdaProducts {
    std::array<std::int64_t, kPoints> minus{};
    std::array<std::int64_t, kPoints> all{};
};
LambdaProducts lambda_products(const WeightSystem& ws);

/// Multipliers alpha_i = q_i [omega]^i and the integers a_i = 1/q_i.
struct RingPresentation {
    std::array<Rational, kPoints> q{};
    std::array<std::int64_t, kPoints> a{};
};

/// Either a value or the obstructions that prevented it.
template <class T>
struct Checked {
    std::optional<T> value;
    std::vector<Violation> violations;

    explicit operator bool() const { return value.has_value(); }
    const T& operator*() const { return *value; }
    const T* operator->() const { return &*value; }
};

Checked<RingPresentation> ring_presentation(const Configuration& c);

struct EquivariantBasis {
    std::array<EquivariantClass, kPoints> alpha{};
    std::array<std::int64_t, kPoints> a{};
};

Checked<EquivariantBasis> equivariant_basis(const Configuration& c);

/// Restriction sigma_m(W_i) t^m.
EquivariantClass chern_restrictions(const WeightSystem& ws, int m);

/// Coefficients d_0..d_m with x = sum_i d_i t^{m-i} alpha_i. Rows P_0..P_m
/// determine d; rows above are checked (Consistency violation on mismatch).
Checked<std::vector<Rational>> expand_in_basis(const EquivariantClass& x, const EquivariantBasis& b);

struct ChernReport {
    std::vector<std::vector<Rational>> equivariant; // m = 1..5
    std::array<std::int64_t, kDim> ordinary{};      // d_{m,m}
};

Checked<ChernReport> total_chern(const Configuration& c);

/// Sum over fixed points of x_i / Lambda_i (coefficient of t^{m-5}).
Rational localize_integral(const EquivariantClass& x, const WeightSystem& ws);

/// Localization identities that hold on M and on every isotropy component:
/// integrals of u~^m vanish below the top degree and the top one is positive.
std::vector<Violation> check_localization(const Configuration& c);

/// Ring integrality and duality, basis expansion of all Chern classes,
/// and localization identities.
std::vector<Violation> cohomology_obstructions(const Configuration& c);

nlohmann::json cohomology_report(const Configuration& c);

} // namespace hamfix
