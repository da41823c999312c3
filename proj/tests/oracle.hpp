#pragma once

// Reference implementations used as test oracles. They share no code with
// the pruned search or the class-based cohomology beyond the model types.

#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hamfix/model.hpp"
#include "hamfix/search.hpp"

namespace oracle {

using Rational = boost::multiprecision::cpp_rational;

/// Every structurally valid configuration under the spec bounds, passed
/// through the final checks and filters, canonicalized, sorted, distinct.
std::vector<hamfix::Configuration> brute_force(const hamfix::SearchSpec& spec);

/// Number of structurally valid edge multisets on one moment profile.
std::uint64_t count_structures(const hamfix::MomentProfile& p, std::int64_t max_weight);

/// (Gamma_0 - Gamma_5) / width when every pair agrees, else nullopt.
std::optional<std::int64_t> c1(const hamfix::Configuration& c);

/// sum_i f_i / Lambda_i for f_i = (-phi_i)^m.
Rational integral_u_power(const hamfix::Configuration& c, int m);

/// sum_i sigma_5(W_i) / Lambda_i, the top equivariant Chern class.
Rational integral_euler(const hamfix::Configuration& c);

/// Lambda_i^- / prod_{j<i} (phi_j - phi_i).
std::vector<Rational> ring_q(const hamfix::Configuration& c);

} // namespace oracle
