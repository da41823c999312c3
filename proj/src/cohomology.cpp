#include "hamfix/cohomology.hpp"

#include <algorithm>
#include <numeric>

#include <nlohmann/json.hpp>

namespace hamfix {

std::string to_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

bool is_integer(const Rational& r) { return denominator(r) == 1; }

EquivariantClass operator*(const EquivariantClass& a, const EquivariantClass& b) {
    EquivariantClass out{a.m + b.m, {}};
    for (int i = 0; i < kPoints; ++i) out.restrictions[i] = a.restrictions[i] * b.restrictions[i];
    return out;
}

EquivariantClass operator+(const EquivariantClass& a, const EquivariantClass& b) {
    if (a.m != b.m) throw std::invalid_argument("sum of classes of different degree");
    EquivariantClass out{a.m, {}};
    for (int i = 0; i < kPoints; ++i) out.restrictions[i] = a.restrictions[i] + b.restrictions[i];
    return out;
}

EquivariantClass operator*(const Rational& s, const EquivariantClass& a) {
    EquivariantClass out = a;
    for (auto& x : out.restrictions) x *= s;
    return out;
}

EquivariantClass unit_class() {
    EquivariantClass x;
    x.restrictions.fill(Rational(1));
    return x;
}

EquivariantClass t_class() {
    EquivariantClass x = unit_class();
    x.m = 1;
    return x;
}

EquivariantClass u_tilde(const MomentProfile& p) {
    EquivariantClass x{1, {}};
    for (int i = 0; i < kPoints; ++i) x.restrictions[i] = Rational(-p[i]);
    return x;
}

EquivariantClass power(const EquivariantClass& x, int n) {
    EquivariantClass out = unit_class();
    for (int i = 0; i < n; ++i) out = out * x;
    return out;
}

LambdaProducts lambda_products(const WeightSystem& ws) {
    LambdaProducts lp;
    for (int i = 0; i < kPoints; ++i) {
        lp.minus[i] = ws.points[i].lambda_minus;
        lp.all[i] = ws.points[i].lambda;
    }
    return lp;
}

Checked<RingPresentation> ring_presentation(const Configuration& c) {
    Checked<RingPresentation> out;
    const auto ws = derive_weight_system(c);
    const auto& p = c.profile();
    RingPresentation rp;
    for (int i = 0; i < kPoints; ++i) {
        Rational prod(1);
        for (int j = 0; j < i; ++j) prod *= p[j] - p[i];
        rp.q[i] = Rational(ws.points[i].lambda_minus) / prod;
        const Rational a = 1 / rp.q[i];
        if (!is_integer(a)) {
            out.violations.push_back({Rule::Integrality, {i}, {},
                                      "a_" + std::to_string(i) + " = " + to_string(a) + " is not an integer"});
        } else {
            rp.a[i] = static_cast<std::int64_t>(numerator(a));
        }
    }
    for (int i = 0; i < kPoints; ++i) {
        if (rp.q[i] * rp.q[kDim - i] != rp.q[kDim]) {
            out.violations.push_back({Rule::Duality, {i, kDim - i}, {},
                                      "q_" + std::to_string(i) + " * q_" + std::to_string(kDim - i) +
                                          " != q_5"});
        }
    }
    if (out.violations.empty()) out.value = rp;
    return out;
}

Checked<EquivariantBasis> equivariant_basis(const Configuration& c) {
    Checked<EquivariantBasis> out;
    auto ring = ring_presentation(c);
    out.violations = ring.violations;
    if (!ring.value) {
        // Duality failures do not stop the basis from existing.
        bool integral = std::none_of(ring.violations.begin(), ring.violations.end(),
                                     [](const Violation& v) { return v.rule == Rule::Integrality; });
        if (!integral) return out;
    }
    const auto& p = c.profile();
    const auto ws = derive_weight_system(c);
    const auto u = u_tilde(p);
    EquivariantBasis b;
    EquivariantClass prod = unit_class();
    for (int i = 0; i < kPoints; ++i) {
        Rational prod_i(1);
        for (int j = 0; j < i; ++j) prod_i *= p[j] - p[i];
        const Rational q = Rational(ws.points[i].lambda_minus) / prod_i;
        b.a[i] = static_cast<std::int64_t>(numerator(Rational(Rational(1) / q)));
        b.alpha[i] = q * prod;
        prod = prod * (u + Rational(p[i]) * t_class());
    }
    out.value = b;
    return out;
}

EquivariantClass chern_restrictions(const WeightSystem& ws, int m) {
    EquivariantClass x{m, {}};
    for (int i = 0; i < kPoints; ++i) {
        // elementary symmetric polynomials by the usual recurrence
        std::array<std::int64_t, kPoints> e{1};
        for (auto w : ws.points[i].weights) {
            for (int r = kDim; r >= 1; --r) e[r] += e[r - 1] * w;
        }
        x.restrictions[i] = Rational(e[static_cast<std::size_t>(m)]);
    }
    return x;
}

Checked<std::vector<Rational>> expand_in_basis(const EquivariantClass& x, const EquivariantBasis& b) {
    Checked<std::vector<Rational>> out;
    const int m = x.m;
    if (m < 0 || m > kDim) throw std::invalid_argument("expansion degree must be in 0..5");
    std::vector<Rational> d(static_cast<std::size_t>(m) + 1);
    auto value_at = [&](int k) {
        Rational s(0);
        for (int i = 0; i <= std::min(k, m); ++i) s += d[i] * b.alpha[i].restrictions[k];
        return s;
    };
    for (int k = 0; k <= m; ++k) {
        d[k] = (x.restrictions[k] - value_at(k)) / b.alpha[k].restrictions[k];
    }
    for (int k = m + 1; k < kPoints; ++k) {
        if (value_at(k) != x.restrictions[k]) {
            out.violations.push_back({Rule::Consistency, {k}, {},
                                      "degree " + std::to_string(2 * m) + " class is not spanned at P" +
                                          std::to_string(k)});
        }
    }
    if (out.violations.empty()) out.value = std::move(d);
    return out;
}

Checked<ChernReport> total_chern(const Configuration& c) {
    Checked<ChernReport> out;
    const auto basis = equivariant_basis(c);
    out.violations = basis.violations;
    if (!basis) return out;
    const auto ws = derive_weight_system(c);
    ChernReport rep;
    for (int m = 1; m <= kDim; ++m) {
        auto d = expand_in_basis(chern_restrictions(ws, m), *basis);
        if (!d) {
            out.violations.insert(out.violations.end(), d.violations.begin(), d.violations.end());
            continue;
        }
        for (std::size_t i = 0; i < d->size(); ++i) {
            if (!is_integer((*d)[i])) {
                out.violations.push_back({Rule::Integrality, {static_cast<int>(i)}, {},
                                          "c_" + std::to_string(m) + " coefficient " + std::to_string(i) + " = " +
                                              to_string((*d)[i]) + " is not an integer"});
            }
        }
        if (is_integer(d->back())) rep.ordinary[m - 1] = static_cast<std::int64_t>(numerator(d->back()));
        rep.equivariant.push_back(*d);
    }
    if (out.violations.empty() && rep.ordinary[kDim - 1] != kPoints) {
        out.violations.push_back({Rule::Consistency, {kDim}, {},
                                  "top Chern number " + std::to_string(rep.ordinary[kDim - 1]) +
                                      " differs from the number of fixed points"});
    }
    if (out.violations.empty()) out.value = std::move(rep);
    return out;
}

Rational localize_integral(const EquivariantClass& x, const WeightSystem& ws) {
    Rational s(0);
    for (int i = 0; i < kPoints; ++i) s += x.restrictions[i] / ws.points[i].lambda;
    return s;
}

std::vector<Violation> check_localization(const Configuration& c) {
    std::vector<Violation> out;
    const auto ws = derive_weight_system(c);
    const auto& p = c.profile();

    // vertices, per-vertex product of tangent weights, dimension, scope
    auto check = [&](const std::vector<int>& vs, const std::array<std::int64_t, kPoints>& lambda, int d,
                     const std::string& scope) {
        for (int m = 0; m <= d; ++m) {
            Rational s(0);
            for (int v : vs) {
                Rational term(1);
                for (int r = 0; r < m; ++r) term *= -p[v];
                s += term / lambda[v];
            }
            if (m < d && s != 0) {
                out.push_back({Rule::Localization, vs, {},
                               scope + ": integral of u^" + std::to_string(m) + " is " + to_string(s) + ", not 0"});
            }
            if (m == d && s <= 0) {
                out.push_back({Rule::Localization, vs, {},
                               scope + ": symplectic volume " + to_string(s) + " is not positive"});
            }
        }
    };

    std::vector<int> all(kPoints);
    std::iota(all.begin(), all.end(), 0);
    std::array<std::int64_t, kPoints> lambda{};
    for (int i = 0; i < kPoints; ++i) lambda[i] = ws.points[i].lambda;
    check(all, lambda, kDim, "M");

    for (std::int64_t k = 2; k <= c.max_weight(); ++k) {
        for (const auto& comp : isotropy_components(c, k)) {
            const int d = comp.divisible_count[comp.vertices.front()];
            bool constant = true;
            std::array<std::int64_t, kPoints> lk{};
            for (int v : comp.vertices) {
                constant = constant && comp.divisible_count[v] == d;
                lk[v] = 1;
                for (auto w : ws.points[v].weights) {
                    if (w % k == 0) lk[v] *= w;
                }
            }
            if (!constant || !comp.saturated) continue;
            check(comp.vertices, lk, d, "Z_" + std::to_string(k) + " component");
        }
    }
    return out;
}

std::vector<Violation> cohomology_obstructions(const Configuration& c) {
    auto out = check_localization(c);
    auto chern = total_chern(c);
    out.insert(out.end(), chern.violations.begin(), chern.violations.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

nlohmann::json cohomology_report(const Configuration& c) {
    using nlohmann::json;
    const auto ws = derive_weight_system(c);
    json j;
    auto c1 = compute_c1(c);
    j["c1"] = std::holds_alternative<std::int64_t>(c1) ? json(std::get<std::int64_t>(c1)) : json(nullptr);

    auto ring = ring_presentation(c);
    if (ring) {
        json q = json::array(), a = json::array();
        for (int i = 0; i < kPoints; ++i) {
            q.push_back(to_string(ring->q[i]));
            a.push_back(ring->a[i]);
        }
        j["ring_q"] = q;
        j["a"] = a;
    } else {
        j["ring_q"] = nullptr;
        j["a"] = nullptr;
    }

    auto chern = total_chern(c);
    if (chern) {
        j["chern_ordinary"] = chern->ordinary;
        json eq = json::array();
        for (const auto& row : chern->equivariant) {
            json r = json::array();
            for (const auto& d : row) r.push_back(to_string(d));
            eq.push_back(r);
        }
        j["chern_equivariant"] = eq;
    } else {
        j["chern_ordinary"] = nullptr;
        j["chern_equivariant"] = nullptr;
    }

    const auto u5 = power(u_tilde(c.profile()), kDim);
    j["integrals"] = {{"omega5", to_string(localize_integral(u5, ws))},
                      {"euler", to_string(localize_integral(chern_restrictions(ws, kDim), ws))}};

    json vs = json::array();
    for (const auto& v : cohomology_obstructions(c)) vs.push_back(to_json(v));
    j["violations"] = vs;
    return j;
}

} // namespace hamfix
