#include <doctest.h>

#include <nlohmann/json.hpp>

#include "hamfix/cohomology.hpp"
#include "hamfix/examples.hpp"
#include "oracle.hpp"

using namespace hamfix;

namespace {

std::vector<Configuration> fixtures() {
    return {builtin("o"), builtin("cp5"), builtin("grass", {1, 1, 2}), builtin("remark_w7")};
}

std::vector<Rational> row(std::initializer_list<int> v) {
    std::vector<Rational> out;
    for (int x : v) out.emplace_back(x);
    return out;
}

} // namespace

TEST_CASE("rational formatting") {
    CHECK(to_string(Rational(1, 3)) == "1/3");
    CHECK(to_string(Rational(-4, 2)) == "-2/1");
    CHECK(is_integer(Rational(6, 3)));
    CHECK_FALSE(is_integer(Rational(1, 18)));
}

TEST_CASE("class arithmetic") {
    const auto o = builtin_orbit();
    const auto u = u_tilde(o.profile());
    CHECK(u.m == 1);
    CHECK(u.restrictions[2] == -4);
    const auto u2 = power(u, 2);
    CHECK(u2 == u * u);
    CHECK(u2.restrictions[5] == 100);
    CHECK(power(u, 0) == unit_class());
    const auto s = u + t_class();
    CHECK(s.restrictions[1] == 0);
    CHECK((Rational(2) * u).restrictions[3] == -12);
}

TEST_CASE("lambda products of the orbit") {
    const auto ws = derive_weight_system(builtin_orbit());
    const auto l = lambda_products(ws);
    CHECK(l.minus[0] == 1);
    CHECK(l.minus[1] == -1);
    CHECK(l.all[0] == 120);
    CHECK(l.all[kDim] == -120);
}

TEST_CASE("ring presentation of the orbit") {
    const auto r = ring_presentation(builtin_orbit());
    REQUIRE(r);
    const std::array<Rational, kPoints> q{1, 1, Rational(1, 3), Rational(1, 6), Rational(1, 18), Rational(1, 18)};
    CHECK(r->q == q);
    CHECK(r->a == std::array<std::int64_t, kPoints>{1, 1, 3, 6, 18, 18});
}

TEST_CASE("ring presentation of the weight-7 configuration") {
    const auto r = ring_presentation(builtin_remark_w7());
    REQUIRE(r);
    const std::array<Rational, kPoints> q{1, 1, 1, Rational(1, 12), Rational(1, 12), Rational(1, 12)};
    CHECK(r->q == q);
}

TEST_CASE("ring generators agree with the oracle and satisfy duality") {
    for (const auto& c : fixtures()) {
        CAPTURE(c.label());
        const auto r = ring_presentation(c);
        REQUIRE(r);
        const auto q = oracle::ring_q(c);
        for (int i = 0; i < kPoints; ++i) {
            CHECK(r->q[i] == q[i]);
            CHECK(r->q[i] * r->q[kDim - i] == r->q[kDim]);
        }
    }
}

TEST_CASE("basis restrictions vanish below the diagonal") {
    const auto b = equivariant_basis(builtin_orbit());
    REQUIRE(b);
    const auto ws = derive_weight_system(builtin_orbit());
    for (int i = 0; i < kPoints; ++i) {
        for (int j = 0; j < i; ++j) CHECK(b->alpha[i].restrictions[j] == 0);
        CHECK(b->alpha[i].restrictions[i] == ws.points[i].lambda_minus);
    }
    CHECK(localize_integral(b->alpha[kDim], ws) == 1);
}

TEST_CASE("Chern classes of the orbit") {
    const auto ch = total_chern(builtin_orbit());
    REQUIRE(ch);
    CHECK(ch->ordinary == std::array<std::int64_t, kDim>{3, 13, 22, 30, 6});
    REQUIRE(ch->equivariant.size() == 5u);
    CHECK(ch->equivariant[0] == row({15, 3}));
    CHECK(ch->equivariant[1] == row({85, 39, 13}));
}

TEST_CASE("expansion reconstructs the class") {
    const auto o = builtin_orbit();
    const auto b = equivariant_basis(o);
    REQUIRE(b);
    const auto ws = derive_weight_system(o);
    for (int m = 1; m <= kDim; ++m) {
        const auto x = chern_restrictions(ws, m);
        const auto d = expand_in_basis(x, *b);
        REQUIRE(d);
        EquivariantClass sum{m, {}};
        for (int i = 0; i <= m; ++i) sum = sum + (*d)[static_cast<std::size_t>(i)] * (power(t_class(), m - i) * b->alpha[i]);
        CHECK(sum == x);
    }
}

TEST_CASE("localization on the orbit") {
    const auto o = builtin_orbit();
    const auto ws = derive_weight_system(o);
    const auto u = u_tilde(o.profile());
    for (int m = 0; m <= kDim; ++m) {
        const auto got = localize_integral(power(u, m), ws);
        CHECK(got == oracle::integral_u_power(o, m));
        CHECK(got == (m == kDim ? Rational(18) : Rational(0)));
    }
    CHECK(localize_integral(chern_restrictions(ws, kDim), ws) == 6);
}

TEST_CASE("localization on every fixture") {
    for (const auto& c : fixtures()) {
        CAPTURE(c.label());
        const auto ws = derive_weight_system(c);
        CHECK(localize_integral(unit_class(), ws) == 0);
        CHECK(localize_integral(chern_restrictions(ws, kDim), ws) == oracle::integral_euler(c));
        CHECK(localize_integral(chern_restrictions(ws, kDim), ws) == 6);
        CHECK(check_localization(c).empty());
        CHECK(cohomology_obstructions(c).empty());
    }
}

TEST_CASE("Chern numbers of the other fixtures") {
    const auto cp5 = total_chern(builtin_cp5({1, 1, 1, 1, 1}));
    REQUIRE(cp5);
    CHECK(cp5->ordinary == std::array<std::int64_t, kDim>{6, 15, 20, 15, 6});
    for (const auto& c : fixtures()) {
        const auto ch = total_chern(c);
        REQUIRE(ch);
        CHECK(ch->ordinary[kDim - 1] == 6);
        CHECK(ch->ordinary[0] == *oracle::c1(c));
    }
}

TEST_CASE("report json") {
    const auto j = cohomology_report(builtin_orbit());
    CHECK(j["c1"] == 3);
    CHECK(j["ring_q"] == nlohmann::json{"1/1", "1/1", "1/3", "1/6", "1/18", "1/18"});
    CHECK(j["chern_ordinary"] == nlohmann::json{3, 13, 22, 30, 6});
    CHECK(j["integrals"]["omega5"] == "18/1");
    CHECK(j["violations"].empty());
}
