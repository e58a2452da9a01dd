#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sosv/gb.hpp"
#include "test_util.hpp"

using namespace sosv;

namespace {

Polynomial P(const RingPtr& r, const std::string& s) { return parse_polynomial(r, s); }

Ideal twisted_cubic() {
    auto r = make_ring_xn(4);
    return Ideal(r, {P(r, "x0*x2-x1^2"), P(r, "x0*x3-x1*x2"), P(r, "x1*x3-x2^2")});
}

}  // namespace

TEST_CASE("twisted cubic generators are already a reduced basis") {
    Ideal ideal = twisted_cubic();
    const auto& gb = ideal.groebner();
    REQUIRE(gb.size() == 3);
    auto r = ideal.ring();
    // same three binomials, monic under grevlex (leading monomials x1^2, x1*x2, x2^2)
    std::vector<Polynomial> expect{P(r, "x1^2-x0*x2"), P(r, "x1*x2-x0*x3"), P(r, "x2^2-x1*x3")};
    for (const auto& e : expect) CHECK(std::count(gb.begin(), gb.end(), e) == 1);
}

TEST_CASE("principal and monomial ideals") {
    auto r = make_ring_xn(1);
    Ideal principal(r, {P(r, "x0")});
    CHECK(principal.groebner() == std::vector<Polynomial>{P(r, "x0")});

    auto r4 = make_ring({"x", "y", "z", "w"});
    Ideal fig3(r4, {P(r4, "x*w"), P(r4, "y*w")});
    const auto& gb = fig3.groebner();
    CHECK(gb.size() == 2);
    CHECK(std::count(gb.begin(), gb.end(), P(r4, "x*w")) == 1);
    CHECK(std::count(gb.begin(), gb.end(), P(r4, "y*w")) == 1);
}

TEST_CASE("cubic surface multiplier identity reduces to zero") {
    auto r = make_ring({"x", "y", "z", "w"});
    auto g = P(r, "x^2+y^2+z^2+3*w^2");
    auto f = P(r, "x^2+y^2+z^2-3*w^2");
    auto q = P(r, "x*y*z-w^3");
    auto squares = P(r,
                     "(x^2-w^2)^2 + 2*(x*y-z*w)^2 + 2*(x*z-y*w)^2 + (y^2-w^2)^2 + "
                     "2*(y*z-x*w)^2 + (z^2-w^2)^2");
    Polynomial lhs = g * f - P(r, "12") * Polynomial::variable(r, 3) * q - squares;
    Ideal zero_ideal(r, {});
    CHECK(normal_form(lhs, zero_ideal).is_zero());
}

TEST_CASE("normal form single reduction and zero") {
    Ideal ideal = twisted_cubic();
    auto r = ideal.ring();
    // one reduction step by x1^2 - x0*x2 (grevlex leading monomial is x1^2)
    CHECK(normal_form(P(r, "x1^2"), ideal) == P(r, "x0*x2"));
    CHECK(normal_form(P(r, "x1^2 - x0*x2"), ideal).is_zero());
    CHECK(normal_form(Polynomial(r), ideal).is_zero());
}

TEST_CASE("normal form is idempotent and linear") {
    Ideal ideal = twisted_cubic();
    auto r = ideal.ring();
    SplitMix64 rng(23);
    for (int trial = 0; trial < 25; ++trial) {
        auto p = testutil::random_poly(rng, r, 6, 4);
        auto q = testutil::random_poly(rng, r, 6, 4);
        auto np = normal_form(p, ideal);
        CHECK(normal_form(np, ideal) == np);
        CHECK(normal_form(p + q, ideal) == normal_form(p, ideal) + normal_form(q, ideal));
    }
}

TEST_CASE("unit ideal has basis {1}") {
    auto r = make_ring_xn(2);
    Ideal unit(r, {P(r, "x0"), P(r, "x1"), P(r, "x0+x1")});
    CHECK(!unit.is_unit_ideal());
    Ideal really_unit(r, {P(r, "x0^2"), P(r, "x0^2 + x1^2"), P(r, "x1^2 - x0^2"),
                          P(r, "x0*x1 + x1^2"), P(r, "x0*x1")});
    // <x0^2, x1^2, x0*x1> is not unit either; build one that is via linear forms
    Ideal linear_all(r, {P(r, "x0"), P(r, "x1")});
    CHECK(!linear_all.is_unit_ideal());  // irrelevant ideal, not unit
}

TEST_CASE("buchberger criterion: all S-polynomials reduce to zero") {
    auto check_spairs = [](const Ideal& ideal) {
        const auto& gb = ideal.groebner();
        for (std::size_t i = 0; i < gb.size(); ++i)
            for (std::size_t j = i + 1; j < gb.size(); ++j) {
                Monomial l = gb[i].leading_monomial().lcm(gb[j].leading_monomial());
                auto qi = gb[i].leading_monomial().divide_into(l);
                auto qj = gb[j].leading_monomial().divide_into(l);
                Polynomial s =
                    Polynomial::monomial_term(ideal.ring(), qi, Rational(1) / gb[i].leading_coeff()) * gb[i] -
                    Polynomial::monomial_term(ideal.ring(), qj, Rational(1) / gb[j].leading_coeff()) * gb[j];
                CHECK(normal_form(s, gb).is_zero());
            }
    };
    check_spairs(twisted_cubic());
    auto r = make_ring_xn(4);
    check_spairs(Ideal(r, {P(r, "x0^2+x1^2-x2^2-x3^2"), P(r, "x0*x1-x2*x3")}));
    SplitMix64 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Polynomial> gens;
        for (int g = 0; g < 3; ++g) {
            auto p = testutil::random_homogeneous(rng, r, 2, 4);
            if (!p.is_zero()) gens.push_back(p);
        }
        if (gens.empty()) continue;
        check_spairs(Ideal(r, gens));
    }
}

TEST_CASE("hilbert function values") {
    Ideal tc = twisted_cubic();
    CHECK(hilbert_function(tc, 1) == 4);
    CHECK(hilbert_function(tc, 2) == 7);
    CHECK(hilbert_function(tc, 3) == 10);
    for (int j = 1; j <= 6; ++j) CHECK(hilbert_function(tc, j) == 3 * j + 1);

    auto r3 = make_ring_xn(3);
    Ideal zero(r3, {});
    CHECK(hilbert_function(zero, 2) == 6);
}

TEST_CASE("hilbert function matches enumeration oracle") {
    std::vector<Ideal> samples;
    samples.push_back(twisted_cubic());
    auto r = make_ring_xn(4);
    samples.push_back(Ideal(r, {P(r, "x0*x2-x1^2"), P(r, "x1*x3-x2^2")}));
    samples.push_back(Ideal(r, {P(r, "x0*x1"), P(r, "x2*x3"), P(r, "x0*x3")}));
    samples.push_back(Ideal(r, {P(r, "x0^3 + x1^3 + x2^3 + x3^3")}));
    for (const auto& ideal : samples)
        for (int j = 0; j <= 6; ++j)
            CHECK(hilbert_function(ideal, j) == Int(testutil::hf_by_enumeration(ideal, j)));
}

TEST_CASE("standard monomials") {
    Ideal tc = twisted_cubic();
    auto std1 = standard_monomials(tc, 1);
    CHECK(std1.size() == 4);
    auto std2 = standard_monomials(tc, 2);
    CHECK(std2.size() == 7);
}

TEST_CASE("invariants of the twisted cubic") {
    auto inv = numerical_invariants(twisted_cubic());
    CHECK(inv.dim == 1);
    CHECK(inv.codim == 2);
    CHECK(inv.degree == 3);
    REQUIRE(inv.genus.has_value());
    CHECK(*inv.genus == 0);
}

TEST_CASE("invariants of complete intersections") {
    auto r = make_ring_xn(4);
    // (2,2): degree 4, genus 1, hilbreg 1
    Ideal ci22(r, {P(r, "x0*x2-x1^2"), P(r, "x1*x3-x2^2")});
    auto inv22 = numerical_invariants(ci22);
    CHECK(inv22.dim == 1);
    CHECK(inv22.degree == 4);
    REQUIRE(inv22.genus.has_value());
    CHECK(*inv22.genus == 1);
    CHECK(inv22.hilbreg == 1);

    // (2,3): degree 6, genus 4, hilbreg = 2+3-3 = 2
    Ideal ci23(r, {P(r, "x0*x3-x1*x2"), P(r, "x0^3+x1^3+x2^3+x3^3")});
    auto inv23 = numerical_invariants(ci23);
    CHECK(inv23.dim == 1);
    CHECK(inv23.degree == 6);
    REQUIRE(inv23.genus.has_value());
    CHECK(*inv23.genus == 4);
    CHECK(inv23.hilbreg == 2);
}

TEST_CASE("complete intersection invariant formulas") {
    // degree = prod d_i; genus = (1/2) prod d_i (sum d_i - n - 1) + 1;
    // hilbreg = sum d_i - n from the function/polynomial agreement definition
    auto r = make_ring_xn(4);
    struct Case {
        std::vector<Polynomial> gens;
        long d1, d2;
    };
    std::vector<Case> cases{
        {{P(r, "x0*x2-x1^2"), P(r, "x1*x3-x2^2")}, 2, 2},
        {{P(r, "x0*x3-x1*x2"), P(r, "x0^3+x1^3+x2^3+x3^3")}, 2, 3},
    };
    for (const auto& c : cases) {
        auto inv = numerical_invariants(Ideal(r, c.gens));
        CHECK(inv.degree == c.d1 * c.d2);
        REQUIRE(inv.genus.has_value());
        CHECK(*inv.genus == c.d1 * c.d2 * (c.d1 + c.d2 - 4) / 2 + 1);
        CHECK(inv.hilbreg == c.d1 + c.d2 - 3);
    }
}

TEST_CASE("invariants of a plane quartic") {
    auto r = make_ring_xn(3);
    Ideal quartic(r, {P(r, "x0^4+x1^4+x2^4")});
    auto inv = numerical_invariants(quartic);
    CHECK(inv.dim == 1);
    CHECK(inv.degree == 4);
    REQUIRE(inv.genus.has_value());
    CHECK(*inv.genus == 3);
    CHECK(inv.hilbreg == 2);
}

TEST_CASE("genus consistency: HF(j) = deg*j + 1 - genus beyond hilbreg") {
    auto check_curve = [](const Ideal& ideal) {
        auto inv = numerical_invariants(ideal);
        REQUIRE(inv.dim == 1);
        REQUIRE(inv.genus.has_value());
        for (int j = inv.hilbreg; j <= inv.hilbreg + 5; ++j)
            CHECK(hilbert_function(ideal, j) == inv.degree * j + 1 - *inv.genus);
    };
    check_curve(twisted_cubic());
    auto r = make_ring_xn(3);
    check_curve(Ideal(r, {P(r, "x0^4+x1^4+x2^4")}));
}

TEST_CASE("invariants reject the unit ideal") {
    auto r = make_ring_xn(2);
    Ideal artinian(r, {P(r, "x0^2"), P(r, "x0*x1"), P(r, "x1^2")});
    CHECK_THROWS(numerical_invariants(artinian));
}

TEST_CASE("dimension zero: points have constant Hilbert polynomial") {
    auto r = make_ring_xn(3);
    // three coordinate points
    Ideal pts(r, {P(r, "x0*x1"), P(r, "x0*x2"), P(r, "x1*x2")});
    auto inv = numerical_invariants(pts);
    CHECK(inv.dim == 0);
    CHECK(inv.codim == 2);
    CHECK(inv.degree == 3);
    CHECK(!inv.genus.has_value());
}

TEST_CASE("inhomogeneous generators are rejected") {
    auto r = make_ring_xn(2);
    CHECK_THROWS_AS(Ideal(r, {P(r, "x0^2 + x1")}), std::invalid_argument);
}
