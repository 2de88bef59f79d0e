#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "ringchain/coefficients.hpp"
#include "ringchain/special_functions.hpp"

using namespace ringchain;

namespace {

// flux in [0,1) where Lambda- (even) or Lambda+ (odd) vanishes
double flux_even(double k, double l) {
    const double K = k * k * l * l;
    return wrap(-std::atan((K + 1) / (2 * k * l) * std::tan(k * kPi)) / kPi, 1.0);
}
double flux_odd(double k, double l) {
    const double K = k * k * l * l;
    return wrap(-std::atan(2 * k * l / (K + 1) * std::tan(k * kPi)) / kPi, 1.0);
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("chain invariants") {
    CHECK_NOTHROW(ChainSpec::loose(1, 1, 2, 0.3));
    CHECK_THROWS_AS(ChainSpec::loose(0, 1, 2, 0.3), std::invalid_argument);
    CHECK_THROWS_AS(ChainSpec::loose(1, 0, 2, 0.3), std::invalid_argument);
    CHECK_THROWS_AS(ChainSpec::loose(1, 1, kTwoPi, 0.3), std::invalid_argument);
    CHECK_THROWS_AS(ChainSpec::loose(1, 1, 7, 0.3), std::invalid_argument);
    CHECK_THROWS_AS(ChainSpec::loose(1, -1, 2, 0.3), std::invalid_argument);
    CHECK_THROWS_AS(ChainSpec::loose(1, 1, 2, NAN), std::invalid_argument);
    CHECK_THROWS_AS(ChainSpec::make(Variant::Tight, 1, 0.5, 2, 0), std::invalid_argument);
    CHECK_THROWS_AS(ChainSpec::make(Variant::Merged, 1, 0.5, 2, 0), std::invalid_argument);
    CHECK_THROWS_AS(ChainSpec::merged(1, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(ChainSpec::tight(1, 0, 0), std::invalid_argument);
    const auto s = ChainSpec::loose(1, 1, 2, -0.3);
    CHECK(s.l2() == doctest::Approx(kTwoPi - 2));
    CHECK(s.reduced_flux() == doctest::Approx(0.7));
    CHECK(s.with_flux(2.25).reduced_flux() == doctest::Approx(0.25));
    CHECK(s.with_flux(2.25).A == 2.25);
    CHECK_FALSE(s.symmetric());
    CHECK(s.with_l3(kPi).symmetric());
    CHECK(ChainSpec::merged(1, 2, 0).l2() == 0.0);
    CHECK(parse_variant("merged") == Variant::Merged);
    CHECK_THROWS_AS(parse_variant("round"), std::invalid_argument);
}

TEST_CASE("rationals") {
    const auto r = make_rational(4, -6);
    CHECK(r.p == -2);
    CHECK(r.q == 3);
    CHECK(r.str() == "-2/3");
    CHECK_THROWS_AS(make_rational(1, 0), std::invalid_argument);
    const auto q = recognize_rational(0.75);
    REQUIRE(q);
    CHECK(q->p == 3);
    CHECK(q->q == 4);
    const auto big = recognize_rational(355.0 / 113.0);
    REQUIRE(big);
    CHECK(big->q == 113);
    CHECK_FALSE(recognize_rational(std::sqrt(2.0)));
    CHECK_FALSE(recognize_rational(kPi));
    CHECK(parse_rational("2/3").q == 3);
    CHECK(parse_rational("5").p == 5);
    CHECK_THROWS_AS(parse_rational("x/3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/2z"), std::invalid_argument);
}

TEST_CASE("Lambda vanishes at the exceptional flux") {
    const double k = 2.3, l = 1;
    const double Ae = flux_even(k, l);
    CHECK(Ae == doctest::Approx(0.6555).epsilon(1e-3));
    const double sc = 4 * ((k * l + 1) * (k * l + 1) + (k * l - 1) * (k * l - 1));
    CHECK(std::fabs(lambda_minus(k, l, Ae)) < 1e-6 * sc);
    CHECK(std::fabs(lambda_plus(k, l, Ae)) > 1e-2 * sc);
    const double Ao = flux_odd(k, l);
    CHECK(std::fabs(lambda_plus(k, l, Ao)) < 1e-9 * sc);
    std::mt19937_64 g(8);
    for (int t = 0; t < 100; ++t) {
        const double kk = oracle::uniform(g, 0.05, 6), ll = oracle::uniform(g, 0.2, 3);
        const double s2 = 4 * ((kk * ll + 1) * (kk * ll + 1) + (kk * ll - 1) * (kk * ll - 1));
        CHECK(std::fabs(lambda_minus(kk, ll, flux_even(kk, ll))) < 1e-9 * s2);
        CHECK(std::fabs(lambda_plus(kk, ll, flux_odd(kk, ll))) < 1e-9 * s2);
    }
}

TEST_CASE("g at kappa = 1/(2 ell) equals the sech form") {
    for (int m : {0, 1, 2}) {
        const double g = g_function(2, 1, m, 0.25);
        CHECK(g == doctest::Approx(g_sech_form(2, 1, m)).epsilon(1e-10));
    }
    CHECK(g_function(1.3, 3.1, 0, 1 / 2.6) == doctest::Approx(g_sech_form(1.3, 3.1, 0)).epsilon(1e-10));
    // extremum at l1 = 0 is +-3/4 sinh(pi/(2 ell))
    CHECK(g_sech_form(2, 0, 0) == doctest::Approx(0.75 * std::sinh(kPi / 4)).epsilon(1e-12));
    CHECK(g_sech_form(2, 0, 1) == doctest::Approx(-0.75 * std::sinh(kPi / 4)).epsilon(1e-12));
}

TEST_CASE("g is the symmetric negative condition cos(theta) = -c/a") {
    for (int m : {0, 1}) {
        const double A = m - 0.5;
        for (double kap : {0.2, 0.7, 1.5}) {
            const auto co = coefficients(ChainSpec::loose(1.2, 1.7, kPi, A), SpectralPoint::negative(kap));
            CHECK(std::fabs(co.b) < 1e-12 * co.scale);
            CHECK(g_function(1.2, 1.7, m, kap) == doctest::Approx(-co.c / co.a).epsilon(1e-9));
        }
    }
}

TEST_CASE("f is the large-l1 limit of the negative condition") {
    const double l = 1.1, l3 = 1.7, A = 0.23;
    for (double kap : {0.5, 0.8, 1.4}) {
        const auto co = coefficients(ChainSpec::loose(l, 30, l3, A), SpectralPoint::negative(kap));
        const double reduced = co.c * std::exp(2 * kap * kPi);
        CHECK(reduced / f_function(l, l3, A, kap) == doctest::Approx(0.5).epsilon(1e-9));
        CHECK(f_function_scaled(l, l3, A, kap) ==
              doctest::Approx(f_function(l, l3, A, kap) * std::exp(-2 * kap * kPi)).epsilon(1e-12));
    }
    // merged form
    for (double kap : {0.3, 1.0, 2.0}) {
        const double K = kap * kap;
        const double merged = 4 * (K - 1) * (std::cos(2 * A * kPi) - std::exp(2 * kap * kPi)) +
                              8 * kap * std::sin(2 * A * kPi);
        CHECK(f_function(1, kTwoPi, A, kap) == doctest::Approx(merged).epsilon(1e-12));
    }
    CHECK(std::isfinite(f_function_scaled(1, 2, 0.3, 400)));
}

TEST_CASE("h and calA") {
    for (double k : {0.1, 0.7, 2.3, 5.5}) {
        CHECK(h_function(k, 0) >= 0);
        CHECK(h_function(k, 0) == doctest::Approx(std::sin(k * kPi) * std::sin(k * kPi)));
    }
    const auto sf = special_functions(ChainSpec::merged(1, 2, 0.2), SpectralPoint::positive(1));
    REQUIRE(sf.calA);
    CHECK(*sf.calA == doctest::Approx(std::cos(0.4 * kPi)));
}

TEST_CASE("special function contexts") {
    const auto pos = SpectralPoint::positive(0.9), neg = SpectralPoint::negative(0.9);
    const auto a = special_functions(ChainSpec::loose(1, 1, 2, 0.3), pos);
    CHECK(a.lambda_plus);
    CHECK(a.lambda_minus);
    CHECK_FALSE(a.tau);
    CHECK_FALSE(a.h_value);
    CHECK_FALSE(a.calA);
    CHECK_FALSE(a.f_value);
    const auto b = special_functions(ChainSpec::loose(1, 1, 2, 0.5), pos);
    CHECK(b.tau);
    CHECK(b.rho);
    const auto c = special_functions(ChainSpec::loose(1, 1, kPi, 1.5), neg);
    CHECK(c.f_value);
    CHECK(c.g_value);
    CHECK_FALSE(c.lambda_plus);
    const auto d = special_functions(ChainSpec::loose(1, 1, 2, 1.5), neg);
    CHECK_FALSE(d.g_value);
    const auto e = special_functions(ChainSpec::tight(1, 2, 0.3), pos);
    CHECK(e.h_value);
    const auto f = special_functions(ChainSpec::tight(1, 2, 0.3), neg);
    CHECK_FALSE(f.f_value);
    for (const auto& s : {ChainSpec::loose(1, 1, 2, 0.3), ChainSpec::tight(1, 2, 0.3)}) {
        const auto v = special_functions(s, pos);
        for (auto o : {v.lambda_plus, v.lambda_minus, v.h_value})
            if (o) CHECK(std::isfinite(*o));
    }
    CHECK(half_integer_index(1.5) == 2);
    CHECK(half_integer_index(-0.5) == 0);
    CHECK_FALSE(half_integer_index(0.3));
    CHECK(is_integer_flux(-3.0));
    CHECK_FALSE(is_half_integer_flux(1.0));
}

TEST_CASE("tau/rho band condition equals the discriminant") {
    std::mt19937_64 g(31);
    for (int t = 0; t < 100; ++t) {
        const double l = oracle::uniform(g, 0.3, 2), l1 = oracle::uniform(g, 0.1, 5), l3 = oracle::uniform(g, 0.1, 6);
        const double k = oracle::uniform(g, 0.01, 8);
        const double A = t % 2 ? 0.5 : -1.5;
        const auto co = coefficients(ChainSpec::loose(l, l1, l3, A), SpectralPoint::positive(k));
        const double m = std::max(1.0, std::fabs(co.a) + std::fabs(co.b) + std::fabs(co.c));
        CHECK(std::fabs(half_integer_band_condition(k, l, l1, l3) - co.discriminant()) < 1e-10 * m * m);
    }
}

}  // TEST_SUITE
