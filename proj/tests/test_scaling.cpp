#include "doctest.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bubbleforge/scaling.hpp"
#include "oracles.hpp"

using namespace bubbleforge;

TEST_CASE("solve_delta_beta: closed substitution cases") {
    // delta = e^{-2s} turns the relation into 2 s e^{-s} = -1/beta
    const double e = std::numbers::e;
    const auto a = solve_delta_beta(-std::pow(e, 4) / 8.0); // s = 4
    CHECK(a.delta == doctest::Approx(std::exp(-8.0)).epsilon(1e-12));
    CHECK(a.residual < 1e-12);

    const auto b = solve_delta_beta(-std::pow(e, 6) / 12.0); // s = 6
    CHECK(b.delta == doctest::Approx(std::exp(-12.0)).epsilon(1e-12));
    CHECK(b.residual < 1e-12);
}

TEST_CASE("solve_delta_beta: monotone and the defining relation") {
    double prev = 0.0;
    bool first = true;
    for (double beta : {-1e6, -1e4, -100.0, -10.0, -2.0}) {
        const auto s = solve_delta_beta(beta);
        CHECK(s.residual < 1e-12);
        CHECK(s.delta > 0.0);
        CHECK(s.delta < std::exp(-2.0));
        // beta^2 delta |log delta|^2 = 1
        const double rel = beta * beta * s.delta * std::pow(std::log(s.delta), 2);
        CHECK(rel == doctest::Approx(1.0).epsilon(1e-10));
        if (!first) CHECK(s.delta > prev); // increasing beta -> larger delta
        prev = s.delta;
        first = false;
    }
    CHECK_THROWS_AS(solve_delta_beta(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(solve_delta_beta(-std::numbers::e / 2.0), std::invalid_argument);
}

TEST_CASE("constants: closed forms for k = 2, 3") {
    const auto c2 = constants(2);
    CHECK(c2.c1 == doctest::Approx(10.882796185405307).epsilon(1e-14));  // 2 sqrt(3) pi
    CHECK(c2.c2 == doctest::Approx(15.390597961942369).epsilon(1e-14));  // 2 sqrt(6) pi
    CHECK(c2.t_star == doctest::Approx(2.0 / 9.0).epsilon(1e-14));
    CHECK(c2.c2_tilde == doctest::Approx(23.085896942913554).epsilon(1e-14)); // 3 sqrt(6) pi

    const auto c3 = constants(3);
    CHECK(c3.c1 == doctest::Approx(37.699111843077519).epsilon(1e-14)); // 12 pi
    CHECK(c3.c2 == doctest::Approx(3.0 * std::sqrt(6.0) * std::numbers::pi).epsilon(1e-14));
    CHECK(c3.t_star == doctest::Approx(32.0 / 27.0).epsilon(1e-14));

    CHECK_THROWS_AS(constants(1), std::invalid_argument);
}

TEST_CASE("constants: invariants across k") {
    for (int k = 2; k <= 12; ++k) {
        const auto c = constants(k);
        CHECK(c.c2 / k == doctest::Approx(std::sqrt(6.0) * std::numbers::pi).epsilon(1e-14));
        CHECK(c.c1_tilde == c.c1);
        CHECK(c.c2_tilde == 1.5 * c.c2);
        CHECK(c.t_star_tilde == c.t_star); // exact: 2c1/(3c2) and c1/(1.5 c2) round identically
        CHECK(c.c1 > 0.0);
        CHECK(c.t_star > 0.0);
    }
}

TEST_CASE("t_star matches independent 1-D minimization of g") {
    for (int k = 2; k <= 8; ++k) {
        const auto c = constants(k);
        const double tmin = oracle::minimize_smooth([&](double t) { return g(k, t); },
                                                    c.t_star / 8.0, 8.0 * c.t_star);
        CHECK(std::abs(tmin - c.t_star) < 1e-10);
    }
}

TEST_CASE("g: shape") {
    CHECK(g(2, 0.0) == 0.0);
    CHECK_THROWS_AS(g(2, -0.1), std::invalid_argument);
    const auto c = constants(2);
    // stationarity at t_star by finite differences
    const double h = 1e-6;
    const double d = (g(2, c.t_star + h) - g(2, c.t_star - h)) / (2.0 * h);
    CHECK(std::abs(d) < 1e-6); // g' ~ O(h^2) around the minimum
    CHECK(g(2, c.t_star) < 0.0);
}

TEST_CASE("c_tilde_leading") {
    const auto c = constants(2);
    const double beta = -7.5;
    CHECK(std::abs(c_tilde_leading(2, beta, c.t_star_tilde)) < 1e-12);
    CHECK(c_tilde_leading(2, beta, 0.5 * c.t_star_tilde) < 0.0);
    CHECK(c_tilde_leading(2, beta, 2.0 * c.t_star_tilde) > 0.0);

    // ratio to delta reproduces -c1~ t + c2~ t^{3/2} through the defining relation
    for (double beta2 : {-3.0, -17.0, -240.0}) {
        const double delta = solve_delta_beta(beta2).delta;
        for (double t : {0.3, 1.0, 2.7}) {
            const double lhs = c_tilde_leading(3, beta2, t) / delta;
            const auto cc = constants(3);
            const double rhs = -cc.c1_tilde * t + cc.c2_tilde * std::pow(t, 1.5);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        }
    }
}
