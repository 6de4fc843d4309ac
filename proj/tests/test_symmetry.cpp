#include "doctest.h"

#include <cmath>
#include <numbers>

#include "bubbleforge/fields.hpp"
#include "bubbleforge/sampling.hpp"
#include "bubbleforge/symmetry.hpp"

using namespace bubbleforge;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("rotate: basic actions") {
    const Vec3 e1{1, 0, 0};
    const Vec3 q = rotate(pi / 2.0, e1);
    CHECK(std::abs(q.x1) < 1e-15);
    CHECK(q.x2 == doctest::Approx(1.0));
    CHECK(q.x3 == 0.0);

    const Vec3 x{0.3, -1.7, 2.2};
    const Vec3 same = rotate(0.0, x);
    CHECK(same.x1 == x.x1);
    CHECK(same.x2 == x.x2);

    Vec3 y{1, 2, 3};
    for (int i = 0; i < 3; ++i) y = rotate(2.0 * pi / 3.0, y);
    CHECK(std::abs(y.x1 - 1.0) < 1e-12);
    CHECK(std::abs(y.x2 - 2.0) < 1e-12);
    CHECK(y.x3 == 3.0);
}

TEST_CASE("rotate: norm preservation and additivity") {
    const auto pts = annulus_samples(50, 7);
    for (const Vec3& x : pts) {
        const double t1 = 0.37, t2 = -1.91;
        CHECK(std::abs(rotate(t1, x).norm() - x.norm()) < 1e-14 * x.norm());
        const Vec3 a = rotate(t1, rotate(t2, x));
        const Vec3 b = rotate(t1 + t2, x);
        CHECK(dist(a, b) < 1e-13 * (1.0 + x.norm()));
    }
}

TEST_CASE("reduction_rotation") {
    CHECK(reduction_rotation(1, {5, 4}) == 0.0);
    CHECK(reduction_rotation(2, {2, 3}) == doctest::Approx(pi / 3.0));
    const SymmetrySpec spec{4, 5};
    CHECK(reduction_rotation(5, spec) == doctest::Approx(4.0 / 5.0 * 2.0 * pi / 4.0));
    CHECK_THROWS_AS(reduction_rotation(0, spec), std::invalid_argument);
    CHECK_THROWS_AS(reduction_rotation(6, spec), std::invalid_argument);
}

TEST_CASE("kelvin_point") {
    const Vec3 p = kelvin_point({2, 0, 0});
    CHECK(p.x1 == doctest::Approx(0.5));
    const Vec3 s{0.6, 0.8, 0.0}; // unit sphere
    CHECK(dist(kelvin_point(s), s) < 1e-15);
    for (const Vec3& x : annulus_samples(100, 11))
        CHECK(dist(kelvin_point(kelvin_point(x)), x) < 1e-12 * (1.0 + x.norm()));
    CHECK_THROWS_AS(kelvin_point({0, 0, 0}), std::domain_error);
}

TEST_CASE("kelvin_pullback") {
    auto Uf = [](const Vec3& x) { return eval_U(x); };
    auto pulled = kelvin_pullback(Uf);
    for (const Vec3& x : annulus_samples(100, 13))
        CHECK(std::abs(pulled(x) - eval_U(x)) < 1e-12);

    auto one = kelvin_pullback([](const Vec3&) { return 1.0; });
    const Vec3 p{0, 3, 4};
    CHECK(one(p) == doctest::Approx(1.0 / 5.0));

    auto f = [](const Vec3& x) { return x.x1 + 0.5 * x.x3 * x.x3; };
    auto twice = kelvin_pullback(kelvin_pullback(f));
    for (const Vec3& x : annulus_samples(100, 17))
        CHECK(std::abs(twice(x) - f(x)) < 1e-12 * (1.0 + std::abs(f(x))));
}

TEST_CASE("polygon_centers: limits and regularity") {
    // k = 2 with vanishing scale approaches (+-1, 0, 0)
    PolygonConfig cfg{2, 1.0, 1e-9, 1, 1};
    auto c = polygon_centers(cfg);
    REQUIRE(c.size() == 2);
    CHECK(dist(c[0], {1, 0, 0}) < 1e-12);
    CHECK(dist(c[1], {-1, 0, 0}) < 1e-12);

    PolygonConfig sq{4, 1.0, 1e-9, 1, 1};
    auto v = polygon_centers(sq);
    REQUIRE(v.size() == 4);
    for (const Vec3& p : v) {
        CHECK(std::abs(p.norm() - 1.0) < 1e-12);
        CHECK(p.x3 == 0.0);
    }
    CHECK(dist(v[1], {0, 1, 0}) < 1e-12);

    PolygonConfig any{5, 0.7, 3e-2, 2, 2};
    auto w = polygon_centers(any);
    const double side = dist(w[0], w[1]);
    for (std::size_t j = 0; j + 1 < w.size(); ++j)
        CHECK(dist(w[j], w[j + 1]) == doctest::Approx(side).epsilon(1e-12));
    // rotating the r=1 list by 2 pi / k permutes it cyclically
    PolygonConfig base{5, 0.7, 3e-2, 1, 1};
    auto u = polygon_centers(base);
    for (std::size_t j = 0; j < u.size(); ++j)
        CHECK(dist(rotate(2.0 * pi / 5.0, u[j]), u[(j + 1) % u.size()]) < 1e-12);
}

TEST_CASE("in_fundamental_domain agrees with nearest-center comparison") {
    PolygonConfig cfg{3, 1.2, 1e-2, 1, 1};
    const auto centers = polygon_centers(cfg);
    CHECK(in_fundamental_domain(centers[0], cfg));
    CHECK_FALSE(in_fundamental_domain(centers[1], cfg));

    int checked = 0;
    for (const Vec3& x : annulus_samples(1000, 23)) {
        double d0 = dist(x, centers[0]);
        double dmin = 1e300;
        for (std::size_t j = 1; j < centers.size(); ++j) dmin = std::min(dmin, dist(x, centers[j]));
        if (std::abs(d0 - dmin) < 1e-9) continue; // skip the tie set
        CHECK(in_fundamental_domain(x, cfg) == (d0 < dmin));
        ++checked;
    }
    CHECK(checked > 900);
}

TEST_CASE("rotated copies of the wedge tile space") {
    PolygonConfig cfg{4, 1.0, 1e-3, 1, 1};
    for (const Vec3& x : annulus_samples(300, 29)) {
        int hits = 0;
        for (int j = 0; j < cfg.k; ++j)
            if (in_fundamental_domain(rotate(2.0 * pi * j / cfg.k, x), cfg)) ++hits;
        CHECK(hits == 1);
    }
}

TEST_CASE("symmetry_violation") {
    const auto samples = annulus_samples(200, 31);
    const SymmetrySpec spec{3, 2};

    auto Uf = field_U();
    CHECK(symmetry_violation([&](const Vec3& x) { return Uf(x); }, spec, samples) < 1e-12);

    PolygonConfig cfg{3, 1.0, 1e-3, 1, 1};
    auto V = field_V(cfg);
    GeneratorMask mask; // V is not R_{r,k}-family invariant
    mask.rot_family = false;
    CHECK(symmetry_violation([&](const Vec3& x) { return V(x); }, spec, samples, mask) < 1e-12);

    const double bad = symmetry_violation([](const Vec3& x) { return x.x2; }, spec, samples);
    CHECK(bad > 1e-3);
}
