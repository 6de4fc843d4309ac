#include "bubbleforge/sampling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bubbleforge {

double radical_inverse(std::uint64_t i, std::uint32_t base) {
    double inv = 1.0 / base;
    double f = inv;
    double v = 0.0;
    while (i > 0) {
        v += f * static_cast<double>(i % base);
        i /= base;
        f *= inv;
    }
    (void)inv;
    return v;
}

namespace {
Vec3 halton_point(std::uint64_t i, double rmin, double rmax) {
    const double h1 = radical_inverse(i, 2);
    const double h2 = radical_inverse(i, 3);
    const double h3 = radical_inverse(i, 5);
    const double r = rmin * std::pow(rmax / rmin, h1);
    const double u = 2.0 * h2 - 1.0;            // cos of polar angle
    const double phi = 2.0 * std::numbers::pi * h3;
    const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
    return {r * s * std::cos(phi), r * s * std::sin(phi), r * u};
}
} // namespace

std::vector<Vec3> annulus_samples(std::size_t n, std::uint64_t seed, double rmin, double rmax) {
    if (!(rmin > 1e-8) || !(rmax > rmin))
        throw std::invalid_argument("annulus_samples: need 1e-8 < rmin < rmax");
    std::vector<Vec3> pts;
    pts.reserve(n);
    for (std::size_t j = 0; j < n; ++j)
        pts.push_back(halton_point(seed + 1 + j, rmin, rmax));
    return pts;
}

std::vector<Vec3> annulus_samples_avoiding(std::size_t n, std::uint64_t seed,
                                           const std::vector<Vec3>& centers,
                                           double exclusion,
                                           double rmin, double rmax) {
    if (!(rmin > 1e-8) || !(rmax > rmin))
        throw std::invalid_argument("annulus_samples_avoiding: need 1e-8 < rmin < rmax");
    std::vector<Vec3> pts;
    pts.reserve(n);
    std::uint64_t i = seed + 1;
    while (pts.size() < n) {
        const Vec3 p = halton_point(i++, rmin, rmax);
        bool ok = true;
        for (const Vec3& c : centers)
            if (dist(p, c) < exclusion) { ok = false; break; }
        if (ok) pts.push_back(p);
    }
    return pts;
}

} // namespace bubbleforge
