#include "bubbleforge/symmetry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bubbleforge {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;

// Reduce an angle to (-pi, pi] before trigonometric evaluation.
double wrap_angle(double a) {
    a = std::fmod(a, two_pi);
    if (a > std::numbers::pi) a -= two_pi;
    if (a <= -std::numbers::pi) a += two_pi;
    return a;
}
} // namespace

void SymmetrySpec::validate() const {
    if (k < 2) throw std::invalid_argument("SymmetrySpec: k must be >= 2");
    if (q < 1) throw std::invalid_argument("SymmetrySpec: q must be >= 1");
}

double PolygonConfig::phase_angle() const {
    return static_cast<double>(r - 1) * two_pi / (static_cast<double>(q) * k);
}

void PolygonConfig::validate() const {
    if (k < 1) throw std::invalid_argument("PolygonConfig: k must be >= 1");
    if (!(t > 0.0)) throw std::invalid_argument("PolygonConfig: t must be > 0");
    if (!(delta > 0.0) || delta > std::exp(-2.0))
        throw std::invalid_argument("PolygonConfig: delta must lie in (0, e^-2]");
    if (t * delta > 1.0) throw std::invalid_argument("PolygonConfig: t*delta must be <= 1");
    if (q < 1) throw std::invalid_argument("PolygonConfig: q must be >= 1");
    if (r < 1 || r > q) throw std::invalid_argument("PolygonConfig: r must lie in {1,...,q}");
}

Vec3 rotate(double theta, const Vec3& x) {
    const double a = wrap_angle(theta);
    const double c = std::cos(a), s = std::sin(a);
    return {c * x.x1 - s * x.x2, s * x.x1 + c * x.x2, x.x3};
}

double reduction_rotation(int r, const SymmetrySpec& spec) {
    spec.validate();
    if (r < 1 || r > spec.q)
        throw std::invalid_argument("reduction_rotation: r must lie in {1,...,q}");
    return static_cast<double>(r - 1) / spec.q * two_pi / spec.k;
}

Vec3 kelvin_point(const Vec3& x) {
    const double n2 = x.norm_sq();
    if (n2 == 0.0) throw std::domain_error("kelvin_point: undefined at the origin");
    return x * (1.0 / n2);
}

std::function<double(const Vec3&)> kelvin_pullback(std::function<double(const Vec3&)> f) {
    return [f = std::move(f)](const Vec3& x) {
        const double n2 = x.norm_sq();
        if (n2 == 0.0) throw std::domain_error("kelvin_pullback: undefined at the origin");
        return f(x * (1.0 / n2)) / std::sqrt(n2);
    };
}

std::vector<Vec3> polygon_centers(const PolygonConfig& cfg) {
    cfg.validate();
    const double s = cfg.t * cfg.delta;
    const double radius = std::sqrt(std::max(0.0, 1.0 - s * s));
    const double phase = cfg.phase_angle();
    std::vector<Vec3> centers;
    centers.reserve(cfg.k);
    for (int j = 0; j < cfg.k; ++j) {
        const double a = wrap_angle(two_pi * j / cfg.k + phase);
        centers.push_back({radius * std::cos(a), radius * std::sin(a), 0.0});
    }
    return centers;
}

bool in_fundamental_domain(const Vec3& x, const PolygonConfig& cfg) {
    cfg.validate();
    if (cfg.k == 1) return true;
    const double a = wrap_angle(std::atan2(x.x2, x.x1) - cfg.phase_angle());
    const double half = std::numbers::pi / cfg.k;
    return a > -half && a <= half;
}

double symmetry_violation(const std::function<double(const Vec3&)>& f,
                          const SymmetrySpec& spec,
                          std::span<const Vec3> samples,
                          const GeneratorMask& mask) {
    spec.validate();
    if (samples.empty()) throw std::invalid_argument("symmetry_violation: samples must be nonempty");

    double worst = 0.0;
    auto update = [&](double a, double b) { worst = std::max(worst, std::abs(a - b)); };

    for (const Vec3& x : samples) {
        if (x.norm_sq() == 0.0)
            throw std::invalid_argument("symmetry_violation: samples must avoid the origin");
        const double fx = f(x);
        if (mask.even_x2) update(f({x.x1, -x.x2, x.x3}), fx);
        if (mask.even_x3) update(f({x.x1, x.x2, -x.x3}), fx);
        if (mask.rotation) update(f(rotate(two_pi / spec.k, x)), fx);
        if (mask.kelvin) {
            const double n2 = x.norm_sq();
            const double pulled = f(x * (1.0 / n2)) / std::sqrt(n2);
            update(pulled, mask.kelvin_parity < 0 ? -fx : fx);
        }
        if (mask.rot_family && spec.q >= 2) {
            for (int r = 2; r <= spec.q; ++r)
                update(f(rotate(reduction_rotation(r, spec), x)), fx);
        }
    }
    return worst;
}

} // namespace bubbleforge
