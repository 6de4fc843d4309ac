#include "bubbleforge/multicomponent.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bubbleforge/sampling.hpp"

namespace bubbleforge {

namespace {

double ipow(double v, int p) {
    double r = 1.0;
    for (int i = 0; i < p; ++i) r *= v;
    return r;
}

double family_angle(const MSystemConfig& ms, int r) {
    return static_cast<double>(r - 1) / ms.q * 2.0 * std::numbers::pi / ms.k;
}

// Precondition samples keep off the bubble cores: roundoff in the rotated
// evaluation is amplified by the field gradient there.
std::vector<Vec3> precondition_samples(const ScalarField& v) {
    std::vector<Vec3> centers;
    for (const HotSpot& h : v.hot_spots()) centers.push_back(h.center);
    return annulus_samples_avoiding(64, 977, centers, 0.05);
}

} // namespace

void MSystemConfig::validate() const {
    if (q < 1) throw std::invalid_argument("MSystemConfig: q must be >= 1");
    if (k < 2) throw std::invalid_argument("MSystemConfig: k must be >= 2");
    if (cfg.k != k || cfg.q != q || regime.q != q)
        throw std::invalid_argument("MSystemConfig: inconsistent k or q across fields");
    cfg.validate();
    regime.validate();
}

ComponentSet build_components(const ScalarField& u, const ScalarField& v, const MSystemConfig& ms) {
    ms.validate();
    const auto samples = precondition_samples(v);
    const double angle_k = 2.0 * std::numbers::pi / ms.k;
    for (const Vec3& x : samples) {
        if (std::abs(v(rotate(angle_k, x)) - v(x)) > 1e-9)
            throw std::invalid_argument("build_components: v lacks the 2*pi/k invariance");
        for (int r = 2; r <= ms.q; ++r)
            if (std::abs(u(rotate(family_angle(ms, r), x)) - u(x)) > 1e-9)
                throw std::invalid_argument("build_components: u lacks the R_{r,k} invariance");
    }

    ComponentSet cs;
    for (int i = 1; i <= ms.q; ++i) cs.components.push_back(rotate_field(v, family_angle(ms, i)));
    cs.components.push_back(u);

    const Vec3 probe{0.9, 0.21, 0.13}; // off the symmetry planes and the x3-axis
    cs.distinct_at_probe = true;
    std::vector<double> vals;
    for (const ScalarField& c : cs.components) vals.push_back(c(probe));
    for (std::size_t a = 0; a < vals.size(); ++a)
        for (std::size_t b = a + 1; b < vals.size(); ++b)
            if (std::abs(vals[a] - vals[b]) <= 1e-12 * (1.0 + std::abs(vals[a])))
                cs.distinct_at_probe = false;
    return cs;
}

double reduction_identity_check(const ScalarField& v, const MSystemConfig& ms,
                                std::span<const Vec3> samples) {
    ms.validate();
    double worst = 0.0;
    for (const Vec3& x : samples) {
        for (int i = 1; i <= ms.q; ++i) {
            const Vec3 y = rotate(family_angle(ms, i), x);
            double lhs = 0.0;
            for (int r = 2; r <= ms.q; ++r) lhs += ipow(v(rotate(family_angle(ms, r), y)), 3);
            double rhs = 0.0;
            for (int j = 1; j <= ms.q; ++j)
                if (j != i) rhs += ipow(v(rotate(family_angle(ms, j), x)), 3);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    }
    return worst;
}

std::vector<double> msystem_residual(const ComponentSet& cs, const MSystemConfig& ms, const Vec3& x) {
    ms.validate();
    const int m = ms.q + 1;
    if (static_cast<int>(cs.components.size()) != m)
        throw std::invalid_argument("msystem_residual: component count must be q+1");
    for (const ScalarField& c : cs.components)
        if (!c.has_laplacian())
            throw std::invalid_argument("msystem_residual: components need analytic Laplacians");

    std::vector<double> vals(m), cubes(m);
    for (int i = 0; i < m; ++i) {
        vals[i] = cs.components[i](x);
        cubes[i] = ipow(vals[i], 3);
    }

    std::vector<double> res(m);
    for (int i = 0; i < m; ++i) {
        double coupling = 0.0;
        for (int j = 0; j < m; ++j) {
            if (j == i) continue;
            const double beta_ij = (i < ms.q && j < ms.q) ? ms.regime.alpha : ms.regime.beta;
            coupling += beta_ij * cubes[j];
        }
        res[i] = -cs.components[i].laplacian(x) - ipow(vals[i], 5) - vals[i] * vals[i] * coupling;
    }
    return res;
}

std::vector<double> msystem_residual_via_nonlocal(const ScalarField& u, const ScalarField& v,
                                                  const MSystemConfig& ms, const Vec3& x) {
    ms.validate();
    if (!u.has_laplacian() || !v.has_laplacian())
        throw std::invalid_argument("msystem_residual_via_nonlocal: need analytic Laplacians");

    auto r_v = [&](const Vec3& y) {
        const double vv = v(y);
        const double uu = u(y);
        double rot = 0.0;
        for (int r = 2; r <= ms.q; ++r) rot += ipow(v(rotate(family_angle(ms, r), y)), 3);
        return -v.laplacian(y) - ipow(vv, 5) - ms.regime.beta * ipow(uu, 3) * vv * vv -
               ms.regime.alpha * vv * vv * rot;
    };
    auto r_u = [&](const Vec3& y) {
        const double uu = u(y);
        double rot = 0.0;
        for (int r = 1; r <= ms.q; ++r) rot += ipow(v(rotate(family_angle(ms, r), y)), 3);
        return -u.laplacian(y) - ipow(uu, 5) - ms.regime.beta * uu * uu * rot;
    };

    std::vector<double> res(ms.q + 1);
    for (int i = 1; i <= ms.q; ++i) res[i - 1] = r_v(rotate(family_angle(ms, i), x));
    res[ms.q] = r_u(x);
    return res;
}

} // namespace bubbleforge
