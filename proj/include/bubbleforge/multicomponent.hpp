#pragma once

#include <span>
#include <vector>

#include "bubbleforge/fields.hpp"
#include "bubbleforge/symmetry.hpp"

namespace bubbleforge {

/// Parameters tying the m = q+1 component system to its two-component
/// nonlocal reduction.
struct MSystemConfig {
    int q = 1;
    int k = 2;
    CouplingRegime regime{};
    PolygonConfig cfg{};

    void validate() const;
};

/// The rotated component family u_i = v(R_{i,k} .) for i <= q, u_{q+1} = u.
struct ComponentSet {
    std::vector<ScalarField> components;
    bool distinct_at_probe = false;
};

/// Builds the component family after sampling the symmetry preconditions
/// (v invariant under 2*pi/k, u invariant under the R_{r,k} family) at
/// tolerance 1e-9; throws std::invalid_argument on violation.
ComponentSet build_components(const ScalarField& u, const ScalarField& v, const MSystemConfig& ms);

/// Max over i in {1..q} and samples of the absolute difference between
/// sum_{r=2}^q v_r^3(R_{i,k} x) and sum_{j != i, j <= q} u_j^3(x).
double reduction_identity_check(const ScalarField& v, const MSystemConfig& ms,
                                std::span<const Vec3> samples);

/// Residuals of the m-component system at x for the given component set
/// (direct evaluation through the analytic Laplacians).
std::vector<double> msystem_residual(const ComponentSet& cs, const MSystemConfig& ms, const Vec3& x);

/// The same residuals computed through the two-component nonlocal system,
/// component i evaluated at R_{i,k} x.  Agrees with msystem_residual up to
/// roundoff whenever the symmetry preconditions hold.
std::vector<double> msystem_residual_via_nonlocal(const ScalarField& u, const ScalarField& v,
                                                  const MSystemConfig& ms, const Vec3& x);

} // namespace bubbleforge
