#pragma once

#include <vector>

#include "bubbleforge/fields.hpp"
#include "bubbleforge/symmetry.hpp"
#include "bubbleforge/vec3.hpp"

namespace bubbleforge {

struct QuadratureSpec {
    double rel_tol = 1e-7;
    double abs_tol = 1e-14;
    long max_subdivisions = 1000000;
    // Hot-spot neighbourhood radius: cells within this distance of a bubble
    // center are pre-graded down to the bubble scale before adaptive
    // refinement starts.
    double split_radius = 0.5;
    int threads = 1;

    void validate() const;
};

struct QuadratureResult {
    double value = 0.0;
    double err_est = 0.0;
    long n_evals = 0;
    bool converged = true;
};

/// Integration domain.  The far field of unbounded regions is folded onto the
/// punctured unit ball by the Kelvin change of variables y = x/|x|^2 with
/// Jacobian |y|^{-6}; complements of ball unions are evaluated as exact
/// differences of converged integrals.
class Region {
public:
    enum class Kind { WholeSpace, Ball, Wedge, WedgeBall, BallComplement };

    static Region whole_space();
    static Region ball(const Vec3& center, double radius);
    static Region wedge(const PolygonConfig& cfg);
    static Region wedge_ball(const PolygonConfig& cfg, double radius);
    static Region complement_of_balls(std::vector<Vec3> centers, double radius);

    Kind kind() const { return kind_; }
    const Vec3& center() const { return center_; }
    double radius() const { return radius_; }
    const PolygonConfig& cfg() const { return cfg_; }
    const std::vector<Vec3>& excluded_centers() const { return excluded_; }

private:
    Kind kind_ = Kind::WholeSpace;
    Vec3 center_{};
    double radius_ = 0.0;
    PolygonConfig cfg_{};
    std::vector<Vec3> excluded_;
};

QuadratureResult integrate(const ScalarField& f, const Region& region,
                           const QuadratureSpec& spec = {});

/// (integral of |f|^p, whole space) and the norm itself.
QuadratureResult lp_norm_result(const ScalarField& f, double p, const QuadratureSpec& spec = {});
double lp_norm(const ScalarField& f, double p, const QuadratureSpec& spec = {});

/// k times the wedge integral, valid for 2*pi/k-invariant integrands.
/// The invariance is checked by sampling; violation above 1e-9 is an error.
QuadratureResult integrate_whole_by_wedges(const ScalarField& f, const PolygonConfig& cfg,
                                           const QuadratureSpec& spec = {});

} // namespace bubbleforge
