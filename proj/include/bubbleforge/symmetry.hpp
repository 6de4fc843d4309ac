#pragma once

#include <functional>
#include <span>
#include <vector>

#include "bubbleforge/vec3.hpp"

namespace bubbleforge {

/// Symmetry class parameters: k-gon order and number of rotated copies q = m-1.
struct SymmetrySpec {
    int k = 2; // polygon order, k >= 2
    int q = 1; // rotated copies, q >= 1

    void validate() const;
};

/// Concentration geometry of the polygonal ansatz.
///
/// Centers sit on the circle of radius sqrt(1 - (t*delta)^2) in the
/// (x1,x2)-plane at angles 2*pi*(j-1)/k + (r-1)*2*pi/(q*k).  The radius is
/// chosen so that each bubble of scale t*delta is invariant under the Kelvin
/// transform.
struct PolygonConfig {
    int k = 2;          // number of bubbles, k >= 1 (k = 1 degenerates to a single bubble)
    double t = 1.0;     // scale multiplier, t > 0
    double delta = 1e-3; // concentration parameter, in (0, e^-2]; t*delta <= 1
    int q = 1;          // rotated-family order
    int r = 1;          // phase index, 1 <= r <= q

    double scale() const { return t * delta; }
    double phase_angle() const; // angle of the first center
    void validate() const;
};

/// Rotation by theta in the (x1,x2)-plane; x3 unchanged.
Vec3 rotate(double theta, const Vec3& x);

/// The rotation angle ((r-1)/q)*(2*pi/k) of the r-th copy.
double reduction_rotation(int r, const SymmetrySpec& spec);

/// Kelvin inversion x -> x/|x|^2.  Throws std::domain_error at x = 0.
Vec3 kelvin_point(const Vec3& x);

/// Kelvin pullback x -> |x|^{-1} f(x/|x|^2) of a scalar function.
std::function<double(const Vec3&)> kelvin_pullback(std::function<double(const Vec3&)> f);

/// The k bubble centers of a configuration.
std::vector<Vec3> polygon_centers(const PolygonConfig& cfg);

/// Membership in the fundamental wedge Omega_1 (points strictly closer to the
/// first center than to any other).  Implemented as the angular test
/// angle in (-pi/k, pi/k] relative to the first center; the half-open bound
/// resolves the measure-zero tie set.
bool in_fundamental_domain(const Vec3& x, const PolygonConfig& cfg);

/// Generators to include in a symmetry-violation sweep.
struct GeneratorMask {
    bool even_x2 = true;
    bool even_x3 = true;
    bool rotation = true;    // 2*pi/k rotation
    bool kelvin = true;      // compares against the Kelvin pullback
    bool rot_family = true;  // the q-fold R_{r,k} family (applied when spec.q >= 2)
    int kelvin_parity = +1;  // +1 invariant, -1 anti-invariant under the pullback
};

/// Max over samples and requested generators of |f(g x) - f(x)|
/// (Kelvin generator compares f against its pullback).
double symmetry_violation(const std::function<double(const Vec3&)>& f,
                          const SymmetrySpec& spec,
                          std::span<const Vec3> samples,
                          const GeneratorMask& mask = {});

} // namespace bubbleforge
