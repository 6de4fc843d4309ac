#pragma once

#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

#include "bubbleforge/symmetry.hpp"
#include "bubbleforge/vec3.hpp"

namespace bubbleforge {

// 3^(1/4), the normalization of the standard bubble.
inline constexpr double bubble_amplitude = 1.31607401295249246081921890179698;

/// Parameters of a rescaled bubble U_{delta,xi}.
struct BubbleParams {
    double delta = 1.0;
    Vec3 xi{};

    void validate() const {
        if (!(delta > 0.0)) throw std::invalid_argument("BubbleParams: delta must be > 0");
    }
};

/// Coupling matrix data under the one-parameter assumption: beta couples the
/// last component to the others, alpha couples the first q among themselves.
struct CouplingRegime {
    double beta = -3.0;
    double alpha = 0.0;
    int q = 1; // m = q + 1

    void validate() const {
        if (q < 1) throw std::invalid_argument("CouplingRegime: q must be >= 1");
    }
};

/// Which X_k invariances a field satisfies by construction.
///   rot_k: 0 none, -1 full rotational symmetry, k >= 1 invariance under 2*pi/k.
///   kelvin_parity: 0 none, +1 invariant under the Kelvin pullback, -1 anti-invariant.
///   family_q: q >= 2 if invariant under the R_{r,k} family.
struct SymmetryTag {
    bool even_x2 = false;
    bool even_x3 = false;
    int rot_k = 0;
    int kelvin_parity = 0;
    int family_q = 0;
};

/// A singular-behavior hot spot: the field varies on scale `scale` near `center`.
struct HotSpot {
    Vec3 center{};
    double scale = 1.0;
};

/// A real-valued function on R^3 with optional analytic gradient and
/// Laplacian, singularity metadata and a symmetry tag.  Immutable; cheap to
/// copy; safe to evaluate concurrently.
class ScalarField {
public:
    using ValueFn = std::function<double(const Vec3&)>;
    using GradFn = std::function<Vec3(const Vec3&)>;
    using LapFn = std::function<double(const Vec3&)>;

    ScalarField() = default; // the zero field

    explicit ScalarField(ValueFn v, std::vector<HotSpot> spots = {}, SymmetryTag tag = {})
        : value_(std::move(v)), spots_(std::move(spots)), tag_(tag) {}

    ScalarField(ValueFn v, GradFn g, LapFn l, std::vector<HotSpot> spots = {}, SymmetryTag tag = {})
        : value_(std::move(v)), grad_(std::move(g)), lap_(std::move(l)),
          spots_(std::move(spots)), tag_(tag) {}

    double operator()(const Vec3& x) const { return value_ ? value_(x) : 0.0; }

    bool is_zero() const { return !value_; }
    bool has_gradient() const { return static_cast<bool>(grad_); }
    bool has_laplacian() const { return static_cast<bool>(lap_) || is_zero(); }

    Vec3 gradient(const Vec3& x) const {
        if (!grad_) {
            if (is_zero()) return {};
            throw std::logic_error("ScalarField: no analytic gradient");
        }
        return grad_(x);
    }

    double laplacian(const Vec3& x) const {
        if (!lap_) {
            if (is_zero()) return 0.0;
            throw std::logic_error("ScalarField: no analytic Laplacian");
        }
        return lap_(x);
    }

    const std::vector<HotSpot>& hot_spots() const { return spots_; }
    const SymmetryTag& symmetry() const { return tag_; }

private:
    ValueFn value_;
    GradFn grad_;
    LapFn lap_;
    std::vector<HotSpot> spots_;
    SymmetryTag tag_;
};

// ---------------------------------------------------------------------------
// Base kernels (pointwise).

/// U(x) = 3^{1/4} (1+|x|^2)^{-1/2}.
double eval_U(const Vec3& x);

/// U_{delta,xi}(x) = 3^{1/4} sqrt(delta) / (delta^2 + |x-xi|^2)^{1/2}.
double eval_bubble(const BubbleParams& p, const Vec3& x);

/// Linearized-kernel functions: l = 0 the dilation mode, l in {1,2,3} translations.
double eval_Z(int l, const Vec3& x);

/// Rescaled dilation mode Z^{(0)}_{delta,xi}.
double eval_Z0(const BubbleParams& p, const Vec3& x);

/// -Delta U - U^5 at x (analytic Laplacian; identically zero).
double yamabe_residual(const Vec3& x);
double yamabe_residual(const BubbleParams& p, const Vec3& x);

/// -Delta Z^{(l)} - 5 U^4 Z^{(l)} at x (identically zero).
double kernel_residual(int l, const Vec3& x);
double kernel_residual0(const BubbleParams& p, const Vec3& x);

// ---------------------------------------------------------------------------
// Bubble families.

/// The k equal-scale bubbles of a configuration, with joint evaluation
/// helpers.  `excess_pow` evaluates V^p - sum_j U_j^p in the grouped
/// positive-monomial form: raw subtraction loses all significant digits once
/// one bubble dominates by several orders of magnitude.
struct BubbleSet {
    double scale = 0.0;
    std::vector<Vec3> centers;

    static BubbleSet from(const PolygonConfig& cfg);
    BubbleSet rotated(double theta) const;

    int size() const { return static_cast<int>(centers.size()); }
    double min_separation() const;

    double value(int j, const Vec3& x) const;   // U_{t,j}(x)
    double z0(int j, const Vec3& x) const;      // Z^{(0)} at center j
    double sum_values(const Vec3& x) const;     // V(x)
    double sum_z0(const Vec3& x) const;         // Z_{k,t}(x)
    double max_value(const Vec3& x) const;
    double excess_pow(int p, const Vec3& x) const; // V^p - sum U_j^p, stable
    Vec3 sum_gradients(const Vec3& x) const;
    double sum_laplacians(const Vec3& x) const; //  = -sum U_j^5
    double sum_pow(int p, const Vec3& x) const; // sum_j U_j^p

    std::vector<HotSpot> spots() const;
};

// ---------------------------------------------------------------------------
// Field catalog.  Every named field carries its analytic derivatives where a
// closed form exists, its hot spots, and the invariances that hold by
// construction.

ScalarField field_U();
ScalarField field_bubble(const BubbleParams& p);
ScalarField field_Z(int l);
ScalarField field_Z0(const BubbleParams& p);
ScalarField field_V(const PolygonConfig& cfg);
ScalarField field_Zkt(const PolygonConfig& cfg);
ScalarField field_dV_dt(const PolygonConfig& cfg);

/// V_r(x) = V(R_{r,k} x), the r-th rotated copy of the ansatz.
ScalarField field_V_rotated(const PolygonConfig& cfg, int r);

enum class ErrorKind { E1, E2, E1tilde, E2tilde };

/// Pointwise error densities of the uncorrected ansatz (pre-inversion
/// right-hand sides).  Tilde variants add the nonlocal rotated-copy sums and
/// require regime.q >= 2 (they reduce to the plain ones at q = 1).
ScalarField error_field(ErrorKind which, const PolygonConfig& cfg, const CouplingRegime& regime);

enum class CouplingKind { N1, N2, N1tilde, N2tilde };

/// Pointwise coupling densities for given perturbations (phi, psi); positive
/// parts are exact, no smoothing.
ScalarField coupling_field(CouplingKind which, const PolygonConfig& cfg,
                           const CouplingRegime& regime,
                           const ScalarField& phi, const ScalarField& psi);

/// dV/dt at fixed beta (the concentration scale and the centers both move).
double eval_dV_dt(const PolygonConfig& cfg, const Vec3& x);

// ---------------------------------------------------------------------------
// Composition helpers.  Tags are dropped unless stated; hot spots are merged.

ScalarField from_function(ScalarField::ValueFn f, std::vector<HotSpot> spots = {},
                          SymmetryTag tag = {});
ScalarField scale_field(const ScalarField& f, double c);
ScalarField sum_fields(const ScalarField& a, const ScalarField& b);
ScalarField product_fields(const ScalarField& a, const ScalarField& b);
/// |f|^p, for L^p integrands.
ScalarField abs_pow_field(const ScalarField& f, double p);
/// x -> f(R_theta x); derivatives rotate accordingly.
ScalarField rotate_field(const ScalarField& f, double theta);

} // namespace bubbleforge
