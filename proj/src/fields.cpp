#include "bubbleforge/fields.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace bubbleforge {

namespace {

constexpr double c4 = bubble_amplitude; // 3^(1/4)

double ipow(double v, int p) {
    double r = 1.0;
    for (int i = 0; i < p; ++i) r *= v;
    return r;
}

double pos(double v) { return v > 0.0 ? v : 0.0; }

// C(p, i) for p <= 8
constexpr int binom_table[9][9] = {
    {1, 0, 0, 0, 0, 0, 0, 0, 0},
    {1, 1, 0, 0, 0, 0, 0, 0, 0},
    {1, 2, 1, 0, 0, 0, 0, 0, 0},
    {1, 3, 3, 1, 0, 0, 0, 0, 0},
    {1, 4, 6, 4, 1, 0, 0, 0, 0},
    {1, 5, 10, 10, 5, 1, 0, 0, 0},
    {1, 6, 15, 20, 15, 6, 1, 0, 0},
    {1, 7, 21, 35, 35, 21, 7, 1, 0},
    {1, 8, 28, 56, 70, 56, 28, 8, 1},
};

// (P+U)^p - P^p - U^p, all monomials positive.
double cross_bracket(double P, double U, int p) {
    double acc = 0.0;
    for (int i = 1; i <= p - 1; ++i) acc += binom_table[p][i] * ipow(P, i) * ipow(U, p - i);
    return acc;
}

} // namespace

// ---------------------------------------------------------------------------
// Base kernels.

double eval_U(const Vec3& x) {
    return c4 / std::sqrt(1.0 + x.norm_sq());
}

double eval_bubble(const BubbleParams& p, const Vec3& x) {
    p.validate();
    return c4 * std::sqrt(p.delta) / std::sqrt(p.delta * p.delta + dist_sq(x, p.xi));
}

double eval_Z(int l, const Vec3& x) {
    if (l < 0 || l > 3) throw std::invalid_argument("eval_Z: l must lie in {0,...,3}");
    const double n2 = x.norm_sq();
    if (l == 0) return c4 * (n2 - 1.0) / (2.0 * std::pow(1.0 + n2, 1.5));
    const double h = c4 / std::pow(1.0 + n2, 1.5);
    const double xl = (l == 1) ? x.x1 : (l == 2) ? x.x2 : x.x3;
    return xl * h;
}

double eval_Z0(const BubbleParams& p, const Vec3& x) {
    p.validate();
    const double d2 = dist_sq(x, p.xi);
    const double q = p.delta * p.delta + d2;
    return c4 * std::sqrt(p.delta) * (1.0 - 2.0 * p.delta * p.delta / q) / (2.0 * std::sqrt(q));
}

namespace {

Vec3 grad_U_base(const Vec3& x) {
    const double n2 = x.norm_sq();
    return x * (-c4 / std::pow(1.0 + n2, 1.5));
}

double lap_U_base(const Vec3& x) {
    return -3.0 * c4 / std::pow(1.0 + x.norm_sq(), 2.5);
}

Vec3 grad_Z0_base(const Vec3& x) {
    const double n2 = x.norm_sq();
    return x * (c4 * (5.0 - n2) / (2.0 * std::pow(1.0 + n2, 2.5)));
}

double lap_Z0_base(const Vec3& x) {
    const double n2 = x.norm_sq();
    return -7.5 * c4 * (n2 - 1.0) / std::pow(1.0 + n2, 3.5);
}

Vec3 grad_Zl_base(int l, const Vec3& x) {
    const double n2 = x.norm_sq();
    const double f = c4 / std::pow(1.0 + n2, 2.5);
    const double xl = (l == 1) ? x.x1 : (l == 2) ? x.x2 : x.x3;
    Vec3 g = x * (-3.0 * xl * f);
    const double diag = (1.0 + n2) * f;
    if (l == 1) g.x1 += diag;
    else if (l == 2) g.x2 += diag;
    else g.x3 += diag;
    return g;
}

double lap_Zl_base(int l, const Vec3& x) {
    const double n2 = x.norm_sq();
    const double xl = (l == 1) ? x.x1 : (l == 2) ? x.x2 : x.x3;
    return -15.0 * c4 * xl / std::pow(1.0 + n2, 3.5);
}

Vec3 grad_bubble(const BubbleParams& p, const Vec3& x) {
    const double q = p.delta * p.delta + dist_sq(x, p.xi);
    return (x - p.xi) * (-c4 * std::sqrt(p.delta) / std::pow(q, 1.5));
}

double lap_bubble(const BubbleParams& p, const Vec3& x) {
    const double q = p.delta * p.delta + dist_sq(x, p.xi);
    return -3.0 * c4 * std::sqrt(p.delta) * p.delta * p.delta / std::pow(q, 2.5);
}

Vec3 grad_Z0_rescaled(const BubbleParams& p, const Vec3& x) {
    const double dd = p.delta * p.delta;
    const double q = dd + dist_sq(x, p.xi);
    return (x - p.xi) * (0.5 * c4 * std::sqrt(p.delta) * (6.0 * dd / q - 1.0) / std::pow(q, 1.5));
}

double lap_Z0_rescaled(const BubbleParams& p, const Vec3& x) {
    const double dd = p.delta * p.delta;
    const double q = dd + dist_sq(x, p.xi);
    return -7.5 * c4 * std::sqrt(p.delta) * dd * (1.0 - 2.0 * dd / q) / std::pow(q, 2.5);
}

} // namespace

double yamabe_residual(const Vec3& x) {
    return -lap_U_base(x) - ipow(eval_U(x), 5);
}

double yamabe_residual(const BubbleParams& p, const Vec3& x) {
    p.validate();
    return -lap_bubble(p, x) - ipow(eval_bubble(p, x), 5);
}

double kernel_residual(int l, const Vec3& x) {
    if (l < 0 || l > 3) throw std::invalid_argument("kernel_residual: l must lie in {0,...,3}");
    const double u4 = ipow(eval_U(x), 4);
    const double lap = (l == 0) ? lap_Z0_base(x) : lap_Zl_base(l, x);
    return -lap - 5.0 * u4 * eval_Z(l, x);
}

double kernel_residual0(const BubbleParams& p, const Vec3& x) {
    p.validate();
    const double u4 = ipow(eval_bubble(p, x), 4);
    return -lap_Z0_rescaled(p, x) - 5.0 * u4 * eval_Z0(p, x);
}

// ---------------------------------------------------------------------------
// BubbleSet.

BubbleSet BubbleSet::from(const PolygonConfig& cfg) {
    BubbleSet b;
    b.scale = cfg.scale();
    b.centers = polygon_centers(cfg);
    return b;
}

BubbleSet BubbleSet::rotated(double theta) const {
    BubbleSet b;
    b.scale = scale;
    b.centers.reserve(centers.size());
    for (const Vec3& c : centers) b.centers.push_back(rotate(theta, c));
    return b;
}

double BubbleSet::min_separation() const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < centers.size(); ++j)
        for (std::size_t i = j + 1; i < centers.size(); ++i)
            best = std::min(best, dist(centers[j], centers[i]));
    return best;
}

double BubbleSet::value(int j, const Vec3& x) const {
    const double q = scale * scale + dist_sq(x, centers[j]);
    return c4 * std::sqrt(scale) / std::sqrt(q);
}

double BubbleSet::z0(int j, const Vec3& x) const {
    const double s2 = scale * scale;
    const double q = s2 + dist_sq(x, centers[j]);
    return c4 * std::sqrt(scale) * (1.0 - 2.0 * s2 / q) / (2.0 * std::sqrt(q));
}

double BubbleSet::sum_values(const Vec3& x) const {
    double acc = 0.0;
    for (int j = 0; j < size(); ++j) acc += value(j, x);
    return acc;
}

double BubbleSet::sum_z0(const Vec3& x) const {
    double acc = 0.0;
    for (int j = 0; j < size(); ++j) acc += z0(j, x);
    return acc;
}

double BubbleSet::max_value(const Vec3& x) const {
    double m = 0.0;
    for (int j = 0; j < size(); ++j) m = std::max(m, value(j, x));
    return m;
}

double BubbleSet::excess_pow(int p, const Vec3& x) const {
    double prefix = 0.0;
    double acc = 0.0;
    for (int j = 0; j < size(); ++j) {
        const double u = value(j, x);
        acc += cross_bracket(prefix, u, p);
        prefix += u;
    }
    return acc;
}

Vec3 BubbleSet::sum_gradients(const Vec3& x) const {
    Vec3 acc{};
    const double a = -c4 * std::sqrt(scale);
    for (int j = 0; j < size(); ++j) {
        const double q = scale * scale + dist_sq(x, centers[j]);
        acc = acc + (x - centers[j]) * (a / std::pow(q, 1.5));
    }
    return acc;
}

double BubbleSet::sum_laplacians(const Vec3& x) const {
    double acc = 0.0;
    const double a = -3.0 * c4 * std::sqrt(scale) * scale * scale;
    for (int j = 0; j < size(); ++j) {
        const double q = scale * scale + dist_sq(x, centers[j]);
        acc += a / std::pow(q, 2.5);
    }
    return acc;
}

double BubbleSet::sum_pow(int p, const Vec3& x) const {
    double acc = 0.0;
    for (int j = 0; j < size(); ++j) acc += ipow(value(j, x), p);
    return acc;
}

std::vector<HotSpot> BubbleSet::spots() const {
    std::vector<HotSpot> s;
    s.reserve(centers.size());
    for (const Vec3& c : centers) s.push_back({c, scale});
    return s;
}

// ---------------------------------------------------------------------------
// Catalog.

ScalarField field_U() {
    SymmetryTag tag{true, true, -1, +1, 0};
    return ScalarField([](const Vec3& x) { return eval_U(x); },
                       [](const Vec3& x) { return grad_U_base(x); },
                       [](const Vec3& x) { return lap_U_base(x); },
                       {{Vec3{}, 1.0}}, tag);
}

ScalarField field_bubble(const BubbleParams& p) {
    p.validate();
    SymmetryTag tag{};
    if (p.xi.norm_sq() == 0.0) {
        tag.even_x2 = tag.even_x3 = true;
        tag.rot_k = -1;
    }
    if (std::abs(p.delta * p.delta + p.xi.norm_sq() - 1.0) < 1e-12) tag.kelvin_parity = +1;
    return ScalarField([p](const Vec3& x) { return eval_bubble(p, x); },
                       [p](const Vec3& x) { return grad_bubble(p, x); },
                       [p](const Vec3& x) { return lap_bubble(p, x); },
                       {{p.xi, p.delta}}, tag);
}

ScalarField field_Z(int l) {
    if (l < 0 || l > 3) throw std::invalid_argument("field_Z: l must lie in {0,...,3}");
    SymmetryTag tag{};
    tag.even_x2 = (l != 2);
    tag.even_x3 = (l != 3);
    tag.rot_k = (l == 0) ? -1 : 0;
    tag.kelvin_parity = (l == 0) ? -1 : +1;
    if (l == 0)
        return ScalarField([](const Vec3& x) { return eval_Z(0, x); },
                           [](const Vec3& x) { return grad_Z0_base(x); },
                           [](const Vec3& x) { return lap_Z0_base(x); },
                           {{Vec3{}, 1.0}}, tag);
    return ScalarField([l](const Vec3& x) { return eval_Z(l, x); },
                       [l](const Vec3& x) { return grad_Zl_base(l, x); },
                       [l](const Vec3& x) { return lap_Zl_base(l, x); },
                       {{Vec3{}, 1.0}}, tag);
}

ScalarField field_Z0(const BubbleParams& p) {
    p.validate();
    SymmetryTag tag{};
    if (p.xi.norm_sq() == 0.0) {
        tag.even_x2 = tag.even_x3 = true;
        tag.rot_k = -1;
        if (p.delta == 1.0) tag.kelvin_parity = -1;
    }
    return ScalarField([p](const Vec3& x) { return eval_Z0(p, x); },
                       [p](const Vec3& x) { return grad_Z0_rescaled(p, x); },
                       [p](const Vec3& x) { return lap_Z0_rescaled(p, x); },
                       {{p.xi, p.delta}}, tag);
}

namespace {
SymmetryTag ansatz_tag(const PolygonConfig& cfg, int kelvin) {
    SymmetryTag tag{};
    tag.even_x2 = (cfg.r == 1);
    tag.even_x3 = true;
    tag.rot_k = cfg.k;
    tag.kelvin_parity = kelvin;
    return tag;
}
} // namespace

ScalarField field_V(const PolygonConfig& cfg) {
    auto b = std::make_shared<const BubbleSet>(BubbleSet::from(cfg));
    return ScalarField([b](const Vec3& x) { return b->sum_values(x); },
                       [b](const Vec3& x) { return b->sum_gradients(x); },
                       [b](const Vec3& x) { return b->sum_laplacians(x); },
                       b->spots(), ansatz_tag(cfg, +1));
}

ScalarField field_Zkt(const PolygonConfig& cfg) {
    auto b = std::make_shared<const BubbleSet>(BubbleSet::from(cfg));
    const BubbleParams base{b->scale, Vec3{}};
    auto grad = [b](const Vec3& x) {
        Vec3 acc{};
        for (int j = 0; j < b->size(); ++j)
            acc = acc + grad_Z0_rescaled({b->scale, b->centers[j]}, x);
        return acc;
    };
    auto lap = [b](const Vec3& x) {
        double acc = 0.0;
        for (int j = 0; j < b->size(); ++j)
            acc += lap_Z0_rescaled({b->scale, b->centers[j]}, x);
        return acc;
    };
    (void)base;
    return ScalarField([b](const Vec3& x) { return b->sum_z0(x); }, grad, lap,
                       b->spots(), ansatz_tag(cfg, 0));
}

double eval_dV_dt(const PolygonConfig& cfg, const Vec3& x) {
    cfg.validate();
    const double s = cfg.scale();
    if (!(s < 1.0)) throw std::invalid_argument("eval_dV_dt: requires t*delta < 1");
    const BubbleSet b = BubbleSet::from(cfg);
    const double zpart = b.sum_z0(x) / cfg.t;
    double corr = 0.0;
    for (int j = 0; j < b.size(); ++j) {
        const double q = s * s + dist_sq(x, b.centers[j]);
        corr += (x - b.centers[j]).dot(b.centers[j]) / std::pow(q, 1.5);
    }
    const double coef = c4 * std::pow(cfg.t, 1.5) * std::pow(cfg.delta, 2.5) / (1.0 - s * s);
    return zpart - coef * corr;
}

ScalarField field_dV_dt(const PolygonConfig& cfg) {
    cfg.validate();
    if (!(cfg.scale() < 1.0)) throw std::invalid_argument("field_dV_dt: requires t*delta < 1");
    auto b = std::make_shared<const BubbleSet>(BubbleSet::from(cfg));
    const double t = cfg.t;
    const double coef = c4 * std::pow(cfg.t, 1.5) * std::pow(cfg.delta, 2.5) / (1.0 - cfg.scale() * cfg.scale());
    return ScalarField(
        [b, t, coef](const Vec3& x) {
            double corr = 0.0;
            for (int j = 0; j < b->size(); ++j) {
                const double q = b->scale * b->scale + dist_sq(x, b->centers[j]);
                corr += (x - b->centers[j]).dot(b->centers[j]) / std::pow(q, 1.5);
            }
            return b->sum_z0(x) / t - coef * corr;
        },
        b->spots(), ansatz_tag(cfg, +1));
}

ScalarField field_V_rotated(const PolygonConfig& cfg, int r) {
    cfg.validate();
    if (r < 1 || r > cfg.q) throw std::invalid_argument("field_V_rotated: r must lie in {1,...,q}");
    // V_r(x) = V(R_theta x) has centers rotated by -theta.
    const double theta = static_cast<double>(r - 1) / cfg.q * 2.0 * std::numbers::pi / cfg.k;
    auto b = std::make_shared<const BubbleSet>(BubbleSet::from(cfg).rotated(-theta));
    SymmetryTag tag = ansatz_tag(cfg, +1);
    tag.even_x2 = (r == 1 && cfg.r == 1);
    return ScalarField([b](const Vec3& x) { return b->sum_values(x); },
                       [b](const Vec3& x) { return b->sum_gradients(x); },
                       [b](const Vec3& x) { return b->sum_laplacians(x); },
                       b->spots(), tag);
}

namespace {

struct RotatedFamily {
    std::vector<BubbleSet> sets; // V_r for r = 2..q

    static RotatedFamily make(const PolygonConfig& cfg, int q) {
        RotatedFamily fam;
        const BubbleSet base = BubbleSet::from(cfg);
        for (int r = 2; r <= q; ++r) {
            const double theta = static_cast<double>(r - 1) / q * 2.0 * std::numbers::pi / cfg.k;
            fam.sets.push_back(base.rotated(-theta));
        }
        return fam;
    }

    double sum_cubes(const Vec3& x) const {
        double acc = 0.0;
        for (const BubbleSet& b : sets) acc += ipow(b.sum_values(x), 3);
        return acc;
    }

    std::vector<HotSpot> spots() const {
        std::vector<HotSpot> s;
        for (const BubbleSet& b : sets)
            for (const HotSpot& h : b.spots()) s.push_back(h);
        return s;
    }
};

} // namespace

ScalarField error_field(ErrorKind which, const PolygonConfig& cfg, const CouplingRegime& regime) {
    cfg.validate();
    regime.validate();
    auto b = std::make_shared<const BubbleSet>(BubbleSet::from(cfg));
    const double beta = regime.beta;
    const double alpha = regime.alpha;

    std::vector<HotSpot> spots = b->spots();
    spots.push_back({Vec3{}, 1.0});

    SymmetryTag tag = ansatz_tag(cfg, 0);

    switch (which) {
    case ErrorKind::E1:
        return ScalarField(
            [b, beta](const Vec3& x) {
                const double u = eval_U(x);
                const double v = b->sum_values(x);
                return beta * u * u * (v * v * v);
            },
            spots, tag);
    case ErrorKind::E2:
        return ScalarField(
            [b, beta](const Vec3& x) {
                const double u = eval_U(x);
                const double v = b->sum_values(x);
                return b->excess_pow(5, x) + beta * (u * u * u) * (v * v);
            },
            spots, tag);
    case ErrorKind::E1tilde:
    case ErrorKind::E2tilde: {
        auto fam = std::make_shared<const RotatedFamily>(RotatedFamily::make(cfg, regime.q));
        for (const HotSpot& h : fam->spots()) spots.push_back(h);
        // associated so that the q = 1 case degenerates to the plain fields exactly
        if (which == ErrorKind::E1tilde)
            return ScalarField(
                [b, fam, beta](const Vec3& x) {
                    const double u = eval_U(x);
                    const double v = b->sum_values(x);
                    return beta * u * u * (v * v * v + fam->sum_cubes(x));
                },
                spots, tag);
        return ScalarField(
            [b, fam, beta, alpha](const Vec3& x) {
                const double u = eval_U(x);
                const double v = b->sum_values(x);
                return b->excess_pow(5, x) + beta * (u * u * u) * (v * v) +
                       alpha * (v * v) * fam->sum_cubes(x);
            },
            spots, tag);
    }
    }
    throw std::logic_error("error_field: unknown kind");
}

ScalarField coupling_field(CouplingKind which, const PolygonConfig& cfg,
                           const CouplingRegime& regime,
                           const ScalarField& phi, const ScalarField& psi) {
    cfg.validate();
    regime.validate();
    auto b = std::make_shared<const BubbleSet>(BubbleSet::from(cfg));
    const double beta = regime.beta;
    const double alpha = regime.alpha;

    std::vector<HotSpot> spots = b->spots();
    spots.push_back({Vec3{}, 1.0});
    for (const HotSpot& h : phi.hot_spots()) spots.push_back(h);
    for (const HotSpot& h : psi.hot_spots()) spots.push_back(h);

    auto n1 = [b, beta, phi, psi](const Vec3& x) {
        const double u = eval_U(x);
        const double v = b->sum_values(x);
        const double f = phi(x);
        const double g = psi(x);
        const double up = pos(u + f);
        const double vp = pos(v + g);
        return ipow(up, 5) - ipow(u, 5) - 5.0 * ipow(u, 4) * f +
               beta * up * up * vp * vp * vp - beta * u * u * v * v * v;
    };
    auto n2 = [b, beta, phi, psi](const Vec3& x) {
        const double u = eval_U(x);
        const double v = b->sum_values(x);
        const double f = phi(x);
        const double g = psi(x);
        const double up = pos(u + f);
        const double vp = pos(v + g);
        return ipow(vp, 5) - ipow(v, 5) - 5.0 * ipow(v, 4) * g +
               beta * vp * vp * up * up * up - beta * v * v * u * u * u;
    };

    switch (which) {
    case CouplingKind::N1:
        return ScalarField(n1, spots);
    case CouplingKind::N2:
        return ScalarField(n2, spots);
    case CouplingKind::N1tilde:
    case CouplingKind::N2tilde: {
        auto fam = std::make_shared<const RotatedFamily>(RotatedFamily::make(cfg, regime.q));
        for (const HotSpot& h : fam->spots()) spots.push_back(h);
        std::vector<ScalarField> psi_r;
        for (int r = 2; r <= regime.q; ++r) {
            const double theta = static_cast<double>(r - 1) / regime.q * 2.0 * std::numbers::pi / cfg.k;
            psi_r.push_back(rotate_field(psi, theta));
        }
        // sum over r >= 2 of (V_r + psi_r)_+^3 and of V_r^3
        auto rotated_sums = [fam, psi_r](const Vec3& x, double& pert, double& plain) {
            pert = 0.0;
            plain = 0.0;
            for (std::size_t i = 0; i < fam->sets.size(); ++i) {
                const double vr = fam->sets[i].sum_values(x);
                pert += ipow(pos(vr + psi_r[i](x)), 3);
                plain += ipow(vr, 3);
            }
        };
        if (which == CouplingKind::N1tilde)
            return ScalarField(
                [n1, rotated_sums, beta, phi](const Vec3& x) {
                    double pert, plain;
                    rotated_sums(x, pert, plain);
                    const double u = eval_U(x);
                    const double up = pos(u + phi(x));
                    return n1(x) + beta * (up * up * pert - u * u * plain);
                },
                spots);
        return ScalarField(
            [n2, rotated_sums, alpha, b, psi](const Vec3& x) {
                double pert, plain;
                rotated_sums(x, pert, plain);
                const double v = b->sum_values(x);
                const double vp = pos(v + psi(x));
                return n2(x) + alpha * (vp * vp * pert - v * v * plain);
            },
            spots);
    }
    }
    throw std::logic_error("coupling_field: unknown kind");
}

// ---------------------------------------------------------------------------
// Composition helpers.

ScalarField from_function(ScalarField::ValueFn f, std::vector<HotSpot> spots, SymmetryTag tag) {
    return ScalarField(std::move(f), std::move(spots), tag);
}

ScalarField scale_field(const ScalarField& f, double c) {
    if (f.is_zero() || c == 0.0) return {};
    std::vector<HotSpot> spots = f.hot_spots();
    SymmetryTag tag = f.symmetry();
    ScalarField::GradFn g;
    ScalarField::LapFn l;
    if (f.has_gradient()) g = [f, c](const Vec3& x) { return f.gradient(x) * c; };
    if (f.has_laplacian()) l = [f, c](const Vec3& x) { return c * f.laplacian(x); };
    return ScalarField([f, c](const Vec3& x) { return c * f(x); }, g, l, spots, tag);
}

ScalarField sum_fields(const ScalarField& a, const ScalarField& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    std::vector<HotSpot> spots = a.hot_spots();
    for (const HotSpot& h : b.hot_spots()) spots.push_back(h);
    ScalarField::GradFn g;
    ScalarField::LapFn l;
    if (a.has_gradient() && b.has_gradient())
        g = [a, b](const Vec3& x) { return a.gradient(x) + b.gradient(x); };
    if (a.has_laplacian() && b.has_laplacian())
        l = [a, b](const Vec3& x) { return a.laplacian(x) + b.laplacian(x); };
    return ScalarField([a, b](const Vec3& x) { return a(x) + b(x); }, g, l, spots);
}

ScalarField product_fields(const ScalarField& a, const ScalarField& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<HotSpot> spots = a.hot_spots();
    for (const HotSpot& h : b.hot_spots()) spots.push_back(h);
    return ScalarField([a, b](const Vec3& x) { return a(x) * b(x); }, spots);
}

ScalarField abs_pow_field(const ScalarField& f, double p) {
    if (f.is_zero()) return {};
    return ScalarField([f, p](const Vec3& x) { return std::pow(std::abs(f(x)), p); },
                       f.hot_spots());
}

ScalarField rotate_field(const ScalarField& f, double theta) {
    if (f.is_zero()) return {};
    std::vector<HotSpot> spots;
    for (const HotSpot& h : f.hot_spots()) spots.push_back({rotate(-theta, h.center), h.scale});
    ScalarField::GradFn g;
    ScalarField::LapFn l;
    if (f.has_gradient())
        g = [f, theta](const Vec3& x) { return rotate(-theta, f.gradient(rotate(theta, x))); };
    if (f.has_laplacian())
        l = [f, theta](const Vec3& x) { return f.laplacian(rotate(theta, x)); };
    return ScalarField([f, theta](const Vec3& x) { return f(rotate(theta, x)); }, g, l, spots);
}

} // namespace bubbleforge
