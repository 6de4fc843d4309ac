#include "bubbleforge/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <thread>

#include "bubbleforge/sampling.hpp"

namespace bubbleforge {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double inf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Charts: spherical coordinates (s, u, theta) about a center, u the cosine of
// the polar angle.  A Kelvin chart covers the far field through y = x/|x|^2;
// its measure weight s^2 * |y|^-6 = s^-4 keeps the bubble algebra bounded.

struct Chart {
    Vec3 center{};
    bool kelvin = false;

    Vec3 map(double s, double u, double th) const {
        const double q = std::sqrt(std::max(0.0, 1.0 - u * u));
        const Vec3 dir{q * std::cos(th), q * std::sin(th), u};
        if (kelvin) return dir * (1.0 / s);
        return center + dir * s;
    }

    double weight(double s) const {
        if (kelvin) {
            const double s2 = s * s;
            return 1.0 / (s2 * s2);
        }
        return s * s;
    }

    // Radial interval of the chart image of [s_lo, s_hi].
    void image_radii(double s_lo, double s_hi, double& r_lo, double& r_hi) const {
        if (kelvin) {
            r_lo = 1.0 / s_hi;
            r_hi = s_lo > 0.0 ? 1.0 / s_lo : inf;
        } else {
            r_lo = s_lo;
            r_hi = s_hi;
        }
    }
};

struct Box {
    double lo[3];
    double hi[3];
};

// ---------------------------------------------------------------------------
// Genz-Malik degree-7 rule with embedded degree-5 estimate, dimension 3.
// 33 points per application.

constexpr double gm_l2 = 0.35856858280031809199064515390793749545; // sqrt(9/70)
constexpr double gm_l4 = 0.94868329805051379959966806332981556012; // sqrt(9/10)
constexpr double gm_l5 = 0.68824720161168529772162873429362352513; // sqrt(9/19)

constexpr double gm_w1 = -10936.0 / 19683.0;
constexpr double gm_w2 = 980.0 / 6561.0;
constexpr double gm_w3 = 620.0 / 19683.0;
constexpr double gm_w4 = 200.0 / 19683.0;
constexpr double gm_w5 = 6859.0 / 19683.0 / 8.0;

constexpr double gm_e1 = -1671.0 / 729.0;
constexpr double gm_e2 = 245.0 / 486.0;
constexpr double gm_e3 = -35.0 / 1458.0;
constexpr double gm_e4 = 25.0 / 729.0;

constexpr double gm_ratio = (9.0 / 70.0) / (9.0 / 10.0); // lambda2^2 / lambda4^2

struct RuleOut {
    double value = 0.0;
    double err = 0.0;
    int axis = 0;
    bool finite = true;
};

template <typename G>
RuleOut apply_rule(G&& g, const Box& b) {
    double c[3], h[3];
    for (int i = 0; i < 3; ++i) {
        c[i] = 0.5 * (b.lo[i] + b.hi[i]);
        h[i] = 0.5 * (b.hi[i] - b.lo[i]);
    }
    const double vol = 8.0 * h[0] * h[1] * h[2];

    auto at = [&](double a0, double a1, double a2) { return g(c[0] + a0 * h[0], c[1] + a1 * h[1], c[2] + a2 * h[2]); };

    const double f0 = at(0, 0, 0);
    double s2[3], s3[3];
    for (int i = 0; i < 3; ++i) {
        double p[3] = {0, 0, 0};
        p[i] = gm_l2;
        s2[i] = at(p[0], p[1], p[2]) + at(-p[0], -p[1], -p[2]);
        p[i] = gm_l4;
        s3[i] = at(p[0], p[1], p[2]) + at(-p[0], -p[1], -p[2]);
    }
    double s4 = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            for (int si = -1; si <= 1; si += 2)
                for (int sj = -1; sj <= 1; sj += 2) {
                    double p[3] = {0, 0, 0};
                    p[i] = si * gm_l4;
                    p[j] = sj * gm_l4;
                    s4 += at(p[0], p[1], p[2]);
                }
    double s5 = 0.0;
    for (int si = -1; si <= 1; si += 2)
        for (int sj = -1; sj <= 1; sj += 2)
            for (int sk = -1; sk <= 1; sk += 2)
                s5 += at(si * gm_l5, sj * gm_l5, sk * gm_l5);

    const double sum2 = s2[0] + s2[1] + s2[2];
    const double sum3 = s3[0] + s3[1] + s3[2];

    RuleOut out;
    const double v7 = vol * (gm_w1 * f0 + gm_w2 * sum2 + gm_w3 * sum3 + gm_w4 * s4 + gm_w5 * s5);
    const double v5 = vol * (gm_e1 * f0 + gm_e2 * sum2 + gm_e3 * sum3 + gm_e4 * s4);
    out.value = v7;
    out.err = std::abs(v7 - v5);

    double best = -1.0;
    for (int i = 0; i < 3; ++i) {
        const double d = std::abs(s2[i] - 2.0 * f0 - gm_ratio * (s3[i] - 2.0 * f0));
        if (d > best) {
            best = d;
            out.axis = i;
        }
    }
    if (!std::isfinite(out.value) || !std::isfinite(out.err)) {
        out.value = 0.0;
        out.err = 1e30 * std::max(1.0, vol);
        out.finite = false;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Hot-spot geometry in chart coordinates.

struct ChartSpot {
    Vec3 rel;      // spot position relative to the chart center
    double rho = 0.0;
    double scale = 1.0;
    bool radial = false; // spot at the chart center: only radial grading applies
};

double theta_gap(double th, double th0, double th1) {
    if (th >= th0 && th <= th1) return 0.0;
    auto circ = [](double a) {
        a = std::fmod(std::abs(a), 2.0 * pi);
        return std::min(a, 2.0 * pi - a);
    };
    return std::min(circ(th - th0), circ(th - th1));
}

// max of cos(angle between spot direction and patch directions)
double cos_gamma_max(const ChartSpot& sp, const Box& b) {
    const double us = sp.rel.x3 / sp.rho;
    const double A = std::sqrt(std::max(0.0, 1.0 - us * us));
    const double ths = std::atan2(sp.rel.x2, sp.rel.x1);
    const double cth = std::cos(theta_gap(ths, b.lo[2], b.hi[2]));

    const double u0 = b.lo[1], u1 = b.hi[1];
    auto hval = [&](double u) { return A * cth * std::sqrt(std::max(0.0, 1.0 - u * u)) + us * u; };
    double best = std::max(hval(u0), hval(u1));
    const double Ac = A * cth;
    if (Ac != 0.0) {
        const double T = us / Ac;
        const double ustar = T / std::sqrt(1.0 + T * T);
        if (ustar > u0 && ustar < u1) best = std::max(best, hval(ustar));
    }
    return std::clamp(best, -1.0, 1.0);
}

// min Cartesian distance from the spot to the chart image of the cell
double spot_distance(const Chart& chart, const ChartSpot& sp, const Box& b) {
    double r_lo, r_hi;
    chart.image_radii(b.lo[0], b.hi[0], r_lo, r_hi);
    if (sp.radial) return r_lo;
    const double cg = cos_gamma_max(sp, b);
    const double r_opt = std::clamp(sp.rho * cg, r_lo, r_hi);
    const double d2 = r_opt * r_opt + sp.rho * sp.rho - 2.0 * r_opt * sp.rho * cg;
    return std::sqrt(std::max(0.0, d2));
}

// Cartesian extents of the cell image along (radial, polar, azimuthal)
void cell_extents(const Chart& chart, const Box& b, double e[3]) {
    double r_lo, r_hi;
    chart.image_radii(b.lo[0], b.hi[0], r_lo, r_hi);
    e[0] = r_hi - r_lo;
    const double u0 = b.lo[1], u1 = b.hi[1];
    const double arc_u = std::abs(std::acos(std::clamp(u0, -1.0, 1.0)) -
                                  std::acos(std::clamp(u1, -1.0, 1.0)));
    double m; // max sqrt(1-u^2) on [u0,u1]
    if (u0 <= 0.0 && u1 >= 0.0) m = 1.0;
    else m = std::sqrt(std::max(0.0, 1.0 - std::min(u0 * u0, u1 * u1)));
    e[1] = arc_u * r_hi;
    e[2] = (b.hi[2] - b.lo[2]) * m * r_hi;
}

constexpr double grading_ratio = 0.5;
constexpr int max_pregrade_depth = 64;

void pregrade(const Chart& chart, const Box& root, const std::vector<ChartSpot>& spots,
              const QuadratureSpec& spec, std::vector<Box>& out) {
    std::vector<std::pair<Box, int>> stack{{root, 0}};
    while (!stack.empty()) {
        auto [b, depth] = stack.back();
        stack.pop_back();

        int split_axis = -1;
        if (depth < max_pregrade_depth) {
            // structural radial splits: never let a single cell span more
            // than one dyadic radial octave (hides concentrated mass from
            // the rule points otherwise)
            if (!chart.kelvin && (b.hi[0] - b.lo[0]) > std::max(1.0, b.lo[0]))
                split_axis = 0;

            if (split_axis < 0) {
                for (const ChartSpot& sp : spots) {
                    const double d = spot_distance(chart, sp, b);
                    if (d > spec.split_radius) continue;
                    const double target = grading_ratio * (d + sp.scale);
                    if (sp.radial) {
                        double r_lo, r_hi;
                        chart.image_radii(b.lo[0], b.hi[0], r_lo, r_hi);
                        if (r_hi - r_lo > target) { split_axis = 0; break; }
                    } else {
                        double e[3];
                        cell_extents(chart, b, e);
                        if (e[0] + e[1] + e[2] > target) {
                            split_axis = (e[0] >= e[1] && e[0] >= e[2]) ? 0 : (e[1] >= e[2] ? 1 : 2);
                            break;
                        }
                    }
                }
            }
        }

        if (split_axis < 0) {
            out.push_back(b);
        } else {
            const double mid = 0.5 * (b.lo[split_axis] + b.hi[split_axis]);
            Box left = b, right = b;
            left.hi[split_axis] = mid;
            right.lo[split_axis] = mid;
            stack.push_back({right, depth + 1});
            stack.push_back({left, depth + 1});
        }
    }
}

// ---------------------------------------------------------------------------
// Deterministic adaptive refinement.

struct CellRec {
    Box box;
    int chart = 0;
    double value = 0.0;
    double err = 0.0;
    int axis = 0;
    bool alive = true;
};

double pairwise_sum(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
    if (hi - lo <= 8) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += v[i];
        return s;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

template <typename F>
void parallel_for(std::size_t n, int threads, F&& body) {
    if (threads <= 1 || n < 4) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    const int nt = std::min<std::size_t>(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (int t = 0; t < nt; ++t)
        pool.emplace_back([&, t]() {
            for (std::size_t i = t; i < n; i += nt) body(i);
        });
    for (auto& th : pool) th.join();
}

struct ChartedRoot {
    Chart chart;
    Box box;
};

QuadratureResult run_adaptive(const ScalarField& f, const std::vector<ChartedRoot>& roots,
                              const QuadratureSpec& spec) {
    std::vector<Chart> charts;
    std::vector<CellRec> cells;
    long n_rules = 0;

    // chart-local spot lists
    std::vector<std::vector<ChartSpot>> spotlists;
    for (const ChartedRoot& r : roots) {
        charts.push_back(r.chart);
        std::vector<ChartSpot> spots;
        for (const HotSpot& h : f.hot_spots()) {
            ChartSpot sp;
            sp.rel = h.center - (r.chart.kelvin ? Vec3{} : r.chart.center);
            sp.rho = sp.rel.norm();
            sp.scale = h.scale;
            sp.radial = sp.rho < 1e-12;
            spots.push_back(sp);
        }
        spotlists.push_back(std::move(spots));
    }

    auto eval_cell = [&](int chart_idx, const Box& b) {
        const Chart& ch = charts[chart_idx];
        return apply_rule([&](double s, double u, double th) {
            return ch.weight(s) * f(ch.map(s, u, th));
        }, b);
    };

    // seed cells
    std::vector<std::pair<int, Box>> seeds;
    for (std::size_t ci = 0; ci < roots.size(); ++ci) {
        std::vector<Box> boxes;
        pregrade(charts[ci], roots[ci].box, spotlists[ci], spec, boxes);
        for (const Box& b : boxes) seeds.push_back({static_cast<int>(ci), b});
    }
    cells.resize(seeds.size());
    parallel_for(seeds.size(), spec.threads, [&](std::size_t i) {
        const RuleOut r = eval_cell(seeds[i].first, seeds[i].second);
        cells[i] = CellRec{seeds[i].second, seeds[i].first, r.value, r.err, r.axis, true};
    });
    n_rules += static_cast<long>(seeds.size());

    double val_sum = 0.0, err_sum = 0.0;
    using HeapItem = std::pair<double, int>;
    std::priority_queue<HeapItem> heap;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        val_sum += cells[i].value;
        err_sum += cells[i].err;
        heap.push({cells[i].err, static_cast<int>(i)});
    }

    long n_splits = 0;
    bool converged = true;
    constexpr int batch = 32;

    while (true) {
        if (err_sum <= std::max(spec.rel_tol * std::abs(val_sum), spec.abs_tol)) break;
        if (n_splits >= spec.max_subdivisions) {
            converged = false;
            break;
        }
        std::vector<int> popped;
        const long budget = spec.max_subdivisions - n_splits;
        while (!heap.empty() && popped.size() < static_cast<std::size_t>(std::min<long>(batch, budget))) {
            const auto [e, idx] = heap.top();
            if (e <= 0.0) break; // nothing refinable left
            heap.pop();
            popped.push_back(idx);
        }
        if (popped.empty()) { // error floor reached; nothing more to do
            converged = err_sum <= std::max(spec.rel_tol * std::abs(val_sum), spec.abs_tol);
            break;
        }
        n_splits += static_cast<long>(popped.size());

        std::vector<std::pair<int, Box>> kids(popped.size() * 2);
        for (std::size_t i = 0; i < popped.size(); ++i) {
            const CellRec& c = cells[popped[i]];
            const double mid = 0.5 * (c.box.lo[c.axis] + c.box.hi[c.axis]);
            Box left = c.box, right = c.box;
            left.hi[c.axis] = mid;
            right.lo[c.axis] = mid;
            kids[2 * i] = {c.chart, left};
            kids[2 * i + 1] = {c.chart, right};
        }
        std::vector<RuleOut> outs(kids.size());
        parallel_for(kids.size(), spec.threads, [&](std::size_t i) {
            outs[i] = eval_cell(kids[i].first, kids[i].second);
        });
        n_rules += static_cast<long>(kids.size());

        for (std::size_t i = 0; i < popped.size(); ++i) {
            CellRec& parent = cells[popped[i]];
            parent.alive = false;
            val_sum -= parent.value;
            err_sum -= parent.err;
            for (int c = 0; c < 2; ++c) {
                const std::size_t ki = 2 * i + c;
                cells.push_back(CellRec{kids[ki].second, kids[ki].first,
                                        outs[ki].value, outs[ki].err, outs[ki].axis, true});
                val_sum += outs[ki].value;
                err_sum += outs[ki].err;
                heap.push({outs[ki].err, static_cast<int>(cells.size() - 1)});
            }
        }
    }

    // final deterministic reduction over live cells in arena order
    std::vector<double> vals, errs;
    vals.reserve(cells.size());
    errs.reserve(cells.size());
    for (const CellRec& c : cells)
        if (c.alive) {
            vals.push_back(c.value);
            errs.push_back(c.err);
        }
    QuadratureResult res;
    res.value = pairwise_sum(vals, 0, vals.size());
    res.err_est = pairwise_sum(errs, 0, errs.size());
    res.n_evals = 33 * n_rules;
    res.converged = converged;
    return res;
}

std::vector<ChartedRoot> decompose(const Region& region) {
    std::vector<ChartedRoot> roots;
    auto full_box = [](double R) { return Box{{0.0, -1.0, -pi}, {R, 1.0, pi}}; };
    switch (region.kind()) {
    case Region::Kind::WholeSpace: {
        roots.push_back({Chart{Vec3{}, false}, full_box(1.0)});
        roots.push_back({Chart{Vec3{}, true}, full_box(1.0)});
        break;
    }
    case Region::Kind::Ball: {
        roots.push_back({Chart{region.center(), false}, full_box(region.radius())});
        break;
    }
    case Region::Kind::Wedge:
    case Region::Kind::WedgeBall: {
        const PolygonConfig& cfg = region.cfg();
        const double tc = cfg.phase_angle();
        const double half = pi / cfg.k;
        const double R = region.kind() == Region::Kind::Wedge ? 1.0 : region.radius();
        Box b{{0.0, -1.0, tc - half}, {R, 1.0, tc + half}};
        roots.push_back({Chart{Vec3{}, false}, b});
        if (region.kind() == Region::Kind::Wedge)
            roots.push_back({Chart{Vec3{}, true}, b});
        break;
    }
    case Region::Kind::BallComplement:
        throw std::logic_error("decompose: complement handled by integrate()");
    }
    return roots;
}

} // namespace

void QuadratureSpec::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
        throw std::invalid_argument("QuadratureSpec: tolerances must be positive");
    if (max_subdivisions < 1)
        throw std::invalid_argument("QuadratureSpec: max_subdivisions must be >= 1");
    if (!(split_radius > 0.0))
        throw std::invalid_argument("QuadratureSpec: split_radius must be positive");
}

Region Region::whole_space() { return Region{}; }

Region Region::ball(const Vec3& center, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("Region::ball: radius must be positive");
    Region r;
    r.kind_ = Kind::Ball;
    r.center_ = center;
    r.radius_ = radius;
    return r;
}

Region Region::wedge(const PolygonConfig& cfg) {
    cfg.validate();
    Region r;
    r.kind_ = Kind::Wedge;
    r.cfg_ = cfg;
    return r;
}

Region Region::wedge_ball(const PolygonConfig& cfg, double radius) {
    cfg.validate();
    if (!(radius > 0.0)) throw std::invalid_argument("Region::wedge_ball: radius must be positive");
    Region r;
    r.kind_ = Kind::WedgeBall;
    r.cfg_ = cfg;
    r.radius_ = radius;
    return r;
}

Region Region::complement_of_balls(std::vector<Vec3> centers, double radius) {
    if (!(radius > 0.0))
        throw std::invalid_argument("Region::complement_of_balls: radius must be positive");
    for (std::size_t i = 0; i < centers.size(); ++i)
        for (std::size_t j = i + 1; j < centers.size(); ++j)
            if (dist(centers[i], centers[j]) <= 2.0 * radius)
                throw std::invalid_argument("Region::complement_of_balls: balls must be disjoint");
    Region r;
    r.kind_ = Kind::BallComplement;
    r.excluded_ = std::move(centers);
    r.radius_ = radius;
    return r;
}

QuadratureResult integrate(const ScalarField& f, const Region& region, const QuadratureSpec& spec) {
    spec.validate();
    if (f.is_zero()) return {};

    if (region.kind() == Region::Kind::BallComplement) {
        QuadratureResult total = integrate(f, Region::whole_space(), spec);
        for (const Vec3& c : region.excluded_centers()) {
            const QuadratureResult part = integrate(f, Region::ball(c, region.radius()), spec);
            total.value -= part.value;
            total.err_est += part.err_est;
            total.n_evals += part.n_evals;
            total.converged = total.converged && part.converged;
        }
        return total;
    }

    return run_adaptive(f, decompose(region), spec);
}

QuadratureResult lp_norm_result(const ScalarField& f, double p, const QuadratureSpec& spec) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
    return integrate(abs_pow_field(f, p), Region::whole_space(), spec);
}

double lp_norm(const ScalarField& f, double p, const QuadratureSpec& spec) {
    return std::pow(lp_norm_result(f, p, spec).value, 1.0 / p);
}

QuadratureResult integrate_whole_by_wedges(const ScalarField& f, const PolygonConfig& cfg,
                                           const QuadratureSpec& spec) {
    cfg.validate();
    const auto samples = annulus_samples(64, 2027);
    const double angle = 2.0 * pi / cfg.k;
    double worst = 0.0;
    for (const Vec3& x : samples) worst = std::max(worst, std::abs(f(rotate(angle, x)) - f(x)));
    if (worst > 1e-9)
        throw std::invalid_argument("integrate_whole_by_wedges: integrand is not 2*pi/k invariant");

    QuadratureResult res = integrate(f, Region::wedge(cfg), spec);
    res.value *= cfg.k;
    res.err_est *= cfg.k;
    res.n_evals += 64;
    return res;
}

} // namespace bubbleforge
