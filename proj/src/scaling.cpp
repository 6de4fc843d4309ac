#include "bubbleforge/scaling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bubbleforge {

namespace {
// h(s) = sqrt(delta)|log delta| under delta = e^{-2s}: h(s) = 2 s e^{-s},
// strictly decreasing on s > 1.  Bisection in s stays conditioned where
// direct bisection in delta underflows.
double h_of_s(double s) { return 2.0 * s * std::exp(-s); }
} // namespace

bool delta_beta_solvable(double beta) {
    return beta < -std::numbers::e / 2.0;
}

DeltaBetaSolve solve_delta_beta(double beta) {
    if (!delta_beta_solvable(beta))
        throw std::invalid_argument("solve_delta_beta: no root for beta >= -e/2");
    const double target = -1.0 / beta;

    double lo = 1.0, hi = 500.0;
    if (h_of_s(hi) > target)
        throw std::invalid_argument("solve_delta_beta: beta out of supported range");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (h_of_s(mid) > target) lo = mid;
        else hi = mid;
    }
    const double s = 0.5 * (lo + hi);
    DeltaBetaSolve out;
    out.beta = beta;
    out.delta = std::exp(-2.0 * s);
    out.residual = std::abs(std::sqrt(out.delta) * std::abs(std::log(out.delta)) + 1.0 / beta);
    return out;
}

ReducedEnergyConstants constants(int k) {
    if (k < 2) throw std::invalid_argument("constants: k must be >= 2");
    const double pi = std::numbers::pi;
    double interaction = 0.0;
    for (int j = 2; j <= k; ++j)
        interaction += 1.0 / std::sqrt(1.0 - std::cos(2.0 * pi * (j - 1) / k));

    ReducedEnergyConstants c;
    c.k = k;
    c.c2 = std::sqrt(6.0) * pi * k;
    c.c1 = c.c2 * interaction;
    c.c1_tilde = c.c1;
    c.c2_tilde = 1.5 * c.c2;
    c.t_star = std::pow(2.0 * c.c1 / (3.0 * c.c2), 2);
    c.t_star_tilde = std::pow(c.c1_tilde / c.c2_tilde, 2);
    return c;
}

double g(int k, double t) {
    if (t < 0.0) throw std::invalid_argument("g: t must be >= 0");
    const ReducedEnergyConstants c = constants(k);
    return -c.c1 * t + c.c2 * std::pow(t, 1.5);
}

double c_tilde_leading(int k, double beta, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("c_tilde_leading: t must be > 0");
    const ReducedEnergyConstants c = constants(k);
    const double delta = solve_delta_beta(beta).delta;
    const double td = t * delta;
    return -c.c1_tilde * td - c.c2_tilde * beta * std::pow(td, 1.5) * std::abs(std::log(delta));
}

} // namespace bubbleforge
