#pragma once

namespace bubbleforge {

/// Solution of sqrt(delta) * |log delta| = -1/beta on (0, e^-2).
struct DeltaBetaSolve {
    double beta = 0.0;
    double delta = 0.0;
    double residual = 0.0; // | sqrt(delta)|log delta| + 1/beta |
};

/// Closed-form reduced-energy constants for both reductions.
/// c1_tilde = c1 and c2_tilde = (3/2) c2, so the two minimizers coincide.
struct ReducedEnergyConstants {
    int k = 0;
    double c1 = 0.0;
    double c2 = 0.0;
    double c1_tilde = 0.0;
    double c2_tilde = 0.0;
    double t_star = 0.0;
    double t_star_tilde = 0.0;
};

/// Unique root of the defining relation.  Requires beta < -e/2 (below that
/// the target exceeds the sup of sqrt(delta)|log delta| on (0, e^-2) and no
/// root exists); the paper regime beta < -sqrt(2) is a subset.
DeltaBetaSolve solve_delta_beta(double beta);

/// Whether beta admits a root (beta < -e/2).
bool delta_beta_solvable(double beta);

ReducedEnergyConstants constants(int k);

/// Leading reduced energy g(t) = -c1 t + c2 t^{3/2}.
double g(int k, double t);

/// Leading part of the m >= 3 projection: -c1~ t delta - c2~ beta (t delta)^{3/2} |log delta|,
/// with delta solved from beta.  Equals delta * (-c1~ t + c2~ t^{3/2}) by the
/// defining relation.
double c_tilde_leading(int k, double beta, double t);

} // namespace bubbleforge
