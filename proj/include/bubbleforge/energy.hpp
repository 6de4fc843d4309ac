#pragma once

#include <span>
#include <vector>

#include "bubbleforge/fields.hpp"
#include "bubbleforge/quadrature.hpp"
#include "bubbleforge/scaling.hpp"

namespace bubbleforge {

/// The three integrals of the energy functional and their combination
/// total = gradient/2 - sextic/6 - (beta/3) coupling.
struct EnergyReport {
    double gradient_part = 0.0; // int |grad u|^2 + |grad v|^2
    double sextic_part = 0.0;   // int u_+^6 + v_+^6
    double coupling_part = 0.0; // int u_+^3 v_+^3
    double total = 0.0;
    double err_est = 0.0;
    long n_evals = 0;
    bool converged = true;
};

/// Gradient integrals are evaluated through the exact identity
/// int |grad u|^2 = int (-Delta u) u, which for the ansatz reduces every
/// gradient term to bubble-algebra potentials; differentiating through
/// quadrature is never needed.
EnergyReport j_beta(const ScalarField& u, const ScalarField& v, const CouplingRegime& regime,
                    const QuadratureSpec& spec = {});

struct ExpansionReport {
    int k = 0;
    double t = 0.0;
    double beta = 0.0;
    double delta = 0.0;
    double F_numeric = 0.0;
    double F_predicted = 0.0;
    double theta = 0.0;       // F_numeric - F_predicted
    double fitted_C = 0.0;    // |theta| |log delta| / delta
    double theta_bound = 0.0; // fitted_C * delta / |log delta|
    double err_est = 0.0;
    bool converged = true;
};

/// Compares the quadrature value of the ansatz energy with the closed-form
/// leading expansion (k+1)/3 ||U||_6^6 + delta g(t).  The energy is assembled
/// from the interaction pieces
///   J(U,V) = (k+1)/3 ||U||_6^6 + 1/2 S1 - 1/6 S2 - beta/3 S3,
///   S1 = sum_{j != i} int U_j^5 U_i,  S2 = int (V^6 - sum U_j^6),  S3 = int U^3 V^3,
/// so that theta is resolvable far below the magnitude of the total energy.
ExpansionReport f_beta_expansion_check(int k, double t, double beta,
                                       const QuadratureSpec& spec = {});

struct ErrorNormReport {
    double e1 = 0.0;       // ||E1||_{6/5}
    double e2 = 0.0;       // ||E2||_{6/5}
    double e1_tilde = 0.0;
    double e2_tilde = 0.0;
    double err_est = 0.0;
    bool converged = true;
};

ErrorNormReport error_norm_report(const PolygonConfig& cfg, const CouplingRegime& regime,
                                  const QuadratureSpec& spec = {});

struct LemmaA1Row {
    double delta = 0.0;
    double integral = 0.0;
    double bound = 0.0; // the f1/f2 combination with C = 1
    double ratio = 0.0;
};

struct LemmaA1Report {
    double nu = 0.0;
    double gamma = 0.0;
    int k = 0;
    double t = 0.0;
    std::vector<LemmaA1Row> rows;
    double fitted_C = 0.0; // max ratio along the grid
    bool converged = true;
};

/// Wedge integral int_{Omega_1} U^{6-nu-gamma} U_{t,1}^nu (sum_{j>=2} U_{t,j})^gamma
/// against the displayed two-branch bound, per delta in the grid.
LemmaA1Report lemma_a1_check(double nu, double gamma, int k, std::span<const double> deltas,
                             double t, const QuadratureSpec& spec = {});

struct ZktNormReport {
    double norm_sq = 0.0;  // ||Z_{k,t}||^2 via 5 sum_{j,i} int U_j^4 Z_j Z_i
    double limit = 0.0;    // (15 sqrt(3) pi^2 / 64) k
    double diagonal = 0.0;
    double off_diagonal = 0.0;
    double err_est = 0.0;
    bool converged = true;
};

ZktNormReport zkt_norm_check(const PolygonConfig& cfg, const QuadratureSpec& spec = {});

struct ReductionIntegrals {
    double I1 = 0.0; // int (V^5 - sum U_j^5) Z_{k,t}
    double I2 = 0.0; // beta int U^3 V^2 Z_{k,t}
    double I3 = 0.0; // alpha int V^2 (sum_{r>=2} V_r)^3 Z_{k,t}
    double I1_leading = 0.0; // c1~ t delta
    double I2_leading = 0.0; // c2~ beta (t delta)^{3/2} |log delta|
    double I3_envelope = 0.0; // |alpha| delta^3 |log delta|
    double i2_ball = 0.0;      // int_{B_r0(xi_1)} U^3 U_1^2 Z0_1 (the log-carrying core)
    double i2_remainder = 0.0; // I2/(beta k) - i2_ball
    double r0 = 0.0;
    double err_est = 0.0;
    bool converged = true;
};

ReductionIntegrals reduction_integrals(const PolygonConfig& cfg, const CouplingRegime& regime,
                                       const QuadratureSpec& spec = {});

} // namespace bubbleforge
