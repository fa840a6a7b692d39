#pragma once

#include "wavekit/discretization.hpp"
#include "wavekit/operators.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace wavekit {

// Which parameters the corrector may move; mu and kappa always stay fixed.
struct ParameterMask {
    bool lambda = true;
    bool alpha = false;

    int count() const { return (lambda ? 1 : 0) + (alpha ? 1 : 0); }
};

// Discrete unknown w = (eta, phi_hat) together with the current parameter
// point and the target amplitude coordinate(s).
struct DiscreteWaveState {
    Eigen::VectorXd eta_coeffs;    // cosine coefficients of eta, length n_x
    Eigen::MatrixXd phi;           // phi_hat node values, n_x (x) by n_s (s)
    TrivialParameters params;      // lambda (and alpha for sheets) are active
    std::vector<double> amplitude; // one coordinate per active mode
};

// Frozen data of one continuation problem: the grid, the bifurcation point and
// the compiled amplitude-constraint rows. Immutable and shareable.
struct WaveSystem {
    Discretization disc;
    TrivialFlow base;
    std::vector<int> modes;
    ParameterMask mask;

    // Linear functionals giving the amplitude coordinate of a state, split
    // into the eta part (on coefficients) and the phi part (on vec(phi));
    // normalized so the tangent predictor of each mode has coordinate one.
    Eigen::MatrixXd constraint_eta;
    Eigen::MatrixXd constraint_phi;

    int rows() const;
    int unknowns() const;
};

WaveSystem make_wave_system(const Discretization& disc, const TrivialParameters& base,
                            const std::vector<int>& modes, const ParameterMask& mask);

DiscreteWaveState trivial_state(const WaveSystem& sys);

// t1 w*_{n1} + t2 w*_{n2} + ... sampled on the grid; its amplitude coordinates
// are exactly t by the constraint normalization.
DiscreteWaveState predictor_state(const WaveSystem& sys, const std::vector<double>& t);

Eigen::VectorXd pack_state(const WaveSystem& sys, const DiscreteWaveState& st);
// Amplitude targets and the inactive parameters are copied from `like`.
DiscreteWaveState unpack_state(const WaveSystem& sys, const Eigen::VectorXd& u,
                               const DiscreteWaveState& like);

// Row layout: interior n_x*(n_s-2), surface n_x, bottom Dirichlet n_x, top
// Dirichlet n_x, one amplitude row per active mode.
// Throws std::domain_error when min(1 + eta) <= 0.
Eigen::VectorXd assemble_residual(const WaveSystem& sys, const DiscreteWaveState& st);

// Analytic in the phi unknowns (the interior and surface rows are affine or
// quadratic in phi with explicit coefficients); forward differences with step
// 1e-7 (1 + |u|) for the eta and parameter columns.
Eigen::MatrixXd assemble_jacobian(const WaveSystem& sys, const DiscreteWaveState& st);

struct NewtonDivergence : std::runtime_error {
    double last_residual;
    int iterations;
    bool singular_jacobian;

    NewtonDivergence(const std::string& what, double r, int it, bool sing)
        : std::runtime_error(what), last_residual(r), iterations(it), singular_jacobian(sing)
    {
    }
};

struct NewtonOutcome {
    DiscreteWaveState state;
    double residual_norm; // infinity norm at the solution
    int iterations;
    std::vector<double> history; // infinity norms, initial guess first
};

// Damped Newton (Armijo backtracking, factor 0.5, minimum step 2^-10) until
// the infinity norm drops below tol; throws NewtonDivergence otherwise.
NewtonOutcome newton_correct(const WaveSystem& sys, const DiscreteWaveState& initial,
                             double tol = 1e-11, int max_iter = 25);

// Discrete Y norm sqrt(int eta^2 dx + int int phi^2 dx ds) of a grid pair.
double discrete_y_norm(const WaveSystem& sys, const Eigen::VectorXd& eta_coeffs,
                       const Eigen::MatrixXd& phi);

// Rebuilds phi_hat from eta and the parameters alone by solving the interior
// equation (linear in phi_hat) with zero boundary rows; used when a stored
// state carries only the surface data.
Eigen::MatrixXd solve_interior_phi(const WaveSystem& sys, const DiscreteWaveState& st);

} // namespace wavekit
