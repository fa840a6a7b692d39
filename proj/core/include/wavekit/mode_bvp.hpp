#pragma once

#include "wavekit/spectral.hpp"
#include "wavekit/trivial_flow.hpp"

#include <functional>

namespace wavekit {

// Chebyshev-collocation solution of the two-point problem
//   a''(s) - theta^2 a(s) = -b(s),   a(0) = 0,
//   psi0_s(1) a'(1) - (psi0_ss(1) + 1/psi0_s(1)) a(1) = -c.
struct ModeBvpSolution {
    Eigen::VectorXd values;      // a at the collocation nodes
    Eigen::VectorXd derivative;  // a' at the nodes
    ChebyshevGrid grid;
    double theta_sq;
    double boundary_residual;
    double interior_residual;

    double a(double s) const { return grid.interpolate(values, s); }
    double a_prime(double s) const { return grid.interpolate(derivative, s); }
};

// Throws std::runtime_error when the collocation matrix is numerically
// singular (theta^2 at a resonance of the homogeneous problem).
ModeBvpSolution solve_mode_bvp(double theta_sq, const std::function<double(double)>& b,
                               double c, const TrivialFlow& flow, int nodes = 48);

} // namespace wavekit
