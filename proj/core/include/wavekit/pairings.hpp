#pragma once

#include "wavekit/dispersion.hpp"
#include "wavekit/trivial_flow.hpp"

namespace wavekit {

// Closed forms of the Y-inner products <D_beta L(Lambda) phi_n, w_tilde_n>
// driving the bifurcation formulas; all take n from the kernel set of params.

// A (sinh(theta_n)/theta_n)^2 with
//   A = -(2 pi/(kappa psi0_s(1)^2)) [cot(lambda) + mu^2 |alpha|^{3/2}/2].
double pairing_dlambda(const TrivialFlow& flow, int n);

// B (sinh(theta_n)/theta_n)^2 + f(theta_n) with
//   B = (pi/kappa) [1/(mu^2 alpha^2 sin^2 lambda) - cot(lambda)/(2 |alpha|^{1/2})]
// and f(t) = (pi/kappa) (t - cosh t sinh t)/(2 t^3), f(0) = -pi/(3 kappa).
double pairing_dalpha(const TrivialFlow& flow, int n);

// -(2 pi/(kappa mu psi0_s(1)^2)) (sinh(theta_n)/theta_n)^2.
double pairing_dmu(const TrivialFlow& flow, int n);

// The A and B prefactors and the tail f by themselves.
double pairing_A(const TrivialFlow& flow);
double pairing_B(const TrivialFlow& flow);
double pairing_f(double theta_sq, double kappa);

struct DeterminantC {
    double matrix_form;     // 2x2 determinant of the four pairings
    double simplified_form; // closed product formula via the kernel equation
    double pairings[2][2];  // rows: d/dlambda, d/dalpha; columns: n1, n2
};

// Determinant deciding solvability of the two-parameter bifurcation system.
// Both evaluation routes are returned; they agree whenever n1, n2 both solve
// the kernel equation. The simplified route reads
//   C = (pi A / 2 kappa) S1^2 S2^2 r (r-1) (1/theta2^2 - 1/theta1^2)
// away from theta2 = 0 and tends to (pi A / 6 kappa) S1^2 as theta2 -> 0.
DeterminantC determinant_C(const TrivialFlow& flow, int n1, int n2);

} // namespace wavekit
