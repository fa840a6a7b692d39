#pragma once

#include "wavekit/mode_bvp.hpp"
#include "wavekit/operators.hpp"
#include "wavekit/taylor_forms.hpp"

namespace wavekit {

// Harmonic content of the quadratic form D^2 F (0, Lambda*) (w*, w*):
//   surface  = c0 + c2 cos(2 n kappa x)
//   interior = b0(s) + b2(s) cos(2 n kappa x).
struct HarmonicCoefficients {
    double c0;
    double c2;
    std::function<double(double)> b0;
    std::function<double(double)> b2;
    int base_mode;
    double spurious_harmonics; // largest coefficient outside harmonics {0, 2n}
};

HarmonicCoefficients second_order_data(const TrivialFlow& flow, int n);

// Taylor data of the one-parameter solution curve through the trivial state:
// lambda_bar(t) = lambda* + t^2/2 lambda_ddot + O(t^3) and
// w_bar(t) = t w* + t^2/2 T(zeta) + O(t^3).
struct CurveJet {
    double lambda_dot;           // identically zero
    double lambda_dot_numerator; // quadrature value of the first-order pairing (~0)
    double lambda_ddot;
    double mu_ddot;
    double ratio_residual; // lambda_ddot - mu_ddot/(mu (cot lambda + mu^2|alpha|^{3/2}/2))
    double numerator;      // <D3 F (w*)^3 + 3 D2 F (w*, T zeta), w_tilde*>
    double denominator;    // 3 <D_lambda L phi*, w_tilde*>
    HarmonicCoefficients harmonics;
    ModeBvpSolution a0;
    ModeBvpSolution a2;
};

// Requires M(Lambda) = {n} with n >= 1 and the transversality condition.
CurveJet curve_jet(const TrivialFlow& flow, int n, int bvp_nodes = 48);

// The pair T(zeta) built from the solved harmonics; this is the second-order
// direction of the curve, w_ddot(0) = T(zeta).
WavePair second_order_pair(const TrivialFlow& flow, const CurveJet& jet);

// Radial derivatives of the reduced two-mode system at the trivial state, in
// polar amplitude coordinates (t1, t2) = r (cos v, sin v). proj[l][i][j] is
// the coefficient of D^2 F (0, Lambda) (w_i*, w_j*) on the basis pair of mode
// n_{l+1}; the assembled derivatives are
//   psi1_r = cos(v)/2 proj[0][0][0] + sin(v) proj[0][0][1]
//   psi2_r = cos(v)^2/2 proj[1][0][0] + sin(v)^2/2 proj[1][1][1]
//            + sin(v) cos(v) proj[1][0][1].
// By harmonic orthogonality every proj entry vanishes unless n2 = 2 n1.
struct SheetGradients {
    double proj[2][2][2];
    double psi1_r;
    double psi2_r;
};

SheetGradients sheet_gradients(const TrivialFlow& flow, int n1, int n2, double v);

} // namespace wavekit
