#pragma once

#include "wavekit/dispersion.hpp"
#include "wavekit/spectral.hpp"
#include "wavekit/trivial_flow.hpp"

#include <functional>
#include <vector>

namespace wavekit {

// Scalar function of (x, s) carried together with the partial derivatives the
// operator calculus needs. All members must be callable on [0, 2pi/kappa] x [0, 1].
struct Field2 {
    std::function<double(double, double)> f, fx, fs, fxx, fss, fxs;
};

Field2 field_add(const Field2& a, const Field2& b);
Field2 field_scale(double c, const Field2& a);
Field2 field_zero();

// phi_n(x, s) = cos(n kappa x) sinh(theta_n s)/theta_n with analytic derivatives.
Field2 mode_field(const KernelMode& mode);

// Surface/interior pair in the range space Y.
struct YElement {
    std::function<double(double)> surface;
    std::function<double(double, double)> interior;
};

// A pair w = (eta, phi_hat) with the derivatives used by the Taylor forms of
// the flattened operator.
struct WavePair {
    std::function<double(double)> eta, eta_x, eta_xx;
    Field2 phi;

    YElement as_y() const { return {eta, phi.f}; }
};

// T(Lambda) phi = (-phi|_{s=1}/psi0_s(1), phi - s psi0_s(s) phi|_{s=1}/psi0_s(1)),
// an isomorphism onto the pairs whose second component vanishes at s = 0, 1.
WavePair t_isomorphism(const TrivialFlow& flow, const Field2& phi);

// L(Lambda) phi = ([psi0_s phi_s - (psi0_ss + 1/psi0_s) phi]|_{s=1}, (Laplace - alpha) phi).
YElement apply_L(const TrivialFlow& flow, const Field2& phi);

// Lambda-derivatives of L applied to phi; only the surface part depends on
// lambda and mu, while the alpha-derivative also contributes -phi in the interior.
YElement apply_L_dlambda(const TrivialFlow& flow, const Field2& phi);
YElement apply_L_dalpha(const TrivialFlow& flow, const Field2& phi);
YElement apply_L_dmu(const TrivialFlow& flow, const Field2& phi);

// <w1, w2>_Y = int eta1 eta2 dx + int int phi1 phi2 dx ds over one period,
// trapezoid in x (exact for trigonometric polynomials below degree nx) and
// Gauss-Legendre in s.
double ip_Y(const YElement& w1, const YElement& w2, double kappa, int nx = 64,
            int ns = 64);

// Basis element w_tilde_n = (eta_phi_n, phi_n) of the kernel complement Z.
WavePair mode_pair(const TrivialFlow& flow, const KernelMode& mode);

// ||w_tilde_n||_Y^2 in closed form.
double mode_pair_norm_sq(const TrivialFlow& flow, const KernelMode& mode);

// Coefficients <w, w_tilde_n>/||w_tilde_n||^2 for each n in the kernel set.
std::vector<double> project_Z(const TrivialFlow& flow, const KernelSet& modes,
                              const YElement& w);

} // namespace wavekit
