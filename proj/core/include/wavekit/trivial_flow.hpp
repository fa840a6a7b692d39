#pragma once

#include <functional>
#include <stdexcept>

namespace wavekit {

// Parameter triple (mu, alpha, lambda) of a laminar base flow, together with
// the horizontal wavenumber kappa. Admissible parameters form the open set
//   U = { mu != 0, alpha < 0, 0 < lambda < pi },  kappa > 0.
struct TrivialParameters {
    double mu;
    double alpha;
    double lambda;
    double kappa;

    bool in_domain() const noexcept;
    // Throws std::domain_error naming the violated constraint.
    void validate() const;
};

// Pair (sinh(theta*s)/theta, cosh(theta*s)) evaluated through theta^2, so that
// both components stay real when theta^2 < 0:
//   theta^2 > 0:  (sinh(t s)/t, cosh(t s)),        t = sqrt(theta^2)
//   theta^2 < 0:  (sin(t s)/t,  cos(t s)),         t = sqrt(-theta^2)
//   theta^2 = 0:  (s, 1)
// A Taylor fallback keeps the evaluation smooth across theta^2 = 0.
struct BranchKernels {
    double sinhc;
    double cosh_val;
};

BranchKernels branch_kernels(double theta_sq, double s);

// d/ds of sinhc(theta, s) is cosh(theta, s); d/ds of cosh is theta^2 * sinhc.

// integral_0^1 (sinh(theta s)/theta)^2 ds, real-analytic in theta^2
// (equals (sinhc*cosh - 1)/(2 theta^2) away from zero, 1/3 at zero).
double sinhc_sq_integral(double theta_sq);

// theta for a given horizontal mode: theta^2 = alpha + n^2 kappa^2.
struct ThetaValue {
    double theta_sq;
    int mode_n;

    BranchKernels at(double s) const { return branch_kernels(theta_sq, s); }
    double sinhc_at(double s) const { return at(s).sinhc; }
    double cosh_at(double s) const { return at(s).cosh_val; }
};

ThetaValue make_theta(int n, double alpha, double kappa);

// Laminar flow psi0(s) = mu * cos(|alpha|^{1/2}(s-1) + lambda) on the unit
// strip, with its s-derivatives, the closed-form parameter derivatives used by
// the bifurcation formulas, and the associated constants
//   Q  = mu^2 |alpha| sin^2(lambda) / 2      (Bernoulli)
//   m0 = mu cos(lambda - |alpha|^{1/2})      (bottom stream value)
//   m1 = mu cos(lambda)                      (surface stream value).
struct TrivialFlow {
    TrivialParameters params;
    double Q;
    double m0;
    double m1;

    double psi0(double s) const;
    double psi0_s(double s) const;
    double psi0_ss(double s) const;
    double psi0_sss(double s) const;

    double psi0_s_lambda(double s) const;
    double psi0_ss_lambda(double s) const;
    double psi0_s_alpha(double s) const;
    double psi0_ss_alpha(double s) const;
    double psi0_s_mu(double s) const;
    double psi0_ss_mu(double s) const;

    // |alpha|^{1/2}, cached for the formulas above
    double root_abs_alpha;
};

TrivialFlow make_trivial_flow(const TrivialParameters& params);

} // namespace wavekit
