#pragma once

#include "wavekit/trivial_flow.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

namespace wavekit {

// Dispersion function l(n, alpha) = theta_n coth(theta_n) with
// theta_n^2 = alpha + n^2 kappa^2, extended by continuity to 1 at theta_n = 0.
// In the oscillatory regime it reads |theta| cot(|theta|) and is undefined at
// the isolated poles alpha + n^2 kappa^2 = -(m pi)^2, m >= 1; nullopt there.
std::optional<double> dispersion_l(int n, double alpha, double kappa);

// (l(theta^2) - 1), accurate near theta^2 = 0 where the direct difference cancels.
std::optional<double> dispersion_l_minus_1(double theta_sq);

// Right-hand side of the kernel equation l(n, alpha) = r(Lambda):
//   r = 1/(mu^2 |alpha| sin^2 lambda) + |alpha|^{1/2} cot(lambda).
double rhs_r(const TrivialParameters& params);

// A horizontal mode in the kernel: phi_n(x, s) = cos(n kappa x) sinh(theta_n s)/theta_n.
struct KernelMode {
    int n;
    ThetaValue theta;
    double kappa;

    double phi(double x, double s) const
    {
        return std::cos(n * kappa * x) * theta.sinhc_at(s);
    }
};

// Solution set M(Lambda) of the kernel equation, together with the modes where
// l is undefined inside the scanned range.
struct KernelSet {
    std::vector<int> modes;
    std::vector<ThetaValue> thetas;
    std::vector<int> undefined_modes;
    bool contains_zero = false;
    double r_value = 0.0;

    int dimension() const { return static_cast<int>(modes.size()); }
    bool contains(int n) const;
    KernelMode mode(int n, double kappa) const;
};

inline constexpr double kernel_membership_tol = 1e-9;

// Scans n = 0, 1, 2, ... collecting |l(n, alpha) - r| <= tol * (1 + |r|); the
// scan stops at the first n >= |alpha|^{1/2}/kappa with l above the band, where
// l is strictly increasing.
KernelSet kernel_set(const TrivialParameters& params, double tol = kernel_membership_tol);

// The amplitude putting mode n into the kernel at (alpha, lambda):
//   mu = sign / (|alpha|^{1/2} sin(lambda) sqrt(l(n, alpha) - |alpha|^{1/2} cot lambda)),
// or nullopt when l is undefined or the radicand is nonpositive.
std::optional<double> mu_for_mode(int n, double alpha, double lambda, double kappa,
                                  int sign = +1);

// cot(lambda) != -mu^2 |alpha|^{3/2} / 2, required for bifurcation in lambda.
bool transversality_ok(const TrivialParameters& params);

// Smallest positive root of x cot(x) = 1 (equivalently tan x = x in (pi, 3pi/2)).
double sigma_constant();

// k-th positive root of tan x = x, in (k pi + pi/2 - ..), k >= 1; sigma_constant() is k = 1.
double tan_fixed_point(int k);

} // namespace wavekit
