#include "wavekit/pairings.hpp"

#include <cmath>
#include <stdexcept>

namespace wavekit {

namespace {

ThetaValue require_member(const TrivialFlow& flow, int n)
{
    const KernelSet set = kernel_set(flow.params);
    if (!set.contains(n))
        throw std::invalid_argument("mode " + std::to_string(n)
                                    + " does not solve the kernel equation");
    return make_theta(n, flow.params.alpha, flow.params.kappa);
}

double psi0s1_sq(const TrivialFlow& flow)
{
    const double v = flow.psi0_s(1.0);
    return v * v;
}

} // namespace

double pairing_A(const TrivialFlow& flow)
{
    const TrivialParameters& p = flow.params;
    const double sa = flow.root_abs_alpha;
    const double bracket = std::cos(p.lambda) / std::sin(p.lambda)
        + 0.5 * p.mu * p.mu * sa * sa * sa;
    return -2.0 * M_PI / (p.kappa * psi0s1_sq(flow)) * bracket;
}

double pairing_B(const TrivialFlow& flow)
{
    const TrivialParameters& p = flow.params;
    const double sl = std::sin(p.lambda);
    return M_PI / p.kappa
        * (1.0 / (p.mu * p.mu * p.alpha * p.alpha * sl * sl)
           - std::cos(p.lambda) / (sl * 2.0 * flow.root_abs_alpha));
}

double pairing_f(double theta_sq, double kappa)
{
    // equals -(pi/kappa) * integral_0^1 (sinh(theta s)/theta)^2 ds
    return -M_PI / kappa * sinhc_sq_integral(theta_sq);
}

double pairing_dlambda(const TrivialFlow& flow, int n)
{
    const ThetaValue theta = require_member(flow, n);
    const double s1 = theta.sinhc_at(1.0);
    return pairing_A(flow) * s1 * s1;
}

double pairing_dalpha(const TrivialFlow& flow, int n)
{
    const ThetaValue theta = require_member(flow, n);
    const double s1 = theta.sinhc_at(1.0);
    return pairing_B(flow) * s1 * s1 + pairing_f(theta.theta_sq, flow.params.kappa);
}

double pairing_dmu(const TrivialFlow& flow, int n)
{
    const ThetaValue theta = require_member(flow, n);
    const double s1 = theta.sinhc_at(1.0);
    return -2.0 * M_PI / (flow.params.kappa * flow.params.mu * psi0s1_sq(flow)) * s1 * s1;
}

DeterminantC determinant_C(const TrivialFlow& flow, int n1, int n2)
{
    if (!(n1 < n2))
        throw std::invalid_argument("determinant_C requires n1 < n2");
    const ThetaValue t1 = require_member(flow, n1);
    const ThetaValue t2 = require_member(flow, n2);
    const double kappa = flow.params.kappa;

    DeterminantC out;
    out.pairings[0][0] = pairing_dlambda(flow, n1);
    out.pairings[0][1] = pairing_dlambda(flow, n2);
    out.pairings[1][0] = pairing_dalpha(flow, n1);
    out.pairings[1][1] = pairing_dalpha(flow, n2);
    out.matrix_form = out.pairings[0][0] * out.pairings[1][1]
        - out.pairings[1][0] * out.pairings[0][1];

    // With r = l(n1) = l(n2), f(theta_j) = -(pi/2 kappa) S_j^2 (1 - r(r-1)/theta_j^2);
    // the determinant collapses to a product containing r(r-1)(1/theta2^2 - 1/theta1^2).
    // Writing (r-1)/theta2^2 through the series of l - 1 keeps the formula finite
    // and accurate as theta2 -> 0, where it reduces to (pi A / 6 kappa) S1^2.
    const double A = pairing_A(flow);
    const double s1 = t1.sinhc_at(1.0);
    const double s2 = t2.sinhc_at(1.0);
    const double r = rhs_r(flow.params);
    const auto lm1 = dispersion_l_minus_1(t2.theta_sq);
    if (!lm1)
        throw std::invalid_argument("dispersion function undefined at mode n2");
    const double lm1_over_t2 = std::abs(t2.theta_sq) < 1e-4
        ? (1.0 / 3.0 + t2.theta_sq * (-1.0 / 45.0 + t2.theta_sq * 2.0 / 945.0))
        : *lm1 / t2.theta_sq;
    out.simplified_form = M_PI * A / (2.0 * kappa) * s1 * s1 * s2 * s2 * r
        * (lm1_over_t2 - *lm1 / t1.theta_sq);
    return out;
}

} // namespace wavekit
