#include "wavekit/trivial_flow.hpp"

#include <cmath>

namespace wavekit {

bool TrivialParameters::in_domain() const noexcept
{
    return mu != 0.0 && alpha < 0.0 && lambda > 0.0 && lambda < M_PI && kappa > 0.0;
}

void TrivialParameters::validate() const
{
    if (!(mu != 0.0))
        throw std::domain_error("trivial flow requires mu != 0");
    if (!(alpha < 0.0))
        throw std::domain_error("trivial flow requires alpha < 0");
    if (!(lambda > 0.0 && lambda < M_PI))
        throw std::domain_error("trivial flow requires 0 < lambda < pi");
    if (!(kappa > 0.0))
        throw std::domain_error("trivial flow requires kappa > 0");
}

BranchKernels branch_kernels(double theta_sq, double s)
{
    const double u = theta_sq * s * s;
    if (std::abs(u) < 1e-8) {
        // sinh(t s)/t = s (1 + u/6 + u^2/120 + u^3/5040 + ...), u = theta^2 s^2
        const double sinhc = s * (1.0 + u * (1.0 / 6.0 + u * (1.0 / 120.0 + u / 5040.0)));
        const double c = 1.0 + u * (0.5 + u * (1.0 / 24.0 + u / 720.0));
        return {sinhc, c};
    }
    if (theta_sq > 0.0) {
        const double t = std::sqrt(theta_sq);
        return {std::sinh(t * s) / t, std::cosh(t * s)};
    }
    const double t = std::sqrt(-theta_sq);
    return {std::sin(t * s) / t, std::cos(t * s)};
}

double sinhc_sq_integral(double theta_sq)
{
    if (std::abs(theta_sq) < 1e-5) {
        // 1/3 + theta^2/15 + 2 theta^4/315 + theta^6/2835
        return 1.0 / 3.0
            + theta_sq * (1.0 / 15.0 + theta_sq * (2.0 / 315.0 + theta_sq / 2835.0));
    }
    const BranchKernels k = branch_kernels(theta_sq, 1.0);
    return (k.sinhc * k.cosh_val - 1.0) / (2.0 * theta_sq);
}

ThetaValue make_theta(int n, double alpha, double kappa)
{
    return {alpha + double(n) * double(n) * kappa * kappa, n};
}

namespace {
inline double arg_of(const TrivialParameters& p, double root_abs_alpha, double s)
{
    return root_abs_alpha * (s - 1.0) + p.lambda;
}
} // namespace

double TrivialFlow::psi0(double s) const
{
    return params.mu * std::cos(arg_of(params, root_abs_alpha, s));
}

double TrivialFlow::psi0_s(double s) const
{
    return -params.mu * root_abs_alpha * std::sin(arg_of(params, root_abs_alpha, s));
}

double TrivialFlow::psi0_ss(double s) const
{
    return params.alpha * psi0(s);
}

double TrivialFlow::psi0_sss(double s) const
{
    return params.alpha * psi0_s(s);
}

double TrivialFlow::psi0_s_lambda(double s) const
{
    return -params.mu * root_abs_alpha * std::cos(arg_of(params, root_abs_alpha, s));
}

double TrivialFlow::psi0_ss_lambda(double s) const
{
    return -params.alpha * params.mu * std::sin(arg_of(params, root_abs_alpha, s));
}

double TrivialFlow::psi0_s_alpha(double s) const
{
    // d(|alpha|^{1/2})/d(alpha) = -1/(2 |alpha|^{1/2})
    const double a = arg_of(params, root_abs_alpha, s);
    return params.mu / (2.0 * root_abs_alpha)
        * (std::sin(a) + root_abs_alpha * (s - 1.0) * std::cos(a));
}

double TrivialFlow::psi0_ss_alpha(double s) const
{
    const double a = arg_of(params, root_abs_alpha, s);
    const double psi0_alpha = params.mu * (s - 1.0) * std::sin(a) / (2.0 * root_abs_alpha);
    return psi0(s) + params.alpha * psi0_alpha;
}

double TrivialFlow::psi0_s_mu(double s) const
{
    return psi0_s(s) / params.mu;
}

double TrivialFlow::psi0_ss_mu(double s) const
{
    return psi0_ss(s) / params.mu;
}

TrivialFlow make_trivial_flow(const TrivialParameters& params)
{
    params.validate();
    TrivialFlow flow;
    flow.params = params;
    flow.root_abs_alpha = std::sqrt(-params.alpha);
    const double sl = std::sin(params.lambda);
    flow.Q = 0.5 * params.mu * params.mu * (-params.alpha) * sl * sl;
    flow.m0 = params.mu * std::cos(params.lambda - flow.root_abs_alpha);
    flow.m1 = params.mu * std::cos(params.lambda);
    return flow;
}

} // namespace wavekit
