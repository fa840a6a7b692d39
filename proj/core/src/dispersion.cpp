#include "wavekit/dispersion.hpp"

#include <algorithm>
#include <cmath>

namespace wavekit {

namespace {

std::optional<double> l_of_theta_sq(double theta_sq)
{
    if (std::abs(theta_sq) < 1e-8) {
        // theta coth theta = 1 + t/3 - t^2/45 + 2 t^3/945, t = theta^2
        return 1.0 + theta_sq * (1.0 / 3.0 + theta_sq * (-1.0 / 45.0 + theta_sq * 2.0 / 945.0));
    }
    if (theta_sq > 0.0) {
        const double t = std::sqrt(theta_sq);
        return t / std::tanh(t);
    }
    const double t = std::sqrt(-theta_sq);
    const double st = std::sin(t);
    if (std::abs(st) < 1e-12 * (1.0 + t))
        return std::nullopt;
    return t * std::cos(t) / st;
}

} // namespace

std::optional<double> dispersion_l(int n, double alpha, double kappa)
{
    return l_of_theta_sq(alpha + double(n) * double(n) * kappa * kappa);
}

std::optional<double> dispersion_l_minus_1(double theta_sq)
{
    if (std::abs(theta_sq) < 1e-4)
        return theta_sq * (1.0 / 3.0 + theta_sq * (-1.0 / 45.0 + theta_sq * 2.0 / 945.0));
    const auto l = l_of_theta_sq(theta_sq);
    if (!l)
        return std::nullopt;
    return *l - 1.0;
}

double rhs_r(const TrivialParameters& params)
{
    params.validate();
    const double sa = std::sqrt(-params.alpha);
    const double sl = std::sin(params.lambda);
    return 1.0 / (params.mu * params.mu * (-params.alpha) * sl * sl)
        + sa * std::cos(params.lambda) / sl;
}

bool KernelSet::contains(int n) const
{
    return std::find(modes.begin(), modes.end(), n) != modes.end();
}

KernelMode KernelSet::mode(int n, double kappa) const
{
    for (size_t i = 0; i < modes.size(); ++i)
        if (modes[i] == n)
            return {n, thetas[i], kappa};
    throw std::invalid_argument("mode " + std::to_string(n) + " is not in the kernel set");
}

KernelSet kernel_set(const TrivialParameters& params, double tol)
{
    params.validate();
    if (!(tol > 0.0))
        throw std::domain_error("kernel membership tolerance must be positive");

    KernelSet set;
    set.r_value = rhs_r(params);
    const double band = tol * (1.0 + std::abs(set.r_value));
    const double n_monotone = std::sqrt(-params.alpha) / params.kappa;

    for (int n = 0;; ++n) {
        const auto l = dispersion_l(n, params.alpha, params.kappa);
        if (!l) {
            set.undefined_modes.push_back(n);
            continue;
        }
        if (std::abs(*l - set.r_value) <= band) {
            set.modes.push_back(n);
            set.thetas.push_back(make_theta(n, params.alpha, params.kappa));
            if (n == 0)
                set.contains_zero = true;
        }
        if (n >= n_monotone && *l > set.r_value + band)
            break;
    }
    return set;
}

std::optional<double> mu_for_mode(int n, double alpha, double lambda, double kappa, int sign)
{
    const auto l = dispersion_l(n, alpha, kappa);
    if (!l)
        return std::nullopt;
    const double sa = std::sqrt(-alpha);
    const double radicand = *l - sa * std::cos(lambda) / std::sin(lambda);
    if (!(radicand > 0.0))
        return std::nullopt;
    return double(sign) / (sa * std::sin(lambda) * std::sqrt(radicand));
}

bool transversality_ok(const TrivialParameters& params)
{
    const double sa = std::sqrt(-params.alpha);
    const double lhs = std::cos(params.lambda) / std::sin(params.lambda)
        + 0.5 * params.mu * params.mu * sa * sa * sa;
    return std::abs(lhs) > 1e-12;
}

double tan_fixed_point(int k)
{
    // root of g(x) = sin x - x cos x in (k pi, k pi + pi/2); g(k pi) and
    // g(k pi + pi/2) have opposite signs for every k >= 1
    double lo = k * M_PI;
    double hi = k * M_PI + 0.5 * M_PI;
    auto g = [](double x) { return std::sin(x) - x * std::cos(x); };
    const double glo = g(lo);
    for (int it = 0; it < 200 && hi - lo > 1e-17 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if ((g(mid) > 0.0) == (glo > 0.0))
            lo = mid;
        else
            hi = mid;
    }
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 4; ++it)
        x -= (std::sin(x) - x * std::cos(x)) / (x * std::sin(x));
    return x;
}

double sigma_constant()
{
    static const double sigma = tan_fixed_point(1);
    return sigma;
}

} // namespace wavekit
