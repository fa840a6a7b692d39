#pragma once

// Shared utilities for tests that need library types: random parameter
// sampling through the kernel charts, and analytic test fields.

#include "wavekit/dispersion.hpp"
#include "wavekit/operators.hpp"
#include "wavekit/trivial_flow.hpp"

#include <cmath>
#include <optional>
#include <random>

namespace testutil {

using namespace wavekit;

// A parameter point whose kernel set provably contains the chosen mode:
// draw (alpha, lambda, kappa, n), then place mu on the chart for mode n.
// Rejects draws where the dispersion value is undefined or the radicand is
// too close to zero for a well-conditioned chart.
struct ChartSample {
    TrivialParameters params;
    int n;
};

inline std::optional<ChartSample> sample_kernel_point(std::mt19937& rng)
{
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const double kappa = 0.4 + 2.1 * u01(rng);
    const double alpha = -(0.3 + 24.7 * u01(rng));
    const double lambda = 0.35 + (M_PI - 0.7) * u01(rng);
    const int n = 1 + static_cast<int>(6.0 * u01(rng));
    const auto l = dispersion_l(n, alpha, kappa);
    if (!l)
        return std::nullopt;
    const double radicand = *l - std::sqrt(-alpha) / std::tan(lambda);
    if (radicand < 0.02)
        return std::nullopt;
    const int sign = u01(rng) < 0.5 ? -1 : +1;
    const auto mu = mu_for_mode(n, alpha, lambda, kappa, sign);
    if (!mu)
        return std::nullopt;
    TrivialParameters p{*mu, alpha, lambda, kappa};
    const KernelSet ks = kernel_set(p);
    if (!ks.contains(n))
        return std::nullopt;
    if (!transversality_ok(p))
        return std::nullopt;
    return ChartSample{p, n};
}

// Parameter point with l(n1, alpha) = l(n2, alpha) = r(Lambda): alpha from a
// scan-and-bisect on the dispersion crossing inside [lo, hi], mu from the
// membership chart for n1. nullopt when the window holds no clean crossing or
// the chart radicand closes.
inline std::optional<TrivialParameters> two_mode_chart(int n1, int n2, double kappa,
                                                       double lambda, int sign, double lo,
                                                       double hi)
{
    auto g = [&](double a) -> std::optional<double> {
        const auto l1 = dispersion_l(n1, a, kappa);
        const auto l2 = dispersion_l(n2, a, kappa);
        if (!l1 || !l2)
            return std::nullopt;
        return *l1 - *l2;
    };
    const int scan = 600;
    std::optional<double> prev;
    double prev_a = lo;
    for (int i = 0; i <= scan; ++i) {
        const double a = lo + (hi - lo) * i / scan;
        if (a >= -1e-3)
            break;
        const auto v = g(a);
        if (v && prev && *prev * *v < 0.0) {
            double x0 = prev_a, x1 = a, f0 = *prev;
            bool clean = true;
            for (int it = 0; it < 200 && clean; ++it) {
                const double xm = 0.5 * (x0 + x1);
                const auto fm = g(xm);
                if (!fm) {
                    clean = false;
                    break;
                }
                if (f0 * *fm <= 0.0) {
                    x1 = xm;
                } else {
                    x0 = xm;
                    f0 = *fm;
                }
            }
            const double root = 0.5 * (x0 + x1);
            const auto res = g(root);
            // a sign flip across a dispersion pole bisects to the pole, where
            // the difference stays large; require an actual root
            if (clean && res && std::abs(*res) < 1e-6) {
                const auto mu = mu_for_mode(n1, root, lambda, kappa, sign);
                if (mu) {
                    TrivialParameters p{*mu, root, lambda, kappa};
                    const KernelSet ks = kernel_set(p);
                    if (ks.contains(n1) && ks.contains(n2))
                        return p;
                }
            }
        }
        if (v) {
            prev = v;
            prev_a = a;
        } else {
            prev.reset();
        }
    }
    return std::nullopt;
}

// cos(k kappa x) * (s + c2 s^2 + c3 s^3), with all the partial derivatives the
// operator calculus consumes. Vanishes at s = 0, so t_isomorphism applies.
inline Field2 cosine_poly_field(int k, double kappa, double c2, double c3)
{
    const double mk = k * kappa;
    auto p = [c2, c3](double s) { return s + c2 * s * s + c3 * s * s * s; };
    auto dp = [c2, c3](double s) { return 1.0 + 2.0 * c2 * s + 3.0 * c3 * s * s; };
    auto ddp = [c2, c3](double s) { return 2.0 * c2 + 6.0 * c3 * s; };
    Field2 f;
    f.f = [mk, p](double x, double s) { return std::cos(mk * x) * p(s); };
    f.fx = [mk, p](double x, double s) { return -mk * std::sin(mk * x) * p(s); };
    f.fxx = [mk, p](double x, double s) { return -mk * mk * std::cos(mk * x) * p(s); };
    f.fs = [mk, dp](double x, double s) { return std::cos(mk * x) * dp(s); };
    f.fss = [mk, ddp](double x, double s) { return std::cos(mk * x) * ddp(s); };
    f.fxs = [mk, dp](double x, double s) { return -mk * std::sin(mk * x) * dp(s); };
    return f;
}

inline double rel_diff(double a, double b)
{
    return std::abs(a - b) / (1.0 + std::max(std::abs(a), std::abs(b)));
}

} // namespace testutil
