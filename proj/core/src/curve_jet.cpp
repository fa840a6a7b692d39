#include "wavekit/curve_jet.hpp"

#include "wavekit/pairings.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wavekit {

namespace {

// Fourier coefficients over one period by the trapezoid rule, exact for the
// trigonometric polynomials the quadratic form produces (degree < nx).
double cos_coefficient(const std::function<double(double)>& f, int k, double kappa, int nx)
{
    const QuadratureRule qx = periodic_trapezoid(nx, kappa);
    double acc = 0.0;
    for (int i = 0; i < nx; ++i)
        acc += qx.w[i] * f(qx.x[i]) * std::cos(k * kappa * qx.x[i]);
    const double period = 2.0 * M_PI / kappa;
    return (k == 0 ? 1.0 : 2.0) * acc / period;
}

double sin_coefficient(const std::function<double(double)>& f, int k, double kappa, int nx)
{
    if (k == 0)
        return 0.0;
    const QuadratureRule qx = periodic_trapezoid(nx, kappa);
    double acc = 0.0;
    for (int i = 0; i < nx; ++i)
        acc += qx.w[i] * f(qx.x[i]) * std::sin(k * kappa * qx.x[i]);
    return 2.0 * acc * kappa / (2.0 * M_PI);
}

Field2 harmonic_field(const ModeBvpSolution& a0, const ModeBvpSolution& a2,
                      const HarmonicCoefficients& h, double kappa)
{
    const double mk = 2.0 * h.base_mode * kappa;
    const auto b0 = h.b0;
    const auto b2 = h.b2;
    const double t0 = a0.theta_sq;
    const double t2 = a2.theta_sq;
    Field2 z;
    z.f = [a0, a2, mk](double x, double s) { return a0.a(s) + a2.a(s) * std::cos(mk * x); };
    z.fx = [a2, mk](double x, double s) { return -mk * a2.a(s) * std::sin(mk * x); };
    z.fxx = [a2, mk](double x, double s) {
        return -mk * mk * a2.a(s) * std::cos(mk * x);
    };
    z.fs = [a0, a2, mk](double x, double s) {
        return a0.a_prime(s) + a2.a_prime(s) * std::cos(mk * x);
    };
    z.fxs = [a2, mk](double x, double s) {
        return -mk * a2.a_prime(s) * std::sin(mk * x);
    };
    // a'' recovered from the equation itself: a'' = theta^2 a - b.
    z.fss = [a0, a2, b0, b2, t0, t2, mk](double x, double s) {
        const double app0 = t0 * a0.a(s) - b0(s);
        const double app2 = t2 * a2.a(s) - b2(s);
        return app0 + app2 * std::cos(mk * x);
    };
    return z;
}

} // namespace

HarmonicCoefficients second_order_data(const TrivialFlow& flow, int n)
{
    if (n < 1)
        throw std::invalid_argument("second_order_data requires a mode n >= 1");
    const double kappa = flow.params.kappa;
    const KernelMode mode{n, make_theta(n, flow.params.alpha, kappa), kappa};
    const WavePair w_star = t_isomorphism(flow, mode_field(mode));
    const YElement quad = d2_form_diag(flow, w_star);

    const int nx = 16 * (n + 1);
    HarmonicCoefficients h;
    h.base_mode = n;
    h.c0 = cos_coefficient(quad.surface, 0, kappa, nx);
    h.c2 = cos_coefficient(quad.surface, 2 * n, kappa, nx);

    const std::function<double(double, double)> interior = quad.interior;
    h.b0 = [interior, kappa, nx](double s) {
        return cos_coefficient([&](double x) { return interior(x, s); }, 0, kappa, nx);
    };
    h.b2 = [interior, kappa, nx, n](double s) {
        return cos_coefficient([&](double x) { return interior(x, s); }, 2 * n, kappa, nx);
    };

    double worst = 0.0;
    const QuadratureRule qs = gauss_legendre(8);
    for (int k = 0; k <= 4 * n + 2; ++k) {
        const bool expected = (k == 0 || k == 2 * n);
        if (!expected)
            worst = std::max(worst, std::abs(cos_coefficient(quad.surface, k, kappa, nx)));
        worst = std::max(worst, std::abs(sin_coefficient(quad.surface, k, kappa, nx)));
        for (int j = 0; j < 8; ++j) {
            const double s = qs.x[j];
            auto slice = [&](double x) { return interior(x, s); };
            if (!expected)
                worst = std::max(worst, std::abs(cos_coefficient(slice, k, kappa, nx)));
            worst = std::max(worst, std::abs(sin_coefficient(slice, k, kappa, nx)));
        }
    }
    h.spurious_harmonics = worst;
    return h;
}

CurveJet curve_jet(const TrivialFlow& flow, int n, int bvp_nodes)
{
    flow.params.validate();
    if (n < 1)
        throw std::domain_error("curve_jet requires a mode n >= 1");
    const KernelSet ks = kernel_set(flow.params);
    if (ks.dimension() != 1 || !ks.contains(n))
        throw std::domain_error("curve_jet requires the kernel set to equal {n}");
    if (!transversality_ok(flow.params))
        throw std::domain_error(
            "curve_jet requires cot(lambda) != -mu^2 |alpha|^{3/2}/2");

    const double kappa = flow.params.kappa;
    const double alpha = flow.params.alpha;

    CurveJet jet;
    jet.harmonics = second_order_data(flow, n);
    jet.a0 = solve_mode_bvp(alpha, jet.harmonics.b0, jet.harmonics.c0, flow, bvp_nodes);
    jet.a2 = solve_mode_bvp(alpha + 4.0 * n * n * kappa * kappa, jet.harmonics.b2,
                            jet.harmonics.c2, flow, bvp_nodes);

    const KernelMode mode = ks.mode(n, kappa);
    const WavePair w_star = t_isomorphism(flow, mode_field(mode));
    const YElement w_tilde = mode_pair(flow, mode).as_y();
    const WavePair w2 = t_isomorphism(flow, harmonic_field(jet.a0, jet.a2, jet.harmonics, kappa));

    const YElement y2 = d2_form_diag(flow, w_star);
    const YElement y3 = d3_form_diag(flow, w_star);
    const YElement y_mix = d2_form(flow, w_star, w2);

    const int nx = std::max(64, 8 * (n + 1));
    jet.lambda_dot = 0.0;
    jet.lambda_dot_numerator = ip_Y(y2, w_tilde, kappa, nx);
    jet.numerator = ip_Y(y3, w_tilde, kappa, nx) + 3.0 * ip_Y(y_mix, w_tilde, kappa, nx);
    jet.denominator = 3.0 * pairing_dlambda(flow, n);
    jet.lambda_ddot = -jet.numerator / jet.denominator;
    jet.mu_ddot = -jet.numerator / (3.0 * pairing_dmu(flow, n));

    const TrivialParameters& p = flow.params;
    const double slope =
        p.mu * (1.0 / std::tan(p.lambda) +
                0.5 * p.mu * p.mu * flow.root_abs_alpha * flow.root_abs_alpha * flow.root_abs_alpha);
    jet.ratio_residual = jet.lambda_ddot - jet.mu_ddot / slope;
    return jet;
}

WavePair second_order_pair(const TrivialFlow& flow, const CurveJet& jet)
{
    return t_isomorphism(flow,
                         harmonic_field(jet.a0, jet.a2, jet.harmonics, flow.params.kappa));
}

SheetGradients sheet_gradients(const TrivialFlow& flow, int n1, int n2, double v)
{
    if (n1 < 1 || n2 <= n1)
        throw std::invalid_argument("sheet_gradients requires 1 <= n1 < n2");
    const TrivialParameters& p = flow.params;
    const int ns[2] = {n1, n2};
    WavePair w[2];
    YElement wt[2];
    double norm_sq[2];
    for (int i = 0; i < 2; ++i) {
        const KernelMode mode{ns[i], make_theta(ns[i], p.alpha, p.kappa), p.kappa};
        w[i] = t_isomorphism(flow, mode_field(mode));
        wt[i] = mode_pair(flow, mode).as_y();
        norm_sq[i] = mode_pair_norm_sq(flow, mode);
    }

    const int nx = std::max(64, 8 * (n1 + n2));
    SheetGradients out{};
    for (int l = 0; l < 2; ++l) {
        for (int i = 0; i < 2; ++i) {
            for (int j = i; j < 2; ++j) {
                const YElement q =
                    (i == j) ? d2_form_diag(flow, w[i]) : d2_form(flow, w[i], w[j]);
                const double val = ip_Y(q, wt[l], p.kappa, nx) / norm_sq[l];
                out.proj[l][i][j] = val;
                out.proj[l][j][i] = val;
            }
        }
    }
    const double c = std::cos(v);
    const double s = std::sin(v);
    out.psi1_r = 0.5 * c * out.proj[0][0][0] + s * out.proj[0][0][1];
    out.psi2_r = 0.5 * c * c * out.proj[1][0][0] + 0.5 * s * s * out.proj[1][1][1] +
                 s * c * out.proj[1][0][1];
    return out;
}

} // namespace wavekit
