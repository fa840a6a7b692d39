#include "wavekit/operators.hpp"

#include <cmath>

namespace wavekit {

Field2 field_add(const Field2& a, const Field2& b)
{
    auto lift = [](const std::function<double(double, double)>& u,
                   const std::function<double(double, double)>& v) {
        return [u, v](double x, double s) { return u(x, s) + v(x, s); };
    };
    return {lift(a.f, b.f),   lift(a.fx, b.fx),   lift(a.fs, b.fs),
            lift(a.fxx, b.fxx), lift(a.fss, b.fss), lift(a.fxs, b.fxs)};
}

Field2 field_scale(double c, const Field2& a)
{
    auto lift = [c](const std::function<double(double, double)>& u) {
        return [c, u](double x, double s) { return c * u(x, s); };
    };
    return {lift(a.f), lift(a.fx), lift(a.fs), lift(a.fxx), lift(a.fss), lift(a.fxs)};
}

Field2 field_zero()
{
    auto zero = [](double, double) { return 0.0; };
    return {zero, zero, zero, zero, zero, zero};
}

Field2 mode_field(const KernelMode& mode)
{
    const double nk = mode.n * mode.kappa;
    const ThetaValue theta = mode.theta;
    Field2 out;
    out.f = [nk, theta](double x, double s) { return std::cos(nk * x) * theta.sinhc_at(s); };
    out.fx = [nk, theta](double x, double s) {
        return -nk * std::sin(nk * x) * theta.sinhc_at(s);
    };
    out.fs = [nk, theta](double x, double s) { return std::cos(nk * x) * theta.cosh_at(s); };
    out.fxx = [nk, theta](double x, double s) {
        return -nk * nk * std::cos(nk * x) * theta.sinhc_at(s);
    };
    out.fss = [nk, theta](double x, double s) {
        return theta.theta_sq * std::cos(nk * x) * theta.sinhc_at(s);
    };
    out.fxs = [nk, theta](double x, double s) {
        return -nk * std::sin(nk * x) * theta.cosh_at(s);
    };
    return out;
}

WavePair t_isomorphism(const TrivialFlow& flow, const Field2& phi)
{
    const double inv = 1.0 / flow.psi0_s(1.0);
    WavePair w;
    w.eta = [phi, inv](double x) { return -inv * phi.f(x, 1.0); };
    w.eta_x = [phi, inv](double x) { return -inv * phi.fx(x, 1.0); };
    w.eta_xx = [phi, inv](double x) { return -inv * phi.fxx(x, 1.0); };

    const TrivialFlow f = flow;
    w.phi.f = [phi, f, inv](double x, double s) {
        return phi.f(x, s) - s * f.psi0_s(s) * inv * phi.f(x, 1.0);
    };
    w.phi.fx = [phi, f, inv](double x, double s) {
        return phi.fx(x, s) - s * f.psi0_s(s) * inv * phi.fx(x, 1.0);
    };
    w.phi.fxx = [phi, f, inv](double x, double s) {
        return phi.fxx(x, s) - s * f.psi0_s(s) * inv * phi.fxx(x, 1.0);
    };
    w.phi.fs = [phi, f, inv](double x, double s) {
        const double g = f.psi0_s(s) + s * f.psi0_ss(s);
        return phi.fs(x, s) - g * inv * phi.f(x, 1.0);
    };
    w.phi.fss = [phi, f, inv](double x, double s) {
        const double g = 2.0 * f.psi0_ss(s) + s * f.psi0_sss(s);
        return phi.fss(x, s) - g * inv * phi.f(x, 1.0);
    };
    w.phi.fxs = [phi, f, inv](double x, double s) {
        const double g = f.psi0_s(s) + s * f.psi0_ss(s);
        return phi.fxs(x, s) - g * inv * phi.fx(x, 1.0);
    };
    return w;
}

YElement apply_L(const TrivialFlow& flow, const Field2& phi)
{
    const double ps1 = flow.psi0_s(1.0);
    const double robin = flow.psi0_ss(1.0) + 1.0 / ps1;
    const double alpha = flow.params.alpha;
    YElement out;
    out.surface = [phi, ps1, robin](double x) {
        return ps1 * phi.fs(x, 1.0) - robin * phi.f(x, 1.0);
    };
    out.interior = [phi, alpha](double x, double s) {
        return phi.fxx(x, s) + phi.fss(x, s) - alpha * phi.f(x, s);
    };
    return out;
}

namespace {

YElement boundary_derivative(const Field2& phi, double d_psi0s_1, double d_psi0ss_1,
                             double psi0s_1)
{
    // d/d(beta) of [psi0_s phi_s - (psi0_ss + 1/psi0_s) phi] at s = 1
    const double coeff = d_psi0ss_1 - d_psi0s_1 / (psi0s_1 * psi0s_1);
    YElement out;
    out.surface = [phi, d_psi0s_1, coeff](double x) {
        return d_psi0s_1 * phi.fs(x, 1.0) - coeff * phi.f(x, 1.0);
    };
    out.interior = [](double, double) { return 0.0; };
    return out;
}

} // namespace

YElement apply_L_dlambda(const TrivialFlow& flow, const Field2& phi)
{
    return boundary_derivative(phi, flow.psi0_s_lambda(1.0), flow.psi0_ss_lambda(1.0),
                               flow.psi0_s(1.0));
}

YElement apply_L_dalpha(const TrivialFlow& flow, const Field2& phi)
{
    YElement out = boundary_derivative(phi, flow.psi0_s_alpha(1.0), flow.psi0_ss_alpha(1.0),
                                       flow.psi0_s(1.0));
    out.interior = [phi](double x, double s) { return -phi.f(x, s); };
    return out;
}

YElement apply_L_dmu(const TrivialFlow& flow, const Field2& phi)
{
    return boundary_derivative(phi, flow.psi0_s_mu(1.0), flow.psi0_ss_mu(1.0),
                               flow.psi0_s(1.0));
}

double ip_Y(const YElement& w1, const YElement& w2, double kappa, int nx, int ns)
{
    const QuadratureRule qx = periodic_trapezoid(nx, kappa);
    const QuadratureRule qs = gauss_legendre(ns);
    double surface = 0.0;
    for (int i = 0; i < nx; ++i)
        surface += qx.w[i] * w1.surface(qx.x[i]) * w2.surface(qx.x[i]);
    double interior = 0.0;
    for (int i = 0; i < nx; ++i) {
        double column = 0.0;
        for (int j = 0; j < ns; ++j)
            column += qs.w[j] * w1.interior(qx.x[i], qs.x[j]) * w2.interior(qx.x[i], qs.x[j]);
        interior += qx.w[i] * column;
    }
    return surface + interior;
}

WavePair mode_pair(const TrivialFlow& flow, const KernelMode& mode)
{
    const double coeff = -mode.theta.sinhc_at(1.0) / flow.psi0_s(1.0);
    const double nk = mode.n * mode.kappa;
    WavePair w;
    w.eta = [coeff, nk](double x) { return coeff * std::cos(nk * x); };
    w.eta_x = [coeff, nk](double x) { return -coeff * nk * std::sin(nk * x); };
    w.eta_xx = [coeff, nk](double x) { return -coeff * nk * nk * std::cos(nk * x); };
    w.phi = mode_field(mode);
    return w;
}

double mode_pair_norm_sq(const TrivialFlow& flow, const KernelMode& mode)
{
    const double s1 = mode.theta.sinhc_at(1.0);
    const double ps1 = flow.psi0_s(1.0);
    const double x_weight = mode.n == 0 ? 2.0 * M_PI / mode.kappa : M_PI / mode.kappa;
    return x_weight * (s1 * s1 / (ps1 * ps1) + sinhc_sq_integral(mode.theta.theta_sq));
}

std::vector<double> project_Z(const TrivialFlow& flow, const KernelSet& modes,
                              const YElement& w)
{
    if (modes.modes.empty())
        throw std::invalid_argument("project_Z requires a nonempty kernel set");
    const double kappa = flow.params.kappa;
    int max_mode = 1;
    for (int n : modes.modes)
        max_mode = std::max(max_mode, n);
    const int nx = 4 * (max_mode + 2) + 8;

    std::vector<double> coeffs;
    coeffs.reserve(modes.modes.size());
    for (size_t i = 0; i < modes.modes.size(); ++i) {
        const KernelMode mode{modes.modes[i], modes.thetas[i], kappa};
        const WavePair wt = mode_pair(flow, mode);
        const double num = ip_Y(w, wt.as_y(), kappa, nx);
        coeffs.push_back(num / mode_pair_norm_sq(flow, mode));
    }
    return coeffs;
}

} // namespace wavekit
