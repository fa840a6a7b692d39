#include "wavekit/taylor_forms.hpp"

#include <stdexcept>

namespace wavekit {

WavePair pair_add(const WavePair& a, const WavePair& b)
{
    auto lift = [](const std::function<double(double)>& u,
                   const std::function<double(double)>& v) {
        return [u, v](double x) { return u(x) + v(x); };
    };
    WavePair out;
    out.eta = lift(a.eta, b.eta);
    out.eta_x = lift(a.eta_x, b.eta_x);
    out.eta_xx = lift(a.eta_xx, b.eta_xx);
    out.phi = field_add(a.phi, b.phi);
    return out;
}

WavePair pair_scale(double c, const WavePair& a)
{
    auto lift = [c](const std::function<double(double)>& u) {
        return [c, u](double x) { return c * u(x); };
    };
    WavePair out;
    out.eta = lift(a.eta);
    out.eta_x = lift(a.eta_x);
    out.eta_xx = lift(a.eta_xx);
    out.phi = field_scale(c, a.phi);
    return out;
}

YElement d1_form(const TrivialFlow& flow, const WavePair& w)
{
    const double ps1 = flow.psi0_s(1.0);
    const double alpha = flow.params.alpha;
    const TrivialFlow f = flow;
    YElement out;
    out.surface = [w, ps1](double x) {
        return (1.0 - ps1 * ps1) * w.eta(x) + ps1 * w.phi.fs(x, 1.0);
    };
    out.interior = [w, f, alpha](double x, double s) {
        return -2.0 * f.psi0_ss(s) * w.eta(x) - s * f.psi0_s(s) * w.eta_xx(x)
            + w.phi.fxx(x, s) + w.phi.fss(x, s) - alpha * w.phi.f(x, s);
    };
    return out;
}

YElement d2_form_diag(const TrivialFlow& flow, const WavePair& w)
{
    const double ps1 = flow.psi0_s(1.0);
    const TrivialFlow f = flow;
    YElement out;
    out.surface = [w, ps1](double x) {
        const double eta = w.eta(x), eta_x = w.eta_x(x), ps = w.phi.fs(x, 1.0);
        return 3.0 * ps1 * ps1 * eta * eta + ps1 * ps1 * eta_x * eta_x
            - 4.0 * ps1 * eta * ps + ps * ps;
    };
    out.interior = [w, f](double x, double s) {
        const double eta = w.eta(x), eta_x = w.eta_x(x), eta_xx = w.eta_xx(x);
        const double p0s = f.psi0_s(s), p0ss = f.psi0_ss(s);
        return 6.0 * p0ss * eta * eta + 2.0 * s * p0s * eta * eta_xx
            + (4.0 * s * p0s + 2.0 * s * s * p0ss) * eta_x * eta_x
            - 4.0 * eta * w.phi.fss(x, s) - 4.0 * s * eta_x * w.phi.fxs(x, s)
            - 2.0 * s * eta_xx * w.phi.fs(x, s);
    };
    return out;
}

YElement d3_form_diag(const TrivialFlow& flow, const WavePair& w)
{
    const double ps1 = flow.psi0_s(1.0);
    const TrivialFlow f = flow;
    YElement out;
    out.surface = [w, ps1](double x) {
        const double eta = w.eta(x), eta_x = w.eta_x(x), ps = w.phi.fs(x, 1.0);
        return -12.0 * ps1 * ps1 * eta * eta * eta
            - 6.0 * ps1 * ps1 * eta * eta_x * eta_x
            + 18.0 * ps1 * eta * eta * ps + 6.0 * ps1 * eta_x * eta_x * ps
            - 6.0 * eta * ps * ps;
    };
    out.interior = [w, f](double x, double s) {
        const double eta = w.eta(x), eta_x = w.eta_x(x), eta_xx = w.eta_xx(x);
        const double p0s = f.psi0_s(s), p0ss = f.psi0_ss(s);
        const double ps = w.phi.fs(x, s), pss = w.phi.fss(x, s), pxs = w.phi.fxs(x, s);
        return -24.0 * p0ss * eta * eta * eta - 6.0 * s * p0s * eta * eta * eta_xx
            - (24.0 * s * p0s + 12.0 * s * s * p0ss) * eta * eta_x * eta_x
            + 18.0 * eta * eta * pss + 12.0 * s * eta * eta_x * pxs
            + 6.0 * s * eta * eta_xx * ps + 12.0 * s * eta_x * eta_x * ps
            + 6.0 * s * s * eta_x * eta_x * pss;
    };
    return out;
}

namespace {

YElement y_combine(std::vector<std::pair<double, YElement>> terms)
{
    YElement out;
    out.surface = [terms](double x) {
        double v = 0.0;
        for (const auto& [c, t] : terms)
            v += c * t.surface(x);
        return v;
    };
    out.interior = [terms](double x, double s) {
        double v = 0.0;
        for (const auto& [c, t] : terms)
            v += c * t.interior(x, s);
        return v;
    };
    return out;
}

} // namespace

YElement d2_form(const TrivialFlow& flow, const WavePair& u, const WavePair& v)
{
    // 2 D2(u, v) = D2(u+v, u+v) - D2(u, u) - D2(v, v)
    return y_combine({{0.5, d2_form_diag(flow, pair_add(u, v))},
                      {-0.5, d2_form_diag(flow, u)},
                      {-0.5, d2_form_diag(flow, v)}});
}

YElement d3_form(const TrivialFlow& flow, const WavePair& u, const WavePair& v,
                 const WavePair& w)
{
    // 24 D3(u, v, w) = sum over signs a, b of a b D3((u + a v + b w)^3)
    std::vector<std::pair<double, YElement>> terms;
    for (const double a : {1.0, -1.0})
        for (const double b : {1.0, -1.0}) {
            const WavePair arg = pair_add(u, pair_add(pair_scale(a, v), pair_scale(b, w)));
            terms.emplace_back(a * b / 24.0, d3_form_diag(flow, arg));
        }
    return y_combine(std::move(terms));
}

YElement taylor_form(const TrivialFlow& flow, const std::vector<WavePair>& inputs,
                     int order)
{
    if (order < 1 || order > 3)
        throw std::invalid_argument("taylor_form supports orders 1 to 3");
    if (static_cast<int>(inputs.size()) != order)
        throw std::invalid_argument("taylor_form needs exactly `order` inputs");
    switch (order) {
    case 1:
        return d1_form(flow, inputs[0]);
    case 2:
        return d2_form(flow, inputs[0], inputs[1]);
    default:
        return d3_form(flow, inputs[0], inputs[1], inputs[2]);
    }
}

} // namespace wavekit
