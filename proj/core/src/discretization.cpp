#include "wavekit/discretization.hpp"

#include <cmath>
#include <stdexcept>

namespace wavekit {

Discretization make_discretization(int n_x, int n_s, double kappa)
{
    if (n_x < 4 || n_s < 4)
        throw std::invalid_argument("discretization needs at least 4 nodes per direction");
    if (!(kappa > 0.0))
        throw std::invalid_argument("discretization requires kappa > 0");

    Discretization d;
    d.n_x = n_x;
    d.n_s = n_s;
    d.kappa = kappa;
    d.s = chebyshev_grid(n_s);

    const int N = n_x - 1;
    const double h = M_PI / (kappa * N);
    d.x.resize(n_x);
    for (int i = 0; i < n_x; ++i)
        d.x[i] = i * h;

    d.synth.resize(n_x, n_x);
    d.analyze.resize(n_x, n_x);
    d.dx_coeff.resize(n_x, n_x);
    d.dxx_coeff.resize(n_x, n_x);
    for (int i = 0; i < n_x; ++i) {
        for (int k = 0; k < n_x; ++k) {
            const double c = std::cos(M_PI * i * k / N);
            d.synth(i, k) = c;
            const double ck = (k == 0 || k == N) ? 0.5 : 1.0;
            const double wi = (i == 0 || i == N) ? 0.5 : 1.0;
            d.analyze(k, i) = (2.0 / N) * ck * wi * c;
            const double kk = k * kappa;
            d.dx_coeff(i, k) = -kk * std::sin(kk * d.x[i]);
            d.dxx_coeff(i, k) = -kk * kk * c;
        }
    }
    d.dx = d.dx_coeff * d.analyze;
    d.dxx = d.dxx_coeff * d.analyze;

    d.x_weights.assign(n_x, 2.0 * h);
    d.x_weights.front() = h;
    d.x_weights.back() = h;
    return d;
}

} // namespace wavekit
