#include "wavekit/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace wavekit {

ChebyshevGrid chebyshev_grid(int n)
{
    if (n < 2)
        throw std::invalid_argument("chebyshev_grid needs at least 2 nodes");
    const int m = n - 1;

    ChebyshevGrid g;
    g.s.resize(n);
    for (int j = 0; j <= m; ++j)
        g.s[j] = 0.5 * (1.0 - std::cos(j * M_PI / m));

    // standard Gauss-Lobatto differentiation matrix on x = cos(j pi/m),
    // mapped through s = (1 - x)/2 (hence the factor -2)
    Eigen::VectorXd x(n), c(n);
    for (int j = 0; j <= m; ++j) {
        x[j] = std::cos(j * M_PI / m);
        c[j] = (j == 0 || j == m) ? 2.0 : 1.0;
    }
    Eigen::MatrixXd Dx(n, n);
    for (int i = 0; i <= m; ++i) {
        double diag = 0.0;
        for (int j = 0; j <= m; ++j) {
            if (i == j)
                continue;
            const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
            Dx(i, j) = (c[i] / c[j]) * sign / (x[i] - x[j]);
            diag -= Dx(i, j);
        }
        Dx(i, i) = diag;
    }
    g.D = -2.0 * Dx;
    g.D2 = g.D * g.D;

    // Clenshaw-Curtis weights via the cosine expansion of the node polynomial,
    // scaled from [-1, 1] to [0, 1]
    g.w.resize(n);
    for (int j = 0; j <= m; ++j) {
        double sum = 1.0;
        for (int k = 1; k <= m / 2; ++k) {
            const double b = (2 * k == m) ? 1.0 : 2.0;
            sum -= b * std::cos(2.0 * k * j * M_PI / m) / (4.0 * k * k - 1.0);
        }
        g.w[j] = sum * 2.0 / m;
        if (j == 0 || j == m)
            g.w[j] *= 0.5;
    }
    g.w *= 0.5; // interval length 1 instead of 2

    g.bary.resize(n);
    for (int j = 0; j <= m; ++j) {
        double bw = (j % 2 == 0) ? 1.0 : -1.0;
        if (j == 0 || j == m)
            bw *= 0.5;
        g.bary[j] = bw;
    }
    return g;
}

double ChebyshevGrid::interpolate(const Eigen::VectorXd& values, double point) const
{
    const int n = static_cast<int>(s.size());
    double num = 0.0, den = 0.0;
    for (int j = 0; j < n; ++j) {
        const double diff = point - s[j];
        if (std::abs(diff) < 1e-14)
            return values[j];
        const double t = bary[j] / diff;
        num += t * values[j];
        den += t;
    }
    return num / den;
}

QuadratureRule gauss_legendre(int n)
{
    if (n < 1)
        throw std::invalid_argument("gauss_legendre needs at least 1 node");
    QuadratureRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    for (int i = 0; i < n; ++i) {
        // Newton iteration on P_n from the Chebyshev-based initial guess
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15)
                break;
        }
        rule.x[i] = 0.5 * (1.0 - z);
        rule.w[i] = 1.0 / ((1.0 - z * z) * pp * pp);
    }
    return rule;
}

QuadratureRule periodic_trapezoid(int n, double kappa)
{
    if (n < 1)
        throw std::invalid_argument("periodic_trapezoid needs at least 1 node");
    QuadratureRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    const double length = 2.0 * M_PI / kappa;
    for (int i = 0; i < n; ++i) {
        rule.x[i] = length * i / n;
        rule.w[i] = length / n;
    }
    return rule;
}

} // namespace wavekit
