#pragma once

#include <Eigen/Dense>

namespace wavekit {

// Chebyshev-Gauss-Lobatto collocation on [0, 1].
//
// Nodes ascend from s_0 = 0 to s_{n-1} = 1:
//   s_j = (1 - cos(j pi/(n-1)))/2.
struct ChebyshevGrid {
    Eigen::VectorXd s;   // nodes
    Eigen::MatrixXd D;   // first-derivative collocation matrix
    Eigen::MatrixXd D2;  // second derivative (D*D)
    Eigen::VectorXd w;   // Clenshaw-Curtis quadrature weights for [0, 1]
    Eigen::VectorXd bary; // barycentric interpolation weights

    // Interpolates grid values to an arbitrary point in [0, 1].
    double interpolate(const Eigen::VectorXd& values, double point) const;
};

ChebyshevGrid chebyshev_grid(int n);

// Gauss-Legendre nodes/weights on [0, 1].
struct QuadratureRule {
    Eigen::VectorXd x;
    Eigen::VectorXd w;
};

QuadratureRule gauss_legendre(int n);

// Trapezoid nodes/weights over one horizontal period [0, 2 pi/kappa); exact
// for trigonometric polynomials of degree < n.
QuadratureRule periodic_trapezoid(int n, double kappa);

} // namespace wavekit
