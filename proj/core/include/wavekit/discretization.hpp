#pragma once

#include "wavekit/spectral.hpp"

#include <Eigen/Dense>

#include <vector>

namespace wavekit {

// Tensor grid for the flattened strip: cosine collocation in x on the half
// period [0, pi/kappa] (DCT-I nodes; functions extend evenly and
// 2pi/kappa-periodically) and Chebyshev-Gauss-Lobatto collocation in s on
// [0, 1] with both endpoints present.
struct Discretization {
    int n_x;
    int n_s;
    double kappa;

    std::vector<double> x; // x_i = i pi / (kappa (n_x - 1))
    ChebyshevGrid s;

    Eigen::MatrixXd synth;     // node values from cosine coefficients
    Eigen::MatrixXd analyze;   // cosine coefficients from node values (DCT-I)
    Eigen::MatrixXd dx;        // d/dx on node values of an even function
    Eigen::MatrixXd dxx;       // d2/dx2 on node values
    Eigen::MatrixXd dx_coeff;  // d/dx node values from cosine coefficients
    Eigen::MatrixXd dxx_coeff; // d2/dx2 node values from cosine coefficients

    // Quadrature of an even integrand over the full period from its node
    // values; exact for cosine polynomials below twice the grid degree.
    std::vector<double> x_weights;
};

Discretization make_discretization(int n_x, int n_s, double kappa);

} // namespace wavekit
