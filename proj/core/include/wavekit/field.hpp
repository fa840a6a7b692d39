#pragma once

#include "wavekit/wave_system.hpp"

#include <vector>

namespace wavekit {

// Physical reconstruction of a converged state through the inverse flattening
// (x, s) -> (x, (1 + eta(x)) s), with spectral evaluators of the total stream
// function psi_hat = psi0 + phi_hat kept in the flattened frame.
struct PhysicalField {
    TrivialParameters params;
    double kappa;
    double m0; // stream value on the bottom
    double m1; // stream value on the surface
    double Q;

    int nx;
    int ny;
    std::vector<double> xs, ys, psi; // sample grid, x-major: idx = ix * ny + iy
    std::vector<double> surface_x, surface_y;

    // Spectral data: cosine-coefficient rows of phi_hat and its s-derivatives
    // at the collocation nodes, interpolated barycentrically in s.
    ChebyshevGrid sgrid;
    Eigen::MatrixXd c;   // analyze * phi
    Eigen::MatrixXd cs;  // analyze * (phi D^T)
    Eigen::MatrixXd css; // analyze * (phi D2^T)
    Eigen::VectorXd eta_coeffs;
    TrivialFlow flow;

    double eta(double x) const;
    double eta_x(double x) const;

    double psi_hat(double x, double s) const;
    double psi_hat_x(double x, double s) const;
    double psi_hat_s(double x, double s) const;
    double psi_hat_xx(double x, double s) const;
    double psi_hat_ss(double x, double s) const;
    double psi_hat_xs(double x, double s) const;

    // psi at a physical point (x, y), y in [0, 1 + eta(x)].
    double psi_at(double x, double y) const;
};

PhysicalField reconstruct_field(const WaveSystem& sys, const DiscreteWaveState& st,
                                int nx_out, int ny_out);

struct StagnationPoint {
    double x, y;       // physical coordinates
    double s;          // flattened vertical coordinate
    double level;      // psi value
    bool is_center;    // Hessian determinant positive (negative: saddle)
    double hessian_det;
};

// Horizontal line of stagnation in an x-independent (laminar) field.
struct StagnationLine {
    double s;
    double level;
};

struct CriticalLayer {
    double level;
    double center_x, center_y; // the stagnation center the loop surrounds
};

struct StagnationReport {
    std::vector<StagnationPoint> points;
    std::vector<StagnationLine> lines;
    std::vector<CriticalLayer> critical_layers;
    bool x_independent;
};

// Zeros of grad psi: Newton on (psi_hat_x, psi_hat_s) from coarse-grid seeds,
// accepted when |grad psi| <= tol at the polished point. An x-independent
// field degenerates to horizontal stagnation lines, reported separately.
// Critical layers: streamline levels near each center whose contours
// (marching squares, periodic in x) close around it.
StagnationReport detect_stagnation(const PhysicalField& field, double tol);

} // namespace wavekit
