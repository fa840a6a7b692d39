#pragma once

#include "wavekit/wave_system.hpp"

namespace wavekit {

struct BranchPoint {
    std::vector<double> amplitude; // t, or (t1, t2) for sheet rays
    DiscreteWaveState state;
    double residual_norm;
    int newton_iterations;
};

struct ContinuationBranch {
    TrivialParameters base;
    std::vector<int> modes;
    int n_x;
    int n_s;
    std::vector<BranchPoint> points;
    bool truncated = false; // stopped early on a domain violation
};

// Steps the amplitude from 0 to t_max in `steps` equal increments with a
// tangent predictor on the first step and a secant predictor afterwards,
// keeping lambda free. Requires M(base) = {n}, n >= 1, and transversality.
ContinuationBranch continue_curve_1d(const TrivialParameters& base, int n, double t_max,
                                     int steps, const Discretization& disc);

// Polar amplitude target (t1, t2) = r (cos v, sin v).
struct SheetPoint {
    double r;
    double v;
};

// One branch per requested sheet point, following the ray from the origin in
// ray_steps increments with both lambda and alpha free. Requires
// M(base) = {n1, n2} and determinant_C != 0; when n1 divides n2, points with
// |sin v| <= delta are refused.
std::vector<ContinuationBranch> continue_sheet_2d(const TrivialParameters& base, int n1,
                                                  int n2, const std::vector<SheetPoint>& grid,
                                                  const Discretization& disc,
                                                  int ray_steps = 4, double delta = 1e-2);

// Worker-thread budget: WAVEKIT_THREADS clamped to [1, hardware_concurrency].
int thread_budget();

} // namespace wavekit
