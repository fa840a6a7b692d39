#include "wavekit/continuation.hpp"

#include "wavekit/pairings.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <thread>

namespace wavekit {

int thread_budget()
{
    int budget = 1;
    if (const char* env = std::getenv("WAVEKIT_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0)
            budget = static_cast<int>(v);
    }
    const int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw > 0)
        budget = std::min(budget, hw);
    return std::max(budget, 1);
}

ContinuationBranch continue_curve_1d(const TrivialParameters& base, int n, double t_max,
                                     int steps, const Discretization& disc)
{
    base.validate();
    if (n < 1)
        throw std::domain_error("continuation requires a mode n >= 1");
    if (t_max < 0.0 || steps < 0)
        throw std::invalid_argument("t_max and steps must be nonnegative");
    const KernelSet ks = kernel_set(base);
    if (ks.dimension() != 1 || !ks.contains(n))
        throw std::domain_error("continuation requires the kernel set to equal {n}");
    if (!transversality_ok(base))
        throw std::domain_error("transversality condition violated at the base point");

    ParameterMask mask;
    mask.lambda = true;
    mask.alpha = false;
    const WaveSystem sys = make_wave_system(disc, base, {n}, mask);

    ContinuationBranch branch;
    branch.base = base;
    branch.modes = {n};
    branch.n_x = disc.n_x;
    branch.n_s = disc.n_s;
    branch.points.push_back({{0.0}, trivial_state(sys), 0.0, 0});
    if (t_max == 0.0 || steps == 0)
        return branch;

    const double dt = t_max / steps;
    for (int k = 1; k <= steps; ++k) {
        const double t = k * dt;
        DiscreteWaveState guess;
        if (k == 1) {
            guess = predictor_state(sys, {t});
        } else {
            // Secant predictor from the two previous points.
            const DiscreteWaveState& a = branch.points[k - 1].state;
            const DiscreteWaveState& b = branch.points[k - 2].state;
            guess = a;
            guess.eta_coeffs = 2.0 * a.eta_coeffs - b.eta_coeffs;
            guess.phi = 2.0 * a.phi - b.phi;
            guess.params.lambda = 2.0 * a.params.lambda - b.params.lambda;
        }
        guess.amplitude = {t};
        try {
            NewtonOutcome out = newton_correct(sys, guess);
            branch.points.push_back({{t}, out.state, out.residual_norm, out.iterations});
        } catch (const std::domain_error&) {
            branch.truncated = true;
            break;
        }
    }
    return branch;
}

namespace {

ContinuationBranch sheet_ray(const WaveSystem& sys, const WaveSystem& axis_n1,
                             const WaveSystem& axis_n2, const TrivialParameters& base,
                             const SheetPoint& target, int ray_steps)
{
    ContinuationBranch branch;
    branch.base = base;
    branch.modes = sys.modes;
    branch.n_x = sys.disc.n_x;
    branch.n_s = sys.disc.n_s;
    branch.points.push_back({{0.0, 0.0}, trivial_state(sys), 0.0, 0});
    if (target.r == 0.0)
        return branch;

    const double c = std::cos(target.v);
    const double s = std::sin(target.v);
    const double dr = target.r / ray_steps;

    // On a coordinate axis the sheet degenerates to the one-mode curve: the
    // complementary harmonic sector decouples and alpha is undetermined, so
    // the two-parameter Jacobian is exactly singular there. Solve with lambda
    // alone and keep alpha at the base value.
    if (std::min(std::abs(c), std::abs(s)) <= 1e-12) {
        const bool upper = std::abs(c) <= 1e-12;
        const WaveSystem& axis_sys = upper ? axis_n2 : axis_n1;
        const double dir = upper ? s : c;
        for (int k = 1; k <= ray_steps; ++k) {
            const double tk = k * dr * dir;
            DiscreteWaveState guess;
            if (k == 1) {
                guess = predictor_state(axis_sys, {tk});
            } else {
                const DiscreteWaveState& a = branch.points[k - 1].state;
                const DiscreteWaveState& b = branch.points[k - 2].state;
                guess = a;
                guess.eta_coeffs = 2.0 * a.eta_coeffs - b.eta_coeffs;
                guess.phi = 2.0 * a.phi - b.phi;
                guess.params.lambda = 2.0 * a.params.lambda - b.params.lambda;
            }
            guess.amplitude = {tk};
            NewtonOutcome out = newton_correct(axis_sys, guess);
            const std::vector<double> t{k * dr * c, k * dr * s};
            out.state.amplitude = t;
            branch.points.push_back({t, out.state, out.residual_norm, out.iterations});
        }
        return branch;
    }
    for (int k = 1; k <= ray_steps; ++k) {
        const double rk = k * dr;
        const std::vector<double> t{rk * c, rk * s};
        DiscreteWaveState guess;
        if (k == 1) {
            guess = predictor_state(sys, t);
        } else {
            const DiscreteWaveState& a = branch.points[k - 1].state;
            const DiscreteWaveState& b = branch.points[k - 2].state;
            guess = a;
            guess.eta_coeffs = 2.0 * a.eta_coeffs - b.eta_coeffs;
            guess.phi = 2.0 * a.phi - b.phi;
            guess.params.lambda = 2.0 * a.params.lambda - b.params.lambda;
            guess.params.alpha = 2.0 * a.params.alpha - b.params.alpha;
        }
        guess.amplitude = t;
        NewtonOutcome out = newton_correct(sys, guess);
        branch.points.push_back({t, out.state, out.residual_norm, out.iterations});
    }
    return branch;
}

} // namespace

std::vector<ContinuationBranch> continue_sheet_2d(const TrivialParameters& base, int n1,
                                                  int n2, const std::vector<SheetPoint>& grid,
                                                  const Discretization& disc, int ray_steps,
                                                  double delta)
{
    base.validate();
    if (n1 < 1 || n2 <= n1)
        throw std::domain_error("sheet continuation requires 1 <= n1 < n2");
    if (ray_steps < 1)
        throw std::invalid_argument("ray_steps must be >= 1");
    const KernelSet ks = kernel_set(base);
    if (ks.dimension() != 2 || !ks.contains(n1) || !ks.contains(n2))
        throw std::domain_error("sheet continuation requires the kernel set {n1, n2}");
    if (!transversality_ok(base))
        throw std::domain_error("transversality condition violated at the base point");
    const TrivialFlow flow = make_trivial_flow(base);
    const DeterminantC det = determinant_C(flow, n1, n2);
    if (std::abs(det.matrix_form) < 1e-12)
        throw std::domain_error("two-parameter solvability determinant vanishes");
    const bool divides = (n2 % n1) == 0;
    if (divides)
        for (const SheetPoint& p : grid)
            if (std::abs(std::sin(p.v)) <= delta)
                throw std::domain_error(
                    "sheet point too close to the resonant direction |sin v| <= delta");

    ParameterMask mask;
    mask.lambda = true;
    mask.alpha = true;
    const WaveSystem sys = make_wave_system(disc, base, {n1, n2}, mask);
    const ParameterMask axis_mask; // lambda only
    const WaveSystem axis_n1 = make_wave_system(disc, base, {n1}, axis_mask);
    const WaveSystem axis_n2 = make_wave_system(disc, base, {n2}, axis_mask);

    std::vector<ContinuationBranch> result(grid.size());
    std::vector<std::exception_ptr> errors(grid.size());
    const int grid_size = std::max(static_cast<int>(grid.size()), 1);
    const int workers = std::min(thread_budget(), grid_size);
    if (workers <= 1) {
        for (size_t g = 0; g < grid.size(); ++g)
            result[g] = sheet_ray(sys, axis_n1, axis_n2, base, grid[g], ray_steps);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int wkr = 0; wkr < workers; ++wkr) {
            pool.emplace_back([&, wkr]() {
                for (size_t g = wkr; g < grid.size(); g += workers) {
                    try {
                        result[g] = sheet_ray(sys, axis_n1, axis_n2, base, grid[g], ray_steps);
                    } catch (...) {
                        errors[g] = std::current_exception();
                    }
                }
            });
        }
        for (std::thread& th : pool)
            th.join();
        for (const std::exception_ptr& err : errors)
            if (err)
                std::rethrow_exception(err);
    }
    return result;
}

} // namespace wavekit
