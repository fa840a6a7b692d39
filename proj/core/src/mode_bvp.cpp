#include "wavekit/mode_bvp.hpp"

#include <stdexcept>

namespace wavekit {

ModeBvpSolution solve_mode_bvp(double theta_sq, const std::function<double(double)>& b,
                               double c, const TrivialFlow& flow, int nodes)
{
    if (nodes < 8)
        throw std::invalid_argument("solve_mode_bvp needs at least 8 nodes");

    ModeBvpSolution sol;
    sol.grid = chebyshev_grid(nodes);
    sol.theta_sq = theta_sq;
    const int n = nodes;

    Eigen::MatrixXd A(n, n);
    Eigen::VectorXd rhs(n);
    for (int i = 1; i < n - 1; ++i) {
        A.row(i) = sol.grid.D2.row(i);
        A(i, i) -= theta_sq;
        rhs[i] = -b(sol.grid.s[i]);
    }
    A.row(0).setZero();
    A(0, 0) = 1.0;
    rhs[0] = 0.0;

    const double ps1 = flow.psi0_s(1.0);
    const double robin = flow.psi0_ss(1.0) + 1.0 / ps1;
    A.row(n - 1) = ps1 * sol.grid.D.row(n - 1);
    A(n - 1, n - 1) -= robin;
    rhs[n - 1] = -c;

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double cond_floor = svd.singularValues()(n - 1)
        / svd.singularValues()(0);
    if (!(cond_floor > 1e-13))
        throw std::runtime_error(
            "mode BVP collocation matrix is singular: theta^2 resonates with the "
            "homogeneous problem");
    sol.values = svd.solve(rhs);
    sol.derivative = sol.grid.D * sol.values;

    sol.boundary_residual = ps1 * sol.derivative[n - 1] - robin * sol.values[n - 1] + c;
    const Eigen::VectorXd second = sol.grid.D2 * sol.values;
    double worst = 0.0;
    for (int i = 1; i < n - 1; ++i) {
        const double r = second[i] - theta_sq * sol.values[i] + b(sol.grid.s[i]);
        worst = std::max(worst, std::abs(r));
    }
    sol.interior_residual = worst;
    return sol;
}

} // namespace wavekit
