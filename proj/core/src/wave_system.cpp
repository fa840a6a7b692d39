#include "wavekit/wave_system.hpp"

#include <algorithm>
#include <cmath>

namespace wavekit {

int WaveSystem::rows() const
{
    return disc.n_x * disc.n_s + disc.n_x + static_cast<int>(modes.size());
}

int WaveSystem::unknowns() const
{
    return disc.n_x + disc.n_x * disc.n_s + mask.count();
}

WaveSystem make_wave_system(const Discretization& disc, const TrivialParameters& base,
                            const std::vector<int>& modes, const ParameterMask& mask)
{
    base.validate();
    if (modes.empty())
        throw std::invalid_argument("wave system needs at least one active mode");
    if (static_cast<int>(modes.size()) != mask.count())
        throw std::invalid_argument(
            "active parameter count must match the number of amplitude constraints");

    const KernelSet ks = kernel_set(base);
    WaveSystem sys;
    sys.disc = disc;
    sys.base = make_trivial_flow(base);
    sys.modes = modes;
    sys.mask = mask;

    const int nx = disc.n_x;
    const int ns = disc.n_s;
    const int m = static_cast<int>(modes.size());
    sys.constraint_eta = Eigen::MatrixXd::Zero(m, nx);
    sys.constraint_phi = Eigen::MatrixXd::Zero(m, nx * ns);

    const double pi_over_kappa = M_PI / base.kappa;
    for (int q = 0; q < m; ++q) {
        const int n = modes[q];
        if (n < 1)
            throw std::domain_error("active modes must be >= 1");
        if (!ks.contains(n))
            throw std::domain_error("mode " + std::to_string(n) +
                                    " is not in the kernel set of the base point");
        if (n > nx - 1)
            throw std::invalid_argument("n_x too small to represent the active mode");

        const KernelMode mode = ks.mode(n, base.kappa);
        const double s1 = mode.theta.sinhc_at(1.0);
        const double g = -s1 / sys.base.psi0_s(1.0);

        Eigen::VectorXd row_eta = Eigen::VectorXd::Zero(nx);
        row_eta[n] = pi_over_kappa * g;
        Eigen::VectorXd row_phi = Eigen::VectorXd::Zero(nx * ns);
        for (int j = 0; j < ns; ++j) {
            const double sj = disc.s.s[j];
            const double weight = pi_over_kappa * disc.s.w[j] * mode.theta.sinhc_at(sj);
            for (int i = 0; i < nx; ++i)
                row_phi[i + nx * j] = weight * disc.analyze(n, i);
        }

        // Normalize against the grid samples of the tangent pair w*_n so the
        // predictor t w*_n has coordinate exactly t.
        const WavePair w_star = t_isomorphism(sys.base, mode_field(mode));
        Eigen::VectorXd eta_star = Eigen::VectorXd::Zero(nx);
        eta_star[n] = g;
        Eigen::VectorXd phi_star(nx * ns);
        for (int j = 0; j < ns; ++j)
            for (int i = 0; i < nx; ++i)
                phi_star[i + nx * j] = w_star.phi.f(disc.x[i], disc.s.s[j]);
        const double norm = row_eta.dot(eta_star) + row_phi.dot(phi_star);
        if (std::abs(norm) < 1e-14)
            throw std::runtime_error("degenerate amplitude constraint normalization");
        sys.constraint_eta.row(q) = row_eta / norm;
        sys.constraint_phi.row(q) = row_phi / norm;
    }
    return sys;
}

DiscreteWaveState trivial_state(const WaveSystem& sys)
{
    DiscreteWaveState st;
    st.eta_coeffs = Eigen::VectorXd::Zero(sys.disc.n_x);
    st.phi = Eigen::MatrixXd::Zero(sys.disc.n_x, sys.disc.n_s);
    st.params = sys.base.params;
    st.amplitude.assign(sys.modes.size(), 0.0);
    return st;
}

DiscreteWaveState predictor_state(const WaveSystem& sys, const std::vector<double>& t)
{
    if (t.size() != sys.modes.size())
        throw std::invalid_argument("one amplitude per active mode expected");
    DiscreteWaveState st = trivial_state(sys);
    const KernelSet ks = kernel_set(sys.base.params);
    for (size_t q = 0; q < sys.modes.size(); ++q) {
        const KernelMode mode = ks.mode(sys.modes[q], sys.base.params.kappa);
        const double g = -mode.theta.sinhc_at(1.0) / sys.base.psi0_s(1.0);
        st.eta_coeffs[sys.modes[q]] += t[q] * g;
        const WavePair w_star = t_isomorphism(sys.base, mode_field(mode));
        for (int j = 0; j < sys.disc.n_s; ++j)
            for (int i = 0; i < sys.disc.n_x; ++i)
                st.phi(i, j) += t[q] * w_star.phi.f(sys.disc.x[i], sys.disc.s.s[j]);
    }
    st.amplitude = t;
    return st;
}

Eigen::VectorXd pack_state(const WaveSystem& sys, const DiscreteWaveState& st)
{
    const int nx = sys.disc.n_x;
    const int ns = sys.disc.n_s;
    Eigen::VectorXd u(sys.unknowns());
    u.head(nx) = st.eta_coeffs;
    u.segment(nx, nx * ns) = Eigen::Map<const Eigen::VectorXd>(st.phi.data(), nx * ns);
    int off = nx + nx * ns;
    if (sys.mask.lambda)
        u[off++] = st.params.lambda;
    if (sys.mask.alpha)
        u[off++] = st.params.alpha;
    return u;
}

DiscreteWaveState unpack_state(const WaveSystem& sys, const Eigen::VectorXd& u,
                               const DiscreteWaveState& like)
{
    const int nx = sys.disc.n_x;
    const int ns = sys.disc.n_s;
    DiscreteWaveState st = like;
    st.eta_coeffs = u.head(nx);
    st.phi = Eigen::Map<const Eigen::MatrixXd>(u.data() + nx, nx, ns);
    int off = nx + nx * ns;
    if (sys.mask.lambda)
        st.params.lambda = u[off++];
    if (sys.mask.alpha)
        st.params.alpha = u[off++];
    return st;
}

Eigen::VectorXd assemble_residual(const WaveSystem& sys, const DiscreteWaveState& st)
{
    const Discretization& d = sys.disc;
    const int nx = d.n_x;
    const int ns = d.n_s;
    st.params.validate();
    const TrivialFlow flow = make_trivial_flow(st.params);
    const double alpha = st.params.alpha;

    const Eigen::VectorXd e = d.synth * st.eta_coeffs;
    const Eigen::VectorXd ex = d.dx_coeff * st.eta_coeffs;
    const Eigen::VectorXd exx = d.dxx_coeff * st.eta_coeffs;
    if (1.0 + e.minCoeff() <= 0.0)
        throw std::domain_error("surface reaches the bottom: min(1 + eta) <= 0");

    const Eigen::MatrixXd pxx = d.dxx * st.phi;
    const Eigen::MatrixXd ps = st.phi * d.s.D.transpose();
    const Eigen::MatrixXd pss = st.phi * d.s.D2.transpose();
    const Eigen::MatrixXd pxs = d.dx * ps;

    Eigen::VectorXd p0(ns), p0s(ns), p0ss(ns);
    for (int j = 0; j < ns; ++j) {
        p0[j] = flow.psi0(d.s.s[j]);
        p0s[j] = flow.psi0_s(d.s.s[j]);
        p0ss[j] = flow.psi0_ss(d.s.s[j]);
    }

    Eigen::VectorXd r(sys.rows());
    int row = 0;
    for (int j = 1; j <= ns - 2; ++j) {
        const double sj = d.s.s[j];
        for (int i = 0; i < nx; ++i) {
            const double inv = 1.0 / (1.0 + e[i]);
            const double beta = sj * ex[i] * inv;
            const double drift = sj * inv * (exx[i] - 2.0 * ex[i] * ex[i] * inv);
            const double psis = p0s[j] + ps(i, j);
            const double psiss = p0ss[j] + pss(i, j);
            const double psi = p0[j] + st.phi(i, j);
            r[row++] = pxx(i, j) - 2.0 * beta * pxs(i, j) +
                       (beta * beta + inv * inv) * psiss - drift * psis - alpha * psi;
        }
    }
    const int top = ns - 1;
    for (int i = 0; i < nx; ++i) {
        const double inv = 1.0 / (1.0 + e[i]);
        const double psis = p0s[top] + ps(i, top);
        r[row++] = 0.5 * (1.0 + ex[i] * ex[i]) * psis * psis * inv * inv + e[i] - flow.Q;
    }
    for (int i = 0; i < nx; ++i)
        r[row++] = st.phi(i, 0);
    for (int i = 0; i < nx; ++i)
        r[row++] = st.phi(i, top);

    const Eigen::Map<const Eigen::VectorXd> phivec(st.phi.data(), nx * ns);
    for (size_t q = 0; q < sys.modes.size(); ++q)
        r[row++] = sys.constraint_eta.row(q).dot(st.eta_coeffs) +
                   sys.constraint_phi.row(q).dot(phivec) - st.amplitude[q];
    return r;
}

Eigen::MatrixXd assemble_jacobian(const WaveSystem& sys, const DiscreteWaveState& st)
{
    const Discretization& d = sys.disc;
    const int nx = d.n_x;
    const int ns = d.n_s;
    const int phi_off = nx;
    const int param_off = nx + nx * ns;
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(sys.rows(), sys.unknowns());

    const Eigen::VectorXd r0 = assemble_residual(sys, st);

    // Forward-difference columns: eta coefficients and active parameters.
    for (int k = 0; k < nx; ++k) {
        const double h = 1e-7 * (1.0 + std::abs(st.eta_coeffs[k]));
        DiscreteWaveState stp = st;
        stp.eta_coeffs[k] += h;
        J.col(k) = (assemble_residual(sys, stp) - r0) / h;
    }
    int pcol = param_off;
    if (sys.mask.lambda) {
        const double h = 1e-7 * (1.0 + std::abs(st.params.lambda));
        DiscreteWaveState stp = st;
        stp.params.lambda += h;
        J.col(pcol++) = (assemble_residual(sys, stp) - r0) / h;
    }
    if (sys.mask.alpha) {
        const double h = 1e-7 * (1.0 + std::abs(st.params.alpha));
        DiscreteWaveState stp = st;
        stp.params.alpha += h;
        J.col(pcol++) = (assemble_residual(sys, stp) - r0) / h;
    }

    // Analytic phi block.
    const TrivialFlow flow = make_trivial_flow(st.params);
    const double alpha = st.params.alpha;
    const Eigen::VectorXd e = d.synth * st.eta_coeffs;
    const Eigen::VectorXd ex = d.dx_coeff * st.eta_coeffs;
    const Eigen::VectorXd exx = d.dxx_coeff * st.eta_coeffs;
    const Eigen::MatrixXd ps = st.phi * d.s.D.transpose();

    int row = 0;
    for (int j = 1; j <= ns - 2; ++j) {
        const double sj = d.s.s[j];
        for (int i = 0; i < nx; ++i, ++row) {
            const double inv = 1.0 / (1.0 + e[i]);
            const double beta = sj * ex[i] * inv;
            const double drift = sj * inv * (exx[i] - 2.0 * ex[i] * ex[i] * inv);
            const double bb = beta * beta + inv * inv;
            for (int j2 = 0; j2 < ns; ++j2) {
                J(row, phi_off + i + nx * j2) += bb * d.s.D2(j, j2) - drift * d.s.D(j, j2);
                if (beta != 0.0) {
                    const double c = -2.0 * beta * d.s.D(j, j2);
                    for (int i2 = 0; i2 < nx; ++i2)
                        J(row, phi_off + i2 + nx * j2) += c * d.dx(i, i2);
                }
            }
            for (int i2 = 0; i2 < nx; ++i2)
                J(row, phi_off + i2 + nx * j) += d.dxx(i, i2);
            J(row, phi_off + i + nx * j) += -alpha;
        }
    }
    const int top = ns - 1;
    const double p0s_top = flow.psi0_s(1.0);
    for (int i = 0; i < nx; ++i, ++row) {
        const double inv = 1.0 / (1.0 + e[i]);
        const double psis = p0s_top + ps(i, top);
        const double c = (1.0 + ex[i] * ex[i]) * psis * inv * inv;
        for (int j2 = 0; j2 < ns; ++j2)
            J(row, phi_off + i + nx * j2) += c * d.s.D(top, j2);
    }
    for (int i = 0; i < nx; ++i, ++row)
        J(row, phi_off + i + nx * 0) = 1.0;
    for (int i = 0; i < nx; ++i, ++row)
        J(row, phi_off + i + nx * top) = 1.0;
    for (size_t q = 0; q < sys.modes.size(); ++q, ++row) {
        J.block(row, 0, 1, nx) = sys.constraint_eta.row(q);
        J.block(row, phi_off, 1, nx * ns) = sys.constraint_phi.row(q);
    }
    return J;
}

NewtonOutcome newton_correct(const WaveSystem& sys, const DiscreteWaveState& initial,
                             double tol, int max_iter)
{
    DiscreteWaveState st = initial;
    Eigen::VectorXd u = pack_state(sys, st);
    Eigen::VectorXd r = assemble_residual(sys, st);
    double rn = r.lpNorm<Eigen::Infinity>();
    NewtonOutcome out;
    out.history.push_back(rn);

    const double min_gamma = std::pow(2.0, -10);
    for (int iter = 1; iter <= max_iter; ++iter) {
        if (rn <= tol) {
            out.state = st;
            out.residual_norm = rn;
            out.iterations = iter - 1;
            return out;
        }
        const Eigen::MatrixXd J = assemble_jacobian(sys, st);
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(J);
        const double rcond = lu.rcond();
        if (!(rcond > 1e-13))
            throw NewtonDivergence("jacobian numerically singular (fold or branch point)",
                                   rn, iter, true);
        const Eigen::VectorXd step = lu.solve(-r);
        const double r2 = r.norm();

        double gamma = 1.0;
        bool accepted = false;
        while (gamma >= min_gamma) {
            const Eigen::VectorXd u_try = u + gamma * step;
            DiscreteWaveState st_try = unpack_state(sys, u_try, st);
            Eigen::VectorXd r_try;
            try {
                r_try = assemble_residual(sys, st_try);
            } catch (const std::domain_error&) {
                gamma *= 0.5;
                continue;
            }
            if (r_try.norm() <= (1.0 - 1e-4 * gamma) * r2) {
                u = u_try;
                st = st_try;
                r = r_try;
                accepted = true;
                break;
            }
            gamma *= 0.5;
        }
        if (!accepted)
            throw NewtonDivergence("line search stalled below the minimum step", rn, iter,
                                   false);
        rn = r.lpNorm<Eigen::Infinity>();
        out.history.push_back(rn);
    }
    if (rn <= tol) {
        out.state = st;
        out.residual_norm = rn;
        out.iterations = max_iter;
        return out;
    }
    throw NewtonDivergence("no convergence within the iteration limit", rn, max_iter, false);
}

Eigen::MatrixXd solve_interior_phi(const WaveSystem& sys, const DiscreteWaveState& st)
{
    const int nx = sys.disc.n_x;
    const int ns = sys.disc.n_s;
    const int n_int = nx * (ns - 2);
    const int phi_off = nx;

    DiscreteWaveState st0 = st;
    st0.phi = Eigen::MatrixXd::Zero(nx, ns);
    st0.amplitude.assign(sys.modes.size(), 0.0);
    const Eigen::VectorXd r0 = assemble_residual(sys, st0);
    const Eigen::MatrixXd J = assemble_jacobian(sys, st0);

    Eigen::MatrixXd A(nx * ns, nx * ns);
    A.topRows(n_int) = J.block(0, phi_off, n_int, nx * ns);
    A.bottomRows(2 * nx) = J.block(n_int + nx, phi_off, 2 * nx, nx * ns);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nx * ns);
    rhs.head(n_int) = -r0.head(n_int);

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    if (!(lu.rcond() > 1e-14))
        throw std::runtime_error("interior reconstruction system is singular");
    const Eigen::VectorXd sol = lu.solve(rhs);
    return Eigen::Map<const Eigen::MatrixXd>(sol.data(), nx, ns);
}

double discrete_y_norm(const WaveSystem& sys, const Eigen::VectorXd& eta_coeffs,
                       const Eigen::MatrixXd& phi)
{
    const Discretization& d = sys.disc;
    const Eigen::VectorXd e = d.synth * eta_coeffs;
    double acc = 0.0;
    for (int i = 0; i < d.n_x; ++i)
        acc += d.x_weights[i] * e[i] * e[i];
    for (int i = 0; i < d.n_x; ++i)
        for (int j = 0; j < d.n_s; ++j)
            acc += d.x_weights[i] * d.s.w[j] * phi(i, j) * phi(i, j);
    return std::sqrt(acc);
}

} // namespace wavekit
