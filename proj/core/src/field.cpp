#include "wavekit/field.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

namespace wavekit {

namespace {

Eigen::VectorXd bary_vector(const ChebyshevGrid& g, double s)
{
    const int n = static_cast<int>(g.s.size());
    Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
    for (int j = 0; j < n; ++j) {
        if (s == g.s[j]) {
            w[j] = 1.0;
            return w;
        }
    }
    double denom = 0.0;
    for (int j = 0; j < n; ++j) {
        const double t = g.bary[j] / (s - g.s[j]);
        w[j] = t;
        denom += t;
    }
    return w / denom;
}

} // namespace

double PhysicalField::eta(double x) const
{
    double acc = 0.0;
    for (int k = 0; k < eta_coeffs.size(); ++k)
        acc += eta_coeffs[k] * std::cos(k * kappa * x);
    return acc;
}

double PhysicalField::eta_x(double x) const
{
    double acc = 0.0;
    for (int k = 1; k < eta_coeffs.size(); ++k)
        acc -= k * kappa * eta_coeffs[k] * std::sin(k * kappa * x);
    return acc;
}

double PhysicalField::psi_hat(double x, double s) const
{
    const Eigen::VectorXd vals = c * bary_vector(sgrid, s);
    double acc = flow.psi0(s);
    for (int k = 0; k < vals.size(); ++k)
        acc += vals[k] * std::cos(k * kappa * x);
    return acc;
}

double PhysicalField::psi_hat_x(double x, double s) const
{
    const Eigen::VectorXd vals = c * bary_vector(sgrid, s);
    double acc = 0.0;
    for (int k = 1; k < vals.size(); ++k)
        acc -= k * kappa * vals[k] * std::sin(k * kappa * x);
    return acc;
}

double PhysicalField::psi_hat_s(double x, double s) const
{
    const Eigen::VectorXd vals = cs * bary_vector(sgrid, s);
    double acc = flow.psi0_s(s);
    for (int k = 0; k < vals.size(); ++k)
        acc += vals[k] * std::cos(k * kappa * x);
    return acc;
}

double PhysicalField::psi_hat_xx(double x, double s) const
{
    const Eigen::VectorXd vals = c * bary_vector(sgrid, s);
    double acc = 0.0;
    for (int k = 1; k < vals.size(); ++k)
        acc -= k * kappa * k * kappa * vals[k] * std::cos(k * kappa * x);
    return acc;
}

double PhysicalField::psi_hat_ss(double x, double s) const
{
    const Eigen::VectorXd vals = css * bary_vector(sgrid, s);
    double acc = flow.psi0_ss(s);
    for (int k = 0; k < vals.size(); ++k)
        acc += vals[k] * std::cos(k * kappa * x);
    return acc;
}

double PhysicalField::psi_hat_xs(double x, double s) const
{
    const Eigen::VectorXd vals = cs * bary_vector(sgrid, s);
    double acc = 0.0;
    for (int k = 1; k < vals.size(); ++k)
        acc -= k * kappa * vals[k] * std::sin(k * kappa * x);
    return acc;
}

double PhysicalField::psi_at(double x, double y) const
{
    return psi_hat(x, y / (1.0 + eta(x)));
}

PhysicalField reconstruct_field(const WaveSystem& sys, const DiscreteWaveState& st,
                                int nx_out, int ny_out)
{
    if (nx_out < 2 || ny_out < 2)
        throw std::invalid_argument("field resolution must be at least 2 x 2");
    PhysicalField f;
    f.params = st.params;
    f.kappa = st.params.kappa;
    f.flow = make_trivial_flow(st.params);
    f.m0 = f.flow.m0;
    f.m1 = f.flow.m1;
    f.Q = f.flow.Q;
    f.sgrid = sys.disc.s;
    f.eta_coeffs = st.eta_coeffs;
    f.c = sys.disc.analyze * st.phi;
    f.cs = sys.disc.analyze * (st.phi * sys.disc.s.D.transpose());
    f.css = sys.disc.analyze * (st.phi * sys.disc.s.D2.transpose());

    f.nx = nx_out;
    f.ny = ny_out;
    const double period = 2.0 * M_PI / f.kappa;
    f.xs.reserve(static_cast<size_t>(nx_out) * ny_out);
    f.ys.reserve(static_cast<size_t>(nx_out) * ny_out);
    f.psi.reserve(static_cast<size_t>(nx_out) * ny_out);
    for (int ix = 0; ix < nx_out; ++ix) {
        const double x = ix * period / nx_out;
        const double depth = 1.0 + f.eta(x);
        f.surface_x.push_back(x);
        f.surface_y.push_back(depth);
        for (int iy = 0; iy < ny_out; ++iy) {
            const double s = static_cast<double>(iy) / (ny_out - 1);
            f.xs.push_back(x);
            f.ys.push_back(s * depth);
            f.psi.push_back(f.psi_hat(x, s));
        }
    }
    return f;
}

namespace {

// One marching-squares line segment; endpoints carry the integer id of the
// grid edge they sit on so chains stitch exactly.
struct EdgePoint {
    int type; // 0: x-edge (i,j)-(i+1,j), 1: s-edge (i,j)-(i,j+1)
    int i, j;
    double x, s;
};

struct Segment {
    EdgePoint a, b;
    bool used = false;
};

using EdgeKey = std::tuple<int, int, int>;

EdgeKey key_of(const EdgePoint& p)
{
    return {p.type, p.i, p.j};
}

std::vector<std::vector<std::pair<double, double>>>
extract_contours(const std::vector<std::vector<double>>& F, const std::vector<double>& gx,
                 const std::vector<double>& gs, double level)
{
    const int nxg = static_cast<int>(gx.size());
    const int nsg = static_cast<int>(gs.size());
    std::vector<Segment> segs;

    auto x_edge = [&](int i, int j) {
        const double va = F[i][j], vb = F[i + 1][j];
        const double t = (level - va) / (vb - va);
        return EdgePoint{0, i, j, gx[i] + t * (gx[i + 1] - gx[i]), gs[j]};
    };
    auto s_edge = [&](int i, int j) {
        const double va = F[i][j], vb = F[i][j + 1];
        const double t = (level - va) / (vb - va);
        return EdgePoint{1, i, j, gx[i], gs[j] + t * (gs[j + 1] - gs[j])};
    };

    for (int i = 0; i + 1 < nxg; ++i) {
        for (int j = 0; j + 1 < nsg; ++j) {
            const bool b00 = F[i][j] > level;
            const bool b10 = F[i + 1][j] > level;
            const bool b11 = F[i + 1][j + 1] > level;
            const bool b01 = F[i][j + 1] > level;
            const int mask = (b00 ? 1 : 0) | (b10 ? 2 : 0) | (b11 ? 4 : 0) | (b01 ? 8 : 0);
            if (mask == 0 || mask == 15)
                continue;
            auto bottom = [&] { return x_edge(i, j); };
            auto top = [&] { return x_edge(i, j + 1); };
            auto left = [&] { return s_edge(i, j); };
            auto right = [&] { return s_edge(i + 1, j); };
            switch (mask) {
            case 1: segs.push_back({left(), bottom()}); break;
            case 2: segs.push_back({bottom(), right()}); break;
            case 3: segs.push_back({left(), right()}); break;
            case 4: segs.push_back({right(), top()}); break;
            case 6: segs.push_back({bottom(), top()}); break;
            case 7: segs.push_back({left(), top()}); break;
            case 8: segs.push_back({top(), left()}); break;
            case 9: segs.push_back({bottom(), top()}); break;
            case 11: segs.push_back({right(), top()}); break;
            case 12: segs.push_back({left(), right()}); break;
            case 13: segs.push_back({bottom(), right()}); break;
            case 14: segs.push_back({left(), bottom()}); break;
            case 5:
            case 10: {
                const double center =
                    0.25 * (F[i][j] + F[i + 1][j] + F[i][j + 1] + F[i + 1][j + 1]);
                const bool cin = center > level;
                if ((mask == 5) == cin) {
                    segs.push_back({left(), top()});
                    segs.push_back({bottom(), right()});
                } else {
                    segs.push_back({left(), bottom()});
                    segs.push_back({right(), top()});
                }
                break;
            }
            default: break;
            }
        }
    }

    std::map<EdgeKey, std::vector<int>> by_edge;
    for (int k = 0; k < static_cast<int>(segs.size()); ++k) {
        by_edge[key_of(segs[k].a)].push_back(k);
        by_edge[key_of(segs[k].b)].push_back(k);
    }

    std::vector<std::vector<std::pair<double, double>>> loops;
    for (int k0 = 0; k0 < static_cast<int>(segs.size()); ++k0) {
        if (segs[k0].used)
            continue;
        std::vector<std::pair<double, double>> chain;
        segs[k0].used = true;
        EdgeKey start = key_of(segs[k0].a);
        chain.emplace_back(segs[k0].a.x, segs[k0].a.s);
        chain.emplace_back(segs[k0].b.x, segs[k0].b.s);
        EdgeKey cursor = key_of(segs[k0].b);
        bool closed = false;
        while (true) {
            if (cursor == start) {
                closed = true;
                break;
            }
            int next = -1;
            for (int cand : by_edge[cursor])
                if (!segs[cand].used) {
                    next = cand;
                    break;
                }
            if (next < 0)
                break;
            segs[next].used = true;
            const bool forward = key_of(segs[next].a) == cursor;
            const EdgePoint& out = forward ? segs[next].b : segs[next].a;
            chain.emplace_back(out.x, out.s);
            cursor = key_of(out);
        }
        if (closed && chain.size() >= 4)
            loops.push_back(std::move(chain));
    }
    return loops;
}

// Winding of a closed chain on the cylinder around (xc, sc); zero for chains
// wrapping the period.
int winding_number(const std::vector<std::pair<double, double>>& loop, double period,
                   double xc, double sc)
{
    std::vector<double> ux(loop.size()), us(loop.size());
    ux[0] = loop[0].first;
    us[0] = loop[0].second;
    for (size_t k = 1; k < loop.size(); ++k) {
        double dx = loop[k].first - loop[k - 1].first;
        dx -= period * std::round(dx / period);
        ux[k] = ux[k - 1] + dx;
        us[k] = loop[k].second;
    }
    if (std::abs(ux.back() - ux.front()) > 0.5 * period)
        return 0; // wraps the cylinder

    for (int shift = -1; shift <= 1; ++shift) {
        const double cx = xc + shift * period;
        double angle = 0.0;
        for (size_t k = 1; k < ux.size(); ++k) {
            const double a1 = std::atan2(us[k - 1] - sc, ux[k - 1] - cx);
            const double a2 = std::atan2(us[k] - sc, ux[k] - cx);
            double da = a2 - a1;
            da -= 2.0 * M_PI * std::round(da / (2.0 * M_PI));
            angle += da;
        }
        const int w = static_cast<int>(std::lround(angle / (2.0 * M_PI)));
        if (w != 0)
            return w;
    }
    return 0;
}

} // namespace

StagnationReport detect_stagnation(const PhysicalField& field, double tol)
{
    StagnationReport report;
    report.x_independent = false;
    const double period = 2.0 * M_PI / field.kappa;
    const int nxs = 128;
    const int nss = 96;

    std::vector<double> gx(nxs + 1), gs(nss);
    for (int i = 0; i <= nxs; ++i)
        gx[i] = i * period / nxs;
    for (int j = 0; j < nss; ++j)
        gs[j] = static_cast<double>(j) / (nss - 1);

    std::vector<std::vector<double>> px(nxs + 1, std::vector<double>(nss));
    std::vector<std::vector<double>> ps(nxs + 1, std::vector<double>(nss));
    double vx_max = 0.0, vs_max = 0.0;
    for (int i = 0; i <= nxs; ++i) {
        for (int j = 0; j < nss; ++j) {
            px[i][j] = field.psi_hat_x(gx[i], gs[j]);
            ps[i][j] = field.psi_hat_s(gx[i], gs[j]);
            vx_max = std::max(vx_max, std::abs(px[i][j]));
            vs_max = std::max(vs_max, std::abs(ps[i][j]));
        }
    }
    const double scale = vx_max + vs_max;

    if (vx_max <= 1e-10 * std::max(1.0, vs_max)) {
        report.x_independent = true;
        // Horizontal stagnation lines: roots of psi_hat_s(s) in (0, 1).
        const int fine = 1024;
        double prev_s = 0.0, prev_v = field.psi_hat_s(0.0, 0.0);
        for (int j = 1; j <= fine; ++j) {
            const double s = static_cast<double>(j) / fine;
            const double v = field.psi_hat_s(0.0, s);
            if (prev_v == 0.0 && prev_s > 0.0) {
                report.lines.push_back({prev_s, field.psi_hat(0.0, prev_s)});
            } else if (prev_v * v < 0.0) {
                double lo = prev_s, hi = s, vlo = prev_v;
                for (int it = 0; it < 60; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    const double vm = field.psi_hat_s(0.0, mid);
                    if (vlo * vm <= 0.0)
                        hi = mid;
                    else {
                        lo = mid;
                        vlo = vm;
                    }
                }
                const double root = 0.5 * (lo + hi);
                if (root > 1e-9 && root < 1.0 - 1e-9)
                    report.lines.push_back({root, field.psi_hat(0.0, root)});
            }
            prev_s = s;
            prev_v = v;
        }
        return report;
    }

    // Seeds: interior local minima of |grad|^2 on the scan grid.
    struct Seed {
        double q, x, s;
    };
    std::vector<Seed> seeds;
    for (int i = 0; i < nxs; ++i) {
        for (int j = 1; j + 1 < nss; ++j) {
            const double q = px[i][j] * px[i][j] + ps[i][j] * ps[i][j];
            bool is_min = true;
            for (int di = -1; di <= 1 && is_min; ++di) {
                for (int dj = -1; dj <= 1; ++dj) {
                    if (di == 0 && dj == 0)
                        continue;
                    const int ii = (i + di + nxs) % nxs;
                    const int jj = j + dj;
                    const double qn =
                        px[ii][jj] * px[ii][jj] + ps[ii][jj] * ps[ii][jj];
                    if (qn < q) {
                        is_min = false;
                        break;
                    }
                }
            }
            if (is_min && q < 0.09 * scale * scale)
                seeds.push_back({q, gx[i], gs[j]});
        }
    }
    std::sort(seeds.begin(), seeds.end(), [](const Seed& a, const Seed& b) { return a.q < b.q; });
    if (seeds.size() > 64)
        seeds.resize(64);

    for (const Seed& seed : seeds) {
        double x = seed.x, s = seed.s;
        bool converged = false;
        for (int it = 0; it < 50; ++it) {
            const double fx = field.psi_hat_x(x, s);
            const double fs = field.psi_hat_s(x, s);
            if (std::hypot(fx, fs) <= 1e-13 * (1.0 + scale)) {
                converged = true;
                break;
            }
            const double hxx = field.psi_hat_xx(x, s);
            const double hxs = field.psi_hat_xs(x, s);
            const double hss = field.psi_hat_ss(x, s);
            const double det = hxx * hss - hxs * hxs;
            if (std::abs(det) < 1e-14 * (1.0 + scale) * (1.0 + scale))
                break;
            double dxn = -(hss * fx - hxs * fs) / det;
            double dsn = -(hxx * fs - hxs * fx) / det;
            const double cap = 0.2;
            const double len = std::hypot(dxn / period, dsn);
            if (len > cap) {
                dxn *= cap / len;
                dsn *= cap / len;
            }
            x += dxn;
            s += dsn;
            if (s < 1e-4)
                s = 1e-4;
            if (s > 1.0 - 1e-4)
                s = 1.0 - 1e-4;
        }
        if (!converged)
            continue;
        if (s <= 1e-3 || s >= 1.0 - 1e-3)
            continue;
        x -= period * std::floor(x / period);

        const double depth = 1.0 + field.eta(x);
        const double gx_phys =
            field.psi_hat_x(x, s) - field.psi_hat_s(x, s) * s * field.eta_x(x) / depth;
        const double gy_phys = field.psi_hat_s(x, s) / depth;
        if (std::hypot(gx_phys, gy_phys) > tol)
            continue;

        bool duplicate = false;
        for (const StagnationPoint& p : report.points) {
            double dx = x - p.x;
            dx -= period * std::round(dx / period);
            if (std::hypot(dx, s - p.s) < 1e-6 * (1.0 + period))
                duplicate = true;
        }
        if (duplicate)
            continue;

        const double hxx = field.psi_hat_xx(x, s);
        const double hxs = field.psi_hat_xs(x, s);
        const double hss = field.psi_hat_ss(x, s);
        const double det = hxx * hss - hxs * hxs;
        report.points.push_back(
            {x, s * depth, s, field.psi_hat(x, s), det > 0.0, det});
    }
    std::sort(report.points.begin(), report.points.end(),
              [](const StagnationPoint& a, const StagnationPoint& b) {
                  return a.x < b.x || (a.x == b.x && a.s < b.s);
              });

    // Critical layers: probe streamline levels near each center and keep those
    // whose contour closes around it. The value grid is re-centered on each
    // candidate so its loop stays away from the periodic seam.
    for (const StagnationPoint& p : report.points) {
        if (!p.is_center)
            continue;
        const double rho_x = 0.04 * period;
        const double rho_s = 0.04;
        double dpsi = 0.0;
        for (int a = 0; a < 32; ++a) {
            const double ang = 2.0 * M_PI * a / 32;
            const double sp = std::clamp(p.s + rho_s * std::sin(ang), 0.0, 1.0);
            dpsi = std::max(dpsi,
                            std::abs(field.psi_hat(p.x + rho_x * std::cos(ang), sp) - p.level));
        }
        if (dpsi == 0.0)
            continue;
        std::vector<double> gxc(nxs + 1);
        for (int i = 0; i <= nxs; ++i)
            gxc[i] = p.x - 0.5 * period + i * period / nxs;
        std::vector<std::vector<double>> pvc(nxs + 1, std::vector<double>(nss));
        for (int i = 0; i <= nxs; ++i)
            for (int j = 0; j < nss; ++j)
                pvc[i][j] = field.psi_hat(gxc[i], gs[j]);
        bool found = false;
        for (double frac : {0.5, 0.25}) {
            for (double sign : {1.0, -1.0}) {
                const double level = p.level + sign * frac * dpsi;
                const auto loops = extract_contours(pvc, gxc, gs, level);
                for (const auto& loop : loops) {
                    if (winding_number(loop, period, p.x, p.s) != 0) {
                        report.critical_layers.push_back({level, p.x, p.y});
                        found = true;
                        break;
                    }
                }
                if (found)
                    break;
            }
            if (found)
                break;
        }
    }
    return report;
}

} // namespace wavekit
