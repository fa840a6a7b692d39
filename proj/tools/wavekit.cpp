#include "wavekit/branch_io.hpp"
#include "wavekit/continuation.hpp"
#include "wavekit/curve_jet.hpp"
#include "wavekit/field.hpp"
#include "wavekit/pairings.hpp"
#include "wavekit/presets.hpp"
#include "wavekit/two_squares.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace wavekit;
using nlohmann::json;

struct GlobalOpts {
    std::string out;
    double tol = kernel_membership_tol;
    bool json_out = false;
};

void check_writable(const std::string& path)
{
    if (path.empty())
        return;
    namespace fs = std::filesystem;
    fs::path dir = fs::path(path).parent_path();
    if (dir.empty())
        dir = ".";
    if (!fs::is_directory(dir) || access(dir.c_str(), W_OK) != 0)
        throw std::domain_error("output directory not writable: " + dir.string());
}

void emit(const json& doc, const GlobalOpts& g, const std::string& human)
{
    if (g.json_out)
        std::cout << doc.dump(2) << "\n";
    else
        std::cout << human;
    if (!g.out.empty()) {
        std::ofstream f(g.out);
        if (!f)
            throw std::runtime_error("cannot open " + g.out + " for writing");
        f << doc.dump(2) << "\n";
    }
}

json params_json(const TrivialParameters& p)
{
    return {{"mu", p.mu}, {"alpha", p.alpha}, {"lambda", p.lambda}, {"kappa", p.kappa}};
}

// Shared parameter-source flags: either --preset or the explicit quadruple.
struct ParamArgs {
    std::string preset;
    std::optional<double> mu, alpha, lambda;
    std::optional<double> kappa;

    TrivialParameters resolve() const
    {
        if (!preset.empty()) {
            const Preset* p = find_preset(preset);
            if (!p)
                throw std::domain_error("unknown preset: " + preset);
            TrivialParameters out = p->params;
            if (mu)
                out.mu = *mu;
            if (alpha)
                out.alpha = *alpha;
            if (lambda)
                out.lambda = *lambda;
            if (kappa)
                out.kappa = *kappa;
            return out;
        }
        if (!(mu && alpha && lambda && kappa))
            throw std::domain_error(
                "specify --preset or all of --mu --alpha --lambda --kappa");
        TrivialParameters out{*mu, *alpha, *lambda, *kappa};
        return out;
    }

    void attach(CLI::App* cmd)
    {
        cmd->add_option("--preset", preset, "named base point (ek1, ek2, ek3, crit1)");
        cmd->add_option("--mu", mu, "amplitude of the laminar flow");
        cmd->add_option("--alpha", alpha, "vorticity slope (negative)");
        cmd->add_option("--lambda", lambda, "phase parameter in (0, pi), radians");
        cmd->add_option("--kappa", kappa, "wavenumber (positive)");
    }
};

int run_kernel(const ParamArgs& pa, const GlobalOpts& g)
{
    const TrivialParameters params = pa.resolve();
    params.validate();
    const KernelSet ks = kernel_set(params, g.tol);

    int n_hi = static_cast<int>(std::ceil(std::sqrt(-params.alpha) / params.kappa)) + 2;
    for (int n : ks.modes)
        n_hi = std::max(n_hi, n + 1);

    json l_values = json::array();
    for (int n = 0; n <= n_hi; ++n) {
        const auto l = dispersion_l(n, params.alpha, params.kappa);
        l_values.push_back({{"n", n}, {"l", l ? json(*l) : json(nullptr)}});
    }
    json doc;
    doc["params"] = params_json(params);
    doc["M"] = ks.modes;
    doc["dimension"] = ks.dimension();
    doc["r"] = ks.r_value;
    doc["l_values"] = std::move(l_values);
    doc["transversality"] = transversality_ok(params);
    doc["undefined_l_modes"] = ks.undefined_modes;
    doc["contains_zero"] = ks.contains_zero;

    std::ostringstream h;
    h << std::setprecision(17);
    h << "kernel set M = {";
    for (size_t i = 0; i < ks.modes.size(); ++i)
        h << (i ? ", " : " ") << ks.modes[i];
    h << " }  (dimension " << ks.dimension() << ")\n";
    h << "r = " << ks.r_value << "\n";
    h << "transversality: " << (transversality_ok(params) ? "ok" : "violated") << "\n";
    if (!ks.undefined_modes.empty()) {
        h << "modes with undefined dispersion value:";
        for (int n : ks.undefined_modes)
            h << ' ' << n;
        h << "\n";
    }
    emit(doc, g, h.str());
    return 0;
}

int run_construct(std::optional<std::int64_t> H, std::optional<int> dim,
                  std::optional<std::int64_t> prime, std::int64_t knum, std::int64_t kden,
                  double lambda, const GlobalOpts& g)
{
    ConstructedKernel ck;
    if (H) {
        ck = construct_kernel_from_H(*H, knum, kden, lambda);
    } else if (dim && prime) {
        ck = construct_kernel(*dim, *prime, knum, kden, lambda);
    } else {
        throw std::domain_error("specify --H, or both --dim and --prime");
    }

    json doc;
    doc["H"] = ck.H;
    doc["M"] = ck.target_modes;
    doc["kappa"] = ck.kappa;
    doc["kappa_num"] = ck.kappa_num;
    doc["kappa_den"] = ck.kappa_den;
    doc["params"] = params_json(ck.params);
    json reps = json::array();
    for (const auto& r : ck.representations)
        reps.push_back({r.even_part, r.odd_part});
    doc["representations"] = std::move(reps);
    doc["divisor_free"] = ck.divisor_free;
    const bool match = ck.verification.modes == ck.target_modes;
    doc["verification"] = {{"M_computed", ck.verification.modes},
                           {"r", ck.verification.r_value},
                           {"modes_match", match}};

    std::ostringstream h;
    h << std::setprecision(17);
    h << "H = " << ck.H << "\n";
    h << "kernel modes M = {";
    for (size_t i = 0; i < ck.target_modes.size(); ++i)
        h << (i ? ", " : " ") << ck.target_modes[i];
    h << " }  (dimension " << ck.target_modes.size() << ")\n";
    h << "kappa = pi * " << ck.kappa_num << "/" << ck.kappa_den << " = " << ck.kappa << "\n";
    h << "mu = " << ck.params.mu << "  alpha = " << ck.params.alpha
      << "  lambda = " << ck.params.lambda << "\n";
    h << "representations (even, odd):";
    for (const auto& r : ck.representations)
        h << " (" << r.even_part << ", " << r.odd_part << ")";
    h << "\nverification: " << (match ? "kernel set reproduced" : "MISMATCH") << "\n";
    emit(doc, g, h.str());
    return 0;
}

int run_asymptotics(const ParamArgs& pa, const std::vector<int>& pair, bool check_trans,
                    int bvp_nodes, const GlobalOpts& g)
{
    const TrivialParameters params = pa.resolve();
    params.validate();
    const TrivialFlow flow = make_trivial_flow(params);
    const KernelSet ks = kernel_set(params, g.tol);

    json doc;
    doc["params"] = params_json(params);
    doc["M"] = ks.modes;
    std::ostringstream h;
    h << std::setprecision(17);

    if (!pair.empty() || ks.dimension() == 2) {
        int n1, n2;
        if (!pair.empty()) {
            if (pair.size() != 2)
                throw std::domain_error("--pair takes exactly two modes");
            n1 = pair[0];
            n2 = pair[1];
        } else {
            n1 = ks.modes[0];
            n2 = ks.modes[1];
        }
        const DeterminantC det = determinant_C(flow, n1, n2);
        doc["C"] = det.matrix_form;
        doc["C_simplified"] = det.simplified_form;
        doc["pairings"] = {{det.pairings[0][0], det.pairings[0][1]},
                           {det.pairings[1][0], det.pairings[1][1]}};
        doc["A_pairing"] = pairing_A(flow);
        h << "two-mode pair (" << n1 << ", " << n2 << ")\n";
        h << "C (matrix form)     = " << det.matrix_form << "\n";
        h << "C (simplified form) = " << det.simplified_form << "\n";
        h << "pairings [d/dlambda; d/dalpha] x [n1, n2]:\n";
        h << "  " << det.pairings[0][0] << "  " << det.pairings[0][1] << "\n";
        h << "  " << det.pairings[1][0] << "  " << det.pairings[1][1] << "\n";
        if (check_trans)
            h << "A pairing prefactor = " << pairing_A(flow) << "\n";
        emit(doc, g, h.str());
        return 0;
    }

    if (ks.dimension() != 1)
        throw std::domain_error(
            "asymptotics needs a one-dimensional kernel or an explicit --pair");

    const int n = ks.modes[0];
    const CurveJet jet = curve_jet(flow, n, bvp_nodes);
    doc["mode"] = n;
    doc["A_pairing"] = pairing_dlambda(flow, n);
    doc["lambda_dot"] = jet.lambda_dot;
    doc["lambda_ddot"] = jet.lambda_ddot;
    doc["mu_ddot"] = jet.mu_ddot;
    doc["a0_at_1"] = jet.a0.a(1.0);
    doc["a2_at_1"] = jet.a2.a(1.0);
    doc["c0"] = jet.harmonics.c0;
    doc["c2"] = jet.harmonics.c2;
    doc["ratio_check"] = jet.ratio_residual;
    doc["first_order_pairing"] = jet.lambda_dot_numerator;

    h << "mode n = " << n << "\n";
    h << "pairing <D_lambda L phi, w~> = " << pairing_dlambda(flow, n) << "\n";
    h << "lambda_dot(0)  = " << jet.lambda_dot << "  (first-order pairing "
      << jet.lambda_dot_numerator << ")\n";
    h << "lambda_ddot(0) = " << jet.lambda_ddot << "\n";
    h << "mu_ddot ratio residual = " << jet.ratio_residual << "\n";
    h << "a0(1) = " << jet.a0.a(1.0) << "  a2(1) = " << jet.a2.a(1.0) << "\n";
    h << "c0 = " << jet.harmonics.c0 << "  c2 = " << jet.harmonics.c2 << "\n";
    if (check_trans)
        h << "transversality: " << (transversality_ok(params) ? "ok" : "violated") << "\n";
    emit(doc, g, h.str());
    return 0;
}

std::string indexed_path(const std::string& base, size_t idx)
{
    std::ostringstream tag;
    tag << "_" << std::setw(3) << std::setfill('0') << idx;
    const auto slash = base.rfind('/');
    const auto dot = base.rfind('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return base + tag.str();
    return base.substr(0, dot) + tag.str() + base.substr(dot);
}

int run_continue(const ParamArgs& pa, int mode, double tmax, int steps, bool sheet,
                 std::vector<double> rs, std::vector<double> vs, std::vector<int> pair,
                 int nx, int ns, int ray_steps, double delta, bool full_state,
                 const GlobalOpts& g)
{
    const TrivialParameters params = pa.resolve();
    params.validate();
    const std::string out = g.out.empty() ? "branch.json" : g.out;
    check_writable(out);
    const KernelSet ks = kernel_set(params, g.tol);
    const Discretization disc = make_discretization(nx, ns, params.kappa);

    std::ostringstream h;
    h << std::setprecision(12);

    if (!sheet) {
        int n = mode;
        if (n <= 0) {
            if (ks.dimension() != 1)
                throw std::domain_error("kernel is not one-dimensional; pass --mode");
            n = ks.modes[0];
        }
        const ContinuationBranch br = continue_curve_1d(params, n, tmax, steps, disc);
        write_branch(out, br, full_state);
        h << "branch with " << br.points.size() << " points written to " << out << "\n";
        h << std::setw(10) << "t" << std::setw(22) << "lambda" << std::setw(14)
          << "residual" << "\n";
        for (const BranchPoint& p : br.points) {
            h << std::setw(10) << p.amplitude[0] << std::setw(22) << p.state.params.lambda
              << std::setw(14) << std::scientific << std::setprecision(3)
              << p.residual_norm << std::defaultfloat << std::setprecision(12) << "\n";
        }
        if (br.truncated)
            h << "branch truncated early (domain violation)\n";
        std::cout << h.str();
        return 0;
    }

    int n1, n2;
    if (pair.size() == 2) {
        n1 = pair[0];
        n2 = pair[1];
    } else if (ks.dimension() == 2) {
        n1 = ks.modes[0];
        n2 = ks.modes[1];
    } else {
        throw std::domain_error("sheet continuation needs --pair n1 n2");
    }
    if (rs.empty() || vs.empty())
        throw std::domain_error("sheet continuation needs --r and --v");
    std::vector<SheetPoint> grid;
    for (double r : rs)
        for (double v : vs)
            grid.push_back({r, v});

    const auto branches = continue_sheet_2d(params, n1, n2, grid, disc, ray_steps, delta);
    h << branches.size() << " sheet ray(s), modes (" << n1 << ", " << n2 << ")\n";
    for (size_t i = 0; i < branches.size(); ++i) {
        const std::string path =
            branches.size() == 1 ? out : indexed_path(out, i);
        write_branch(path, branches[i], full_state);
        const BranchPoint& tip = branches[i].points.back();
        h << "  (r, v) = (" << grid[i].r << ", " << grid[i].v << ")  lambda = "
          << tip.state.params.lambda << "  alpha = " << tip.state.params.alpha
          << "  residual = " << tip.residual_norm << "  -> " << path << "\n";
    }
    std::cout << h.str();
    return 0;
}

int run_field(const std::string& branch_path, int index, std::vector<int> res,
              double stag_tol, const GlobalOpts& g)
{
    const std::string out = g.out.empty() ? "field.csv" : g.out;
    check_writable(out);
    if (res.size() != 2)
        throw std::domain_error("--res takes NX NY");
    ContinuationBranch br = read_branch(branch_path);
    if (index < 0 || index >= static_cast<int>(br.points.size()))
        throw std::domain_error("point index out of range");

    br.base.validate();
    const Discretization disc = make_discretization(br.n_x, br.n_s, br.base.kappa);
    ParameterMask mask;
    mask.lambda = true;
    mask.alpha = br.modes.size() > 1;
    const WaveSystem sys = make_wave_system(disc, br.base, br.modes, mask);

    DiscreteWaveState st = br.points[index].state;
    if (st.amplitude.size() != br.modes.size())
        st.amplitude.assign(br.modes.size(), 0.0);
    if (st.phi.size() == 0)
        st.phi = solve_interior_phi(sys, st);

    const PhysicalField field = reconstruct_field(sys, st, res[0], res[1]);
    const StagnationReport report = detect_stagnation(field, stag_tol);
    write_field(out, field, report);

    std::ostringstream h;
    h << std::setprecision(12);
    h << "field " << res[0] << " x " << res[1] << " written to " << out << "\n";
    h << "stagnation points: " << report.points.size() << "\n";
    for (const StagnationPoint& p : report.points)
        h << "  (" << p.x << ", " << p.y << ") " << (p.is_center ? "center" : "saddle")
          << "\n";
    if (!report.lines.empty()) {
        h << "stagnation lines (x-independent flow):\n";
        for (const StagnationLine& l : report.lines)
            h << "  s = " << l.s << "  level = " << l.level << "\n";
    }
    h << "critical layers: " << report.critical_layers.size() << "\n";
    for (const CriticalLayer& l : report.critical_layers)
        h << "  level " << l.level << " around (" << l.center_x << ", " << l.center_y
          << ")\n";
    std::cout << h.str();
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"steady periodic gravity water waves with affine vorticity:\n"
                 "kernel analysis, bifurcation asymptotics, continuation and fields"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--out", g.out, "output file path");
    app.add_option("--tol", g.tol, "kernel membership tolerance")->check(CLI::PositiveNumber);
    app.add_flag("--json", g.json_out, "machine-readable JSON on stdout");

    // kernel
    auto* kern = app.add_subcommand("kernel", "kernel set of the linearization at a base point");
    kern->fallthrough();
    ParamArgs kern_pa;
    kern_pa.attach(kern);
    kern->callback([&] { run_kernel(kern_pa, g); });

    // construct
    auto* cons = app.add_subcommand(
        "construct", "base point with a prescribed kernel from sums of two squares");
    cons->fallthrough();
    std::optional<std::int64_t> cons_H;
    std::optional<int> cons_dim;
    std::optional<std::int64_t> cons_prime;
    std::int64_t cons_knum = 1, cons_kden = 1;
    double cons_lambda = 3.0 * M_PI / 4.0;
    cons->add_option("--H", cons_H, "odd integer to represent as even^2 + odd^2");
    cons->add_option("--dim", cons_dim, "target kernel dimension N");
    cons->add_option("--prime", cons_prime, "prime p = 1 mod 4 for H = p^(2N-1)");
    cons->add_option("--knum", cons_knum, "odd numerator of kappa/pi");
    cons->add_option("--kden", cons_kden, "denominator of kappa/pi (coprime to the numerator)");
    cons->add_option("--lambda", cons_lambda, "phase in (pi/2, pi), radians");
    cons->callback(
        [&] { run_construct(cons_H, cons_dim, cons_prime, cons_knum, cons_kden, cons_lambda, g); });

    // asymptotics
    auto* asym = app.add_subcommand("asymptotics",
                                    "local branch derivatives / two-mode determinant");
    asym->fallthrough();
    ParamArgs asym_pa;
    asym_pa.attach(asym);
    std::vector<int> asym_pair;
    bool asym_check = false;
    int asym_nodes = 48;
    asym->add_option("--pair", asym_pair, "two kernel modes for the determinant")
        ->expected(2);
    asym->add_flag("--check-transversality", asym_check, "report the transversality pairing");
    asym->add_option("--nodes", asym_nodes, "collocation nodes for the harmonic problems");
    asym->callback([&] { run_asymptotics(asym_pa, asym_pair, asym_check, asym_nodes, g); });

    // continue
    auto* cont = app.add_subcommand("continue", "amplitude-constrained Newton continuation");
    cont->fallthrough();
    ParamArgs cont_pa;
    cont_pa.attach(cont);
    int cont_mode = 0, cont_steps = 10, cont_nx = 16, cont_ns = 48, cont_ray = 4;
    double cont_tmax = 0.05, cont_delta = 1e-2;
    bool cont_sheet = false, cont_full = false;
    std::vector<double> cont_r, cont_v;
    std::vector<int> cont_pair;
    cont->add_option("--mode", cont_mode, "kernel mode to follow (default: the only one)");
    cont->add_option("--tmax", cont_tmax, "final amplitude");
    cont->add_option("--steps", cont_steps, "number of equal amplitude steps");
    cont->add_flag("--sheet", cont_sheet, "two-mode sheet rays instead of a curve");
    cont->add_option("--r", cont_r, "sheet radius target(s)");
    cont->add_option("--v", cont_v, "sheet angle target(s), radians");
    cont->add_option("--pair", cont_pair, "the two sheet modes n1 n2")->expected(2);
    cont->add_option("--nx", cont_nx, "cosine modes in x");
    cont->add_option("--ns", cont_ns, "collocation nodes in s");
    cont->add_option("--ray-steps", cont_ray, "increments along each sheet ray");
    cont->add_option("--delta", cont_delta,
                     "refusal band |sin v| <= delta when n1 divides n2");
    cont->add_flag("--full-state", cont_full, "write phi grids to a sidecar CSV");
    cont->callback([&] {
        run_continue(cont_pa, cont_mode, cont_tmax, cont_steps, cont_sheet, cont_r, cont_v,
                     cont_pair, cont_nx, cont_ns, cont_ray, cont_delta, cont_full, g);
    });

    // field
    auto* fld = app.add_subcommand("field", "physical field and stagnation report");
    fld->fallthrough();
    std::string fld_branch;
    int fld_index = 0;
    std::vector<int> fld_res{128, 64};
    double fld_tol = 1e-8;
    fld->add_option("--branch", fld_branch, "branch JSON file")->required();
    fld->add_option("--index", fld_index, "point index within the branch");
    fld->add_option("--res", fld_res, "sampling resolution NX NY")->expected(2);
    fld->add_option("--stag-tol", fld_tol, "acceptance tolerance on |grad psi|");
    fld->callback([&] { run_field(fld_branch, fld_index, fld_res, fld_tol, g); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const NewtonDivergence& e) {
        std::cerr << "solver divergence: " << e.what() << "\n"
                  << "  last residual: " << std::setprecision(17) << e.last_residual
                  << "\n  iterations:    " << e.iterations << "\n"
                  << (e.singular_jacobian ? "  jacobian singular (fold or branch point)\n"
                                          : "");
        return 4;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
