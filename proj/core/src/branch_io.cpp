#include "wavekit/branch_io.hpp"

#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <sstream>

namespace wavekit {

using nlohmann::json;

void write_branch(const std::string& path, const ContinuationBranch& branch,
                  bool full_state)
{
    json doc;
    doc["kappa"] = branch.base.kappa;
    doc["base"] = {{"mu", branch.base.mu},
                   {"alpha", branch.base.alpha},
                   {"lambda", branch.base.lambda},
                   {"kappa", branch.base.kappa}};
    doc["modes"] = branch.modes;
    doc["n_x"] = branch.n_x;
    doc["n_s"] = branch.n_s;
    doc["truncated"] = branch.truncated;

    json points = json::array();
    for (const BranchPoint& p : branch.points) {
        json jp;
        if (p.amplitude.size() == 1) {
            jp["t"] = p.amplitude[0];
        } else {
            const double r = std::hypot(p.amplitude[0], p.amplitude[1]);
            const double v = r == 0.0 ? 0.0 : std::atan2(p.amplitude[1], p.amplitude[0]);
            jp["rv"] = {r, v};
        }
        jp["lambda"] = p.state.params.lambda;
        jp["alpha"] = p.state.params.alpha;
        std::vector<double> eta(p.state.eta_coeffs.data(),
                                p.state.eta_coeffs.data() + p.state.eta_coeffs.size());
        jp["eta_coeffs"] = eta;
        jp["residual_norm"] = p.residual_norm;
        points.push_back(std::move(jp));
    }
    doc["points"] = std::move(points);

    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open " + path + " for writing");
    out << doc.dump(2) << "\n";

    if (full_state) {
        std::ofstream side(path + ".phi.csv");
        if (!side)
            throw std::runtime_error("cannot open " + path + ".phi.csv for writing");
        side << "point,ix,is,phi\n" << std::setprecision(17);
        for (size_t k = 0; k < branch.points.size(); ++k) {
            const Eigen::MatrixXd& phi = branch.points[k].state.phi;
            for (int i = 0; i < phi.rows(); ++i)
                for (int j = 0; j < phi.cols(); ++j)
                    side << k << ',' << i << ',' << j << ',' << phi(i, j) << "\n";
        }
    }
}

namespace {

[[noreturn]] void malformed(const std::string& what)
{
    throw std::domain_error("malformed branch file: " + what);
}

double need_number(const json& j, const char* key)
{
    if (!j.contains(key) || !j[key].is_number())
        malformed(std::string("missing or non-numeric field '") + key + "'");
    return j[key].get<double>();
}

} // namespace

ContinuationBranch read_branch(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::domain_error("cannot open branch file " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        malformed(e.what());
    }

    ContinuationBranch branch;
    if (!doc.contains("base") || !doc["base"].is_object())
        malformed("missing header object 'base'");
    branch.base.mu = need_number(doc["base"], "mu");
    branch.base.alpha = need_number(doc["base"], "alpha");
    branch.base.lambda = need_number(doc["base"], "lambda");
    branch.base.kappa = need_number(doc["base"], "kappa");
    if (!doc.contains("modes") || !doc["modes"].is_array() || doc["modes"].empty())
        malformed("missing mode list 'modes'");
    for (const auto& m : doc["modes"]) {
        if (!m.is_number_integer())
            malformed("non-integer entry in 'modes'");
        branch.modes.push_back(m.get<int>());
    }
    branch.n_x = static_cast<int>(need_number(doc, "n_x"));
    branch.n_s = static_cast<int>(need_number(doc, "n_s"));
    branch.truncated = doc.value("truncated", false);
    if (!doc.contains("points") || !doc["points"].is_array())
        malformed("missing point array 'points'");

    for (const auto& jp : doc["points"]) {
        BranchPoint p;
        if (jp.contains("t")) {
            if (!jp["t"].is_number())
                malformed("non-numeric amplitude 't'");
            p.amplitude = {jp["t"].get<double>()};
        } else if (jp.contains("rv")) {
            if (!jp["rv"].is_array() || jp["rv"].size() != 2)
                malformed("amplitude 'rv' must be [r, v]");
            const double r = jp["rv"][0].get<double>();
            const double v = jp["rv"][1].get<double>();
            p.amplitude = {r * std::cos(v), r * std::sin(v)};
        } else {
            malformed("point lacks an amplitude ('t' or 'rv')");
        }
        p.state.params = branch.base;
        p.state.params.lambda = need_number(jp, "lambda");
        p.state.params.alpha = need_number(jp, "alpha");
        if (!jp.contains("eta_coeffs") || !jp["eta_coeffs"].is_array())
            malformed("point lacks 'eta_coeffs'");
        const auto& ec = jp["eta_coeffs"];
        p.state.eta_coeffs = Eigen::VectorXd::Zero(ec.size());
        for (size_t k = 0; k < ec.size(); ++k) {
            if (!ec[k].is_number())
                malformed("non-numeric entry in 'eta_coeffs'");
            p.state.eta_coeffs[k] = ec[k].get<double>();
        }
        if (static_cast<int>(ec.size()) != branch.n_x)
            malformed("'eta_coeffs' length disagrees with n_x");
        p.residual_norm = need_number(jp, "residual_norm");
        p.state.amplitude = p.amplitude;
        branch.points.push_back(std::move(p));
    }

    std::ifstream side(path + ".phi.csv");
    if (side) {
        for (auto& p : branch.points)
            p.state.phi = Eigen::MatrixXd::Zero(branch.n_x, branch.n_s);
        std::string line;
        if (!std::getline(side, line) || line.rfind("point,ix,is,phi", 0) != 0)
            malformed("sidecar header must be 'point,ix,is,phi'");
        size_t lineno = 1;
        while (std::getline(side, line)) {
            ++lineno;
            if (line.empty())
                continue;
            std::istringstream row(line);
            size_t k;
            int i, j;
            double val;
            char c1, c2, c3;
            if (!(row >> k >> c1 >> i >> c2 >> j >> c3 >> val) || c1 != ',' || c2 != ',' ||
                c3 != ',')
                malformed("sidecar line " + std::to_string(lineno) + " unreadable");
            if (k >= branch.points.size() || i < 0 || i >= branch.n_x || j < 0 ||
                j >= branch.n_s)
                malformed("sidecar line " + std::to_string(lineno) + " out of range");
            branch.points[k].state.phi(i, j) = val;
        }
    }
    return branch;
}

void write_field(const std::string& path, const PhysicalField& field,
                 const StagnationReport& report)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open " + path + " for writing");
    out << "x,y,psi\n" << std::setprecision(17);
    for (size_t k = 0; k < field.psi.size(); ++k)
        out << field.xs[k] << ',' << field.ys[k] << ',' << field.psi[k] << "\n";

    json rep;
    rep["points"] = json::array();
    for (const StagnationPoint& p : report.points)
        rep["points"].push_back({p.x, p.y});
    rep["critical_layers"] = json::array();
    for (const CriticalLayer& l : report.critical_layers)
        rep["critical_layers"].push_back(l.level);
    rep["stagnation_lines"] = json::array();
    for (const StagnationLine& l : report.lines)
        rep["stagnation_lines"].push_back({{"s", l.s}, {"level", l.level}});
    out << "\n" << rep.dump(2) << "\n";
}

} // namespace wavekit
