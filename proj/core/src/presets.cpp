#include "wavekit/presets.hpp"

#include "wavekit/dispersion.hpp"

#include <cmath>
#include <stdexcept>

namespace wavekit {

const std::vector<Preset>& presets()
{
    static const std::vector<Preset> table = [] {
        const double sigma = sigma_constant();
        const double pi = M_PI;

        std::vector<Preset> t;
        t.push_back({"ek1",
                     {1.0, -1.0, pi / 2, 1.0},
                     {1},
                     "one-dimensional kernel at unit parameters"});

        const double k2 = sigma / std::sqrt(3.0);
        t.push_back({"ek2",
                     {1.0 / (2.0 * k2), -4.0 * k2 * k2, pi / 2, k2},
                     {1, 2},
                     "two-mode kernel {1,2}; theta vanishes on the second mode"});

        const double k3 = sigma / std::sqrt(5.0);
        t.push_back({"ek3",
                     {1.0 / (3.0 * k3), -9.0 * k3 * k3, pi / 2, k3},
                     {2, 3},
                     "two-mode kernel {2,3}; theta vanishes on the third mode"});

        const double alpha_c = -4.0 * pi * pi;
        const auto mu_c = mu_for_mode(5, alpha_c, pi / 2, 1.0);
        if (!mu_c)
            throw std::logic_error("critical-layer preset amplitude undefined");
        t.push_back({"crit1",
                     {*mu_c, alpha_c, pi / 2, 1.0},
                     {5},
                     "one-dimensional kernel on a base flow with interior "
                     "stagnation lines (closed streamlines under perturbation)"});
        return t;
    }();
    return table;
}

const Preset* find_preset(const std::string& name)
{
    for (const Preset& p : presets())
        if (p.name == name)
            return &p;
    return nullptr;
}

} // namespace wavekit
