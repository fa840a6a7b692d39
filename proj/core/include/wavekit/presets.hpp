#pragma once

#include "wavekit/trivial_flow.hpp"

#include <string>
#include <vector>

namespace wavekit {

// Named base points with known kernel sets. The constants built from the
// first positive root sigma of tan x = x are computed at load time.
struct Preset {
    std::string name;
    TrivialParameters params;
    std::vector<int> expected_modes;
    std::string notes;
};

const std::vector<Preset>& presets();

// nullptr when the name is unknown.
const Preset* find_preset(const std::string& name);

} // namespace wavekit
