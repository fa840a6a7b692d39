#pragma once

#include "wavekit/continuation.hpp"
#include "wavekit/field.hpp"

#include <string>

namespace wavekit {

// One JSON document per branch: header {kappa, base, modes, n_x, n_s} and a
// point array {t | rv, lambda, alpha, eta_coeffs[], residual_norm}. With
// full_state the phi_hat grids go to a sidecar CSV at path + ".phi.csv".
void write_branch(const std::string& path, const ContinuationBranch& branch,
                  bool full_state = false);

// Throws std::domain_error with a field diagnostic on malformed input. Points
// come back without phi grids (size 0) unless the sidecar file is present.
ContinuationBranch read_branch(const std::string& path);

// CSV with header x,y,psi over the sample grid, followed by the stagnation
// report as a JSON document {points, critical_layers, stagnation_lines}.
void write_field(const std::string& path, const PhysicalField& field,
                 const StagnationReport& report);

} // namespace wavekit
