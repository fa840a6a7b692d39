#pragma once

#include "wavekit/operators.hpp"

#include <vector>

namespace wavekit {

WavePair pair_add(const WavePair& a, const WavePair& b);
WavePair pair_scale(double c, const WavePair& a);

// Frechet derivatives of the flattened water-wave operator F = (F1, F2) at the
// trivial state, as explicit multilinear forms in directions w = (eta, phi_hat).
// The surface component is evaluated at s = 1.

// D F (0, Lambda) w
YElement d1_form(const TrivialFlow& flow, const WavePair& w);

// D^2 F (0, Lambda) (w, w)
YElement d2_form_diag(const TrivialFlow& flow, const WavePair& w);

// D^3 F (0, Lambda) (w, w, w)
YElement d3_form_diag(const TrivialFlow& flow, const WavePair& w);

// Off-diagonal values via polarization of the diagonal forms.
YElement d2_form(const TrivialFlow& flow, const WavePair& u, const WavePair& v);
YElement d3_form(const TrivialFlow& flow, const WavePair& u, const WavePair& v,
                 const WavePair& w);

// Uniform entry point: |inputs| must equal order (1, 2 or 3).
YElement taylor_form(const TrivialFlow& flow, const std::vector<WavePair>& inputs,
                     int order);

} // namespace wavekit
