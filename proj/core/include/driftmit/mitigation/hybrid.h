// Copyright 2026 The driftmit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <functional>
#include <span>

#include "driftmit/core/assignment_matrix.h"
#include "driftmit/core/bitstring.h"
#include "driftmit/core/twirled_channel.h"
#include "driftmit/mitigation/amplified.h"
#include "driftmit/mitigation/estimate.h"

namespace driftmit {

/// Applies the (2j+1)-fold XOR convolution of a (quasi) inverse channel to a
/// parity distribution. Because XOR commutes, this equals the parity of
/// outcomes that were each corrected by `inverse` before the parity.
QuasiDistribution hybrid_inverse(const QuasiDistribution& parity_dist, const TwirledChannel& inverse, int j);

/// Signed mitigated distribution sum_j a_j C^(2j+1) p_j over levels j = 0..m.
/// Nothing is clipped or renormalized.
QuasiDistribution mitigate_hybrid_distribution(std::span<const AmplifiedDistribution> inputs,
                                               const TwirledChannel& inverse, int m);

/// Converts a dense approximate inverse into mask form. Throws unless every
/// entry depends only on row XOR column.
TwirledChannel mask_form_inverse(const Matrix& approx_inverse, double tolerance = 1e-9);

/// Quasi-inverse of the twirled form of M.
TwirledChannel twirl_inverse(const AssignmentMatrix& m);

/// Corrected probability of `target` from a tally, given the mask weights of
/// the already-powered inverse: sum_o p(o) w(o ^ target). The variance is
/// that of the per-shot functional.
ScalarEstimate hybrid_target(const AmplifiedDistribution& dist, const std::function<double(const BitString&)>& w,
                             const BitString& target);

/// Hybrid mitigation with a mask-form inverse, levels j = 0..m.
MitigationEstimate mitigate_hybrid(std::span<const AmplifiedDistribution> inputs, const TwirledChannel& inverse,
                                   int m, const BitString& target);
/// Same with a product-form inverse; scales to wide registers.
MitigationEstimate mitigate_hybrid(std::span<const AmplifiedDistribution> inputs,
                                   const LocalTwirledChannel& inverse, int m, const BitString& target);

}  // namespace driftmit
