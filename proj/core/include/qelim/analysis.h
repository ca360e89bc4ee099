// Copyright 2026 The qelim Authors
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
#ifndef QELIM_ANALYSIS_H
#define QELIM_ANALYSIS_H

#include <array>
#include <cstddef>
#include <numbers>
#include <utility>
#include <vector>

#include "qelim/states.h"

// Closed-form probabilities and bounds. Nothing here builds an operator; these
// are the reference values the constructed measurements are checked against.
namespace qelim::analysis {

/// cos(2theta) at which eliminate-two stops failing: sqrt2 - 1.
inline constexpr double kPairOverlapThreshold = std::numbers::sqrt2 - 1.0;

/// Failure probability of the optimal eliminate-one measurement:
/// max(0, (cos2t - sin2t)(1 + sin2t)).
double p_fail_one(AngleParam theta);

/// max(0, 2cos^4(t) - 1).
double p_fail_two(AngleParam theta);

struct PairProbs {
    /// p_A .. p_F.
    std::array<double, 6> outcome{};
    double fail = 0;
};

/// Outcome probabilities of eliminate-two on equiprobable candidates.
PairProbs pair_probs(AngleParam theta);

/// 2^n - (1 + cos2t)^n, the average number eliminated by per-qubit USD.
double avg_eliminated_local(AngleParam theta, std::size_t n);

struct BoundReport {
    std::size_t n = 0;
    /// cos(2theta).
    double p_f = 0;
    double avg_local = 0;
    double bound = 0;
    /// (K, bound / K) for K = 1 .. 2^n - 1.
    std::vector<std::pair<std::size_t, double>> per_k_caps;
};

/// Upper bound on the average number of states any unambiguous measurement
/// eliminates, with the induced caps on p(not K). n is limited to 16.
BoundReport elimination_bound(AngleParam theta, std::size_t n);

/// g(p_f) = 2^n - (1+p_f)^n - (2^n - 1)(1-p_f)^n.
double disc_gap(double p_f, std::size_t n);
/// g'(p_f).
double disc_gap_derivative(double p_f, std::size_t n);

struct GapMaximum {
    double p_f = 0;
    double value = 0;
};

/// Interior maximum of g on (0, 1) for n >= 2, located by bisection on g'.
GapMaximum disc_gap_maximum(std::size_t n);

/// 2theta at which eliminate-two becomes deterministic: arccos(sqrt2 - 1), radians.
double threshold_two();

/// Optimal unambiguous same/different comparison probability, 1 - cos(2theta).
double comparison_prob(AngleParam theta);

}  // namespace qelim::analysis

#endif
