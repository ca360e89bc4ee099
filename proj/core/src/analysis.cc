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
#include "qelim/analysis.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "qelim/error.h"

namespace qelim::analysis {

namespace {

void require_qubits(std::size_t n, std::size_t max_n) {
    if (n == 0) {
        throw Error(ErrorCode::kInvalidArgument, "qubit count must be at least 1");
    }
    if (n > max_n) {
        throw Error(ErrorCode::kTooManyQubits, "qubit count limited to " + std::to_string(max_n));
    }
}

}  // namespace

double p_fail_one(AngleParam theta) {
    const double c = std::cos(theta.two_theta());
    const double s = std::sin(theta.two_theta());
    return std::max(0.0, (c - s) * (1.0 + s));
}

double p_fail_two(AngleParam theta) {
    const double c = std::cos(theta.theta());
    return std::max(0.0, 2.0 * c * c * c * c - 1.0);
}

PairProbs pair_probs(AngleParam theta) {
    PairProbs out;
    const double overlap = theta.overlap();
    if (overlap <= kPairOverlapThreshold) {
        const double ad = 0.5 * overlap;
        const double ef = 0.5 - overlap;
        out.outcome = {ad, ad, ad, ad, ef, ef};
        out.fail = 0.0;
    } else {
        const double s2 = std::sin(theta.theta()) * std::sin(theta.theta());
        const double c2 = std::cos(theta.theta()) * std::cos(theta.theta());
        const double ad = s2 * c2;
        const double ef = s2 * s2;
        out.outcome = {ad, ad, ad, ad, ef, ef};
        out.fail = 2.0 * c2 * c2 - 1.0;
    }
    return out;
}

double avg_eliminated_local(AngleParam theta, std::size_t n) {
    require_qubits(n, 62);
    return std::ldexp(1.0, static_cast<int>(n)) - std::pow(1.0 + theta.overlap(), static_cast<double>(n));
}

BoundReport elimination_bound(AngleParam theta, std::size_t n) {
    require_qubits(n, 16);
    BoundReport r;
    r.n = n;
    r.p_f = theta.overlap();
    r.avg_local = avg_eliminated_local(theta, n);
    r.bound = std::ldexp(1.0, static_cast<int>(n)) - std::pow(1.0 + r.p_f, static_cast<double>(n));
    const std::size_t states = std::size_t{1} << n;
    r.per_k_caps.reserve(states - 1);
    for (std::size_t k = 1; k < states; ++k) {
        r.per_k_caps.emplace_back(k, r.bound / static_cast<double>(k));
    }
    return r;
}

double disc_gap(double p_f, std::size_t n) {
    require_qubits(n, 62);
    if (!(p_f >= 0.0 && p_f <= 1.0)) {
        throw Error(ErrorCode::kInvalidArgument, "p_f must lie in [0, 1]");
    }
    const double nn = static_cast<double>(n);
    const double states = std::ldexp(1.0, static_cast<int>(n));
    return states - std::pow(1.0 + p_f, nn) - (states - 1.0) * std::pow(1.0 - p_f, nn);
}

double disc_gap_derivative(double p_f, std::size_t n) {
    require_qubits(n, 62);
    const double nn = static_cast<double>(n);
    const double states = std::ldexp(1.0, static_cast<int>(n));
    return nn * ((states - 1.0) * std::pow(1.0 - p_f, nn - 1.0) - std::pow(1.0 + p_f, nn - 1.0));
}

GapMaximum disc_gap_maximum(std::size_t n) {
    require_qubits(n, 62);
    if (n < 2) {
        throw Error(ErrorCode::kInvalidArgument, "g has no interior maximum for n = 1 (it vanishes identically)");
    }
    // g'(0) = n(2^n - 2) > 0 and g'(1) = -n 2^(n-1) < 0; g'' <= 0 so the root
    // is unique.
    double lo = 0.0;
    double hi = 1.0;
    for (int iter = 0; iter < 200 && hi - lo > 1e-16; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (disc_gap_derivative(mid, n) > 0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double p = 0.5 * (lo + hi);
    return {p, disc_gap(p, n)};
}

double threshold_two() {
    return std::acos(kPairOverlapThreshold);
}

double comparison_prob(AngleParam theta) {
    return 1.0 - theta.overlap();
}

}  // namespace qelim::analysis
