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
#ifndef QELIM_VERIFY_H
#define QELIM_VERIFY_H

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qelim/povm.h"
#include "qelim/states.h"

namespace qelim::verify {

struct CertReport {
    std::string claim;
    double closed_form = 0;
    double oracle = 0;
    double gap = 0;
    double tolerance = 0;
    /// Search or audit settings, in insertion order.
    std::vector<std::pair<std::string, double>> parameters;
    /// pass iff |gap| <= tolerance.
    bool pass = false;
    std::string note;
};

/// Grid-and-refine search over symmetric rank-one eliminate-one measurements.
///
/// Candidates are real (c01, c10, c11) in [-1, 1]^3 with c00 fixed by the
/// zero-error condition on |++>; the four sign-flipped copies are scaled by
/// the largest weight that keeps their sum below the identity. The failure
/// probability of each candidate is evaluated directly from the candidate
/// states. oracle is the best failure found, closed_form is p_fail_one, and
/// gap = oracle - closed_form (tolerance 1e-4). Should the oracle ever beat
/// the closed form by more than 1e-12, note says "optimality-violated".
/// Requires 0 <= 2theta < 45 degrees.
CertReport certify_one(AngleParam theta, std::size_t grid_steps = 61, std::size_t refine_iters = 40);

/// Maximizes the total success probability of the A..F family over weights
/// (alpha, beta, gamma) >= 0 under the operator-sum constraints
///   2 beta sin^4 + 4 gamma sin^2 <= 1,  2 beta cos^4 <= 1,
///   2 alpha + 2 gamma cos^2 <= 1,
/// on a (gamma, beta) grid with alpha maximal, followed by local refinement.
/// oracle = best success, closed_form = 1 - p_fail_two, tolerance 1e-4.
/// Requires 0 < 2theta <= 90 degrees.
CertReport certify_two(AngleParam theta, std::size_t grid_steps = 201, std::size_t refine_iters = 40);

/// Checks the average-elimination bound and every per-K cap
/// K p(not K) <= 2^n - (1 + cos2theta)^n for a POVM on the uniform ensemble.
/// oracle = average eliminated, closed_form = bound, gap = max(0, oracle -
/// closed_form) plus any cap excess; tolerance 1e-9. Throws InvalidPovm if
/// the POVM fails validation first.
CertReport audit_bound(const Povm &povm, AngleParam theta, std::size_t n);

struct SimReport {
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> labels;
    std::vector<std::uint64_t> counts;
    std::vector<double> frequencies;
    std::vector<double> analytic;
    double max_abs_deviation = 0;
    double empirical_avg_eliminated = 0;
    double analytic_avg_eliminated = 0;
};

/// Shots are split into fixed blocks of 65536; block b draws from a
/// SplitMix64 stream seeded by mixing (seed, b). Workers take whole blocks and
/// counts are summed, so the report depends only on (povm, ensemble, shots,
/// seed). workers == 0 picks the hardware concurrency.
SimReport monte_carlo(
    const Povm &povm, const Ensemble &ensemble, std::uint64_t shots, std::uint64_t seed, std::size_t workers = 0);

/// SplitMix64 (Steele, Lea, Flood 2014). Exposed for tests and benchmarks.
class SplitMix64 {
   public:
    explicit SplitMix64(std::uint64_t state) : state_(state) {
    }
    std::uint64_t next();
    /// Uniform in [0, 1) with 53 random bits.
    double next_unit();

   private:
    std::uint64_t state_;
};

}  // namespace qelim::verify

#endif
