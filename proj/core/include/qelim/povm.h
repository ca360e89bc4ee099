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
#ifndef QELIM_POVM_H
#define QELIM_POVM_H

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "qelim/matrix.h"
#include "qelim/states.h"

namespace qelim {

inline constexpr double kDefaultTol = 1e-10;

/// Set of candidate states ruled out by an outcome, as a bitmask over the
/// 2^n sign patterns. mask == 0 is the failure outcome. Limited to n <= 6 so
/// the mask fits one 64-bit word.
struct ExclusionSet {
    std::size_t n = 0;
    std::uint64_t mask = 0;

    ExclusionSet() = default;
    ExclusionSet(std::size_t n, std::uint64_t mask);

    static ExclusionSet failure(std::size_t n) {
        return ExclusionSet(n, 0);
    }
    /// Set from sign-pattern indices.
    static ExclusionSet of(std::size_t n, std::initializer_list<std::uint64_t> patterns);

    bool empty() const noexcept {
        return mask == 0;
    }
    bool contains(std::uint64_t pattern) const noexcept {
        return pattern < 64 && ((mask >> pattern) & 1U);
    }
    std::size_t size() const noexcept;
    /// "{++,+-}" style rendering; "{}" for failure.
    std::string to_string() const;

    bool operator==(const ExclusionSet &) const = default;
};

inline constexpr std::size_t kMaxExclusionQubits = 6;

struct Effect {
    std::string label;
    ComplexMatrix op;
    ExclusionSet excludes;
};

/// A collection of effects over one 2^n-dimensional space. The constructor
/// checks only structure (shapes, labels); positivity, completeness and
/// unambiguity are the job of validate().
class Povm {
   public:
    explicit Povm(std::vector<Effect> effects);

    const std::vector<Effect> &effects() const noexcept {
        return effects_;
    }
    std::size_t size() const noexcept {
        return effects_.size();
    }
    std::size_t dim() const noexcept {
        return effects_.front().op.rows();
    }
    std::size_t num_qubits() const noexcept {
        return effects_.front().excludes.n;
    }
    ComplexMatrix sum() const;

   private:
    std::vector<Effect> effects_;
};

struct EffectCheck {
    std::string label;
    ExclusionSet excludes;
    double min_eigenvalue = 0;
    double hermiticity_residual = 0;
    /// max over excluded states s of <s|op|s>; zero for the failure outcome.
    double unambiguity_residual = 0;
};

struct ValidationReport {
    double tol = kDefaultTol;
    std::vector<EffectCheck> effects;
    /// ||sum_i op_i - I||_F.
    double completeness_residual = 0;
    std::vector<std::string> violations;

    bool ok() const noexcept {
        return violations.empty();
    }
};

/// Checks positivity, completeness and unambiguity against `ensemble`,
/// whose state k is the state that exclusion bit k refers to.
/// Throws DimensionMismatch if dimensions disagree or an exclusion mask
/// refers to a state the ensemble does not have; InvalidArgument if tol <= 0.
ValidationReport validate(const Povm &povm, const Ensemble &ensemble, double tol = kDefaultTol);

struct OutcomeStats {
    std::vector<double> probs;
    double avg_eliminated = 0;
    double fail_prob = 0;
};

/// probs[i] = sum_s prior(s) <s|op_i|s>.
OutcomeStats outcome_probabilities(const Povm &povm, const Ensemble &ensemble);

/// sum_i probs[i] * |excludes_i|.
double average_eliminated(const Povm &povm, const Ensemble &ensemble);

/// p(i | state) for every effect.
std::vector<double> conditional_probabilities(const Povm &povm, const StateVector &state);

/// Entry K is p(not K): the probability that exactly K states are eliminated.
std::vector<double> elimination_count_distribution(const Povm &povm, const Ensemble &ensemble);

struct SetProbability {
    ExclusionSet set;
    double prob = 0;
    std::vector<std::string> labels;
};

/// Probabilities merged over effects sharing an exclusion set, in order of
/// first appearance.
std::vector<SetProbability> aggregate_by_exclusion(const Povm &povm, const OutcomeStats &stats);

/// Largest Frobenius distance between the summed operators of matching
/// exclusion sets; a set missing on one side compares against zero.
double max_effect_distance(const Povm &a, const Povm &b);

}  // namespace qelim

#endif
