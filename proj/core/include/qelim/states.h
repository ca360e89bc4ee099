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
#ifndef QELIM_STATES_H
#define QELIM_STATES_H

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qelim/matrix.h"

namespace qelim {

/// Largest qubit count for which product states and ensembles are built.
inline constexpr std::size_t kMaxQubits = 10;

/// Half-angle theta of the qubit pair |+-theta> = cos(theta)|0> +- sin(theta)|1>,
/// with 0 <= theta <= pi/4. Users mostly think in 2*theta degrees; the only
/// conversion point is from_two_theta_degrees.
class AngleParam {
   public:
    static AngleParam from_radians(double theta);
    static AngleParam from_two_theta_degrees(double two_theta_deg);

    double theta() const noexcept {
        return theta_;
    }
    double two_theta() const noexcept {
        return 2.0 * theta_;
    }
    double two_theta_degrees() const noexcept;
    /// <-theta|theta> = cos(2 theta), the per-qubit overlap p_f.
    double overlap() const noexcept;

   private:
    explicit AngleParam(double theta) : theta_(theta) {
    }
    double theta_;
};

enum class Sign : int { kPlus = 1, kMinus = -1 };

/// Normalized pure state. Dimension must be a power of two.
class StateVector {
   public:
    /// Throws InvalidArgument unless sum |a|^2 = 1 within 1e-12 and the
    /// length is a power of two.
    explicit StateVector(std::vector<cplx> amplitudes);

    std::size_t dim() const noexcept {
        return amplitudes_.size();
    }
    std::size_t num_qubits() const noexcept;
    std::span<const cplx> amplitudes() const noexcept {
        return amplitudes_;
    }
    const cplx &operator[](std::size_t k) const {
        return amplitudes_[k];
    }

   private:
    std::vector<cplx> amplitudes_;
};

/// Which of |+theta>, |-theta> each qubit carries. Bit i set means qubit i is
/// in the minus state; bit 0 is the leftmost qubit.
struct SignPattern {
    std::size_t n = 0;
    std::uint64_t bits = 0;

    SignPattern() = default;
    SignPattern(std::size_t n, std::uint64_t bits);

    bool is_minus(std::size_t qubit) const noexcept {
        return (bits >> qubit) & 1U;
    }
    /// "+-" style rendering, leftmost qubit first.
    std::string to_string() const;
    static SignPattern parse(std::string_view text);

    bool operator==(const SignPattern &) const = default;
};

std::size_t hamming_distance(SignPattern a, SignPattern b);

/// The two single-qubit candidate states together with their orthogonal
/// complements. The symmetric pair |+-theta> is the default; the {|0>,|+>}
/// pair is unitarily equivalent at 2 theta = 45 degrees.
struct QubitStatePair {
    StateVector plus;
    StateVector minus;
    StateVector plus_orth;
    StateVector minus_orth;

    const StateVector &state(Sign s) const {
        return s == Sign::kPlus ? plus : minus;
    }
    const StateVector &orth(Sign s) const {
        return s == Sign::kPlus ? plus_orth : minus_orth;
    }
};

QubitStatePair symmetric_pair(AngleParam theta);
/// plus -> |0>, minus -> |+>, orthogonal complements |1>, |->.
QubitStatePair zero_plus_pair();

/// (cos theta, sign * sin theta).
StateVector qubit_state(AngleParam theta, Sign sign);
/// (sin theta, -sign * cos theta); orthogonal to qubit_state(theta, sign).
StateVector orth_state(AngleParam theta, Sign sign);

StateVector product_state(const QubitStatePair &pair, SignPattern pattern);
StateVector product_state(AngleParam theta, SignPattern pattern);

/// Candidate states with prior probabilities. State k corresponds to the
/// sign pattern with bits == k, which is how exclusion sets refer to it.
class Ensemble {
   public:
    /// Throws InvalidArgument on negative priors, priors not summing to one
    /// within 1e-12, mismatched sizes or an empty list; DimensionMismatch if
    /// the states do not share one dimension.
    Ensemble(std::vector<StateVector> states, std::vector<double> priors);

    std::size_t size() const noexcept {
        return states_.size();
    }
    std::size_t dim() const noexcept {
        return states_.front().dim();
    }
    const std::vector<StateVector> &states() const noexcept {
        return states_;
    }
    const std::vector<double> &priors() const noexcept {
        return priors_;
    }

   private:
    std::vector<StateVector> states_;
    std::vector<double> priors_;
};

/// All 2^n product states, each with prior 2^-n, in sign-pattern order.
Ensemble uniform_ensemble(const QubitStatePair &pair, std::size_t n);
Ensemble uniform_ensemble(AngleParam theta, std::size_t n);

}  // namespace qelim

#endif
