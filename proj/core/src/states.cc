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
#include "qelim/states.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "qelim/error.h"

namespace qelim {

namespace {

constexpr double kNormTol = 1e-12;
constexpr double kAngleSlack = 1e-12;

}  // namespace

AngleParam AngleParam::from_radians(double theta) {
    if (!std::isfinite(theta) || theta < -kAngleSlack || theta > std::numbers::pi / 4 + kAngleSlack) {
        throw Error(
            ErrorCode::kUnsupportedAngle,
            "theta must lie in [0, pi/4] (2theta in [0, 90] degrees), got " + std::to_string(theta));
    }
    return AngleParam(std::clamp(theta, 0.0, std::numbers::pi / 4));
}

AngleParam AngleParam::from_two_theta_degrees(double two_theta_deg) {
    if (!std::isfinite(two_theta_deg) || two_theta_deg < 0.0 || two_theta_deg > 90.0) {
        throw Error(
            ErrorCode::kUnsupportedAngle, "2theta must lie in [0, 90] degrees, got " + std::to_string(two_theta_deg));
    }
    if (two_theta_deg == 90.0) {
        return AngleParam(std::numbers::pi / 4);
    }
    return AngleParam(two_theta_deg * std::numbers::pi / 360.0);
}

double AngleParam::two_theta_degrees() const noexcept {
    return theta_ * 360.0 / std::numbers::pi;
}

double AngleParam::overlap() const noexcept {
    return std::cos(2.0 * theta_);
}

StateVector::StateVector(std::vector<cplx> amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.empty() || !std::has_single_bit(amplitudes_.size())) {
        throw Error(
            ErrorCode::kInvalidArgument,
            "state dimension must be a power of two, got " + std::to_string(amplitudes_.size()));
    }
    double norm2 = 0;
    for (const auto &a : amplitudes_) {
        norm2 += std::norm(a);
    }
    if (std::abs(norm2 - 1.0) > kNormTol) {
        throw Error(ErrorCode::kInvalidArgument, "state not normalized: |psi|^2 = " + std::to_string(norm2));
    }
}

std::size_t StateVector::num_qubits() const noexcept {
    return static_cast<std::size_t>(std::countr_zero(amplitudes_.size()));
}

SignPattern::SignPattern(std::size_t n_, std::uint64_t bits_) : n(n_), bits(bits_) {
    if (n > 63 || bits >= (std::uint64_t{1} << n)) {
        throw Error(
            ErrorCode::kInvalidArgument,
            "sign pattern bits " + std::to_string(bits) + " out of range for " + std::to_string(n) + " qubits");
    }
}

std::string SignPattern::to_string() const {
    std::string s;
    for (std::size_t q = 0; q < n; ++q) {
        s.push_back(is_minus(q) ? '-' : '+');
    }
    return s;
}

SignPattern SignPattern::parse(std::string_view text) {
    std::uint64_t bits = 0;
    for (std::size_t q = 0; q < text.size(); ++q) {
        if (text[q] == '-') {
            bits |= std::uint64_t{1} << q;
        } else if (text[q] != '+') {
            throw Error(ErrorCode::kInvalidArgument, "bad sign pattern '" + std::string(text) + "'");
        }
    }
    return SignPattern(text.size(), bits);
}

std::size_t hamming_distance(SignPattern a, SignPattern b) {
    if (a.n != b.n) {
        throw Error(ErrorCode::kDimensionMismatch, "hamming distance between patterns of different length");
    }
    return static_cast<std::size_t>(std::popcount(a.bits ^ b.bits));
}

StateVector qubit_state(AngleParam theta, Sign sign) {
    const double s = static_cast<int>(sign);
    return StateVector({std::cos(theta.theta()), s * std::sin(theta.theta())});
}

StateVector orth_state(AngleParam theta, Sign sign) {
    const double s = static_cast<int>(sign);
    return StateVector({std::sin(theta.theta()), -s * std::cos(theta.theta())});
}

QubitStatePair symmetric_pair(AngleParam theta) {
    return QubitStatePair{
        qubit_state(theta, Sign::kPlus),
        qubit_state(theta, Sign::kMinus),
        orth_state(theta, Sign::kPlus),
        orth_state(theta, Sign::kMinus),
    };
}

QubitStatePair zero_plus_pair() {
    const double h = std::numbers::sqrt2 / 2;
    return QubitStatePair{
        StateVector({1.0, 0.0}),
        StateVector({h, h}),
        StateVector({0.0, 1.0}),
        StateVector({h, -h}),
    };
}

StateVector product_state(const QubitStatePair &pair, SignPattern pattern) {
    if (pattern.n == 0 || pattern.n > kMaxQubits) {
        throw Error(ErrorCode::kTooManyQubits, "product states support 1.." + std::to_string(kMaxQubits) + " qubits");
    }
    std::vector<cplx> amps(1, cplx{1.0, 0.0});
    for (std::size_t q = 0; q < pattern.n; ++q) {
        const auto &single = pattern.is_minus(q) ? pair.minus : pair.plus;
        amps = kron(std::span<const cplx>(amps), single.amplitudes());
    }
    // Re-normalize away the accumulated roundoff of the Kronecker chain.
    double norm2 = 0;
    for (const auto &a : amps) {
        norm2 += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto &a : amps) {
        a *= inv;
    }
    return StateVector(std::move(amps));
}

StateVector product_state(AngleParam theta, SignPattern pattern) {
    return product_state(symmetric_pair(theta), pattern);
}

Ensemble::Ensemble(std::vector<StateVector> states, std::vector<double> priors)
    : states_(std::move(states)), priors_(std::move(priors)) {
    if (states_.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "ensemble needs at least one state");
    }
    if (states_.size() != priors_.size()) {
        throw Error(ErrorCode::kInvalidArgument, "ensemble has different numbers of states and priors");
    }
    double total = 0;
    for (double p : priors_) {
        if (!(p >= 0.0)) {
            throw Error(ErrorCode::kInvalidArgument, "negative prior " + std::to_string(p));
        }
        total += p;
    }
    if (std::abs(total - 1.0) > kNormTol) {
        throw Error(ErrorCode::kInvalidArgument, "priors sum to " + std::to_string(total));
    }
    for (const auto &s : states_) {
        if (s.dim() != states_.front().dim()) {
            throw Error(ErrorCode::kDimensionMismatch, "ensemble states have different dimensions");
        }
    }
}

Ensemble uniform_ensemble(const QubitStatePair &pair, std::size_t n) {
    if (n == 0 || n > kMaxQubits) {
        throw Error(ErrorCode::kTooManyQubits, "uniform ensemble supports 1.." + std::to_string(kMaxQubits) + " qubits");
    }
    const std::uint64_t count = std::uint64_t{1} << n;
    std::vector<StateVector> states;
    states.reserve(count);
    for (std::uint64_t bits = 0; bits < count; ++bits) {
        states.push_back(product_state(pair, SignPattern(n, bits)));
    }
    return Ensemble(std::move(states), std::vector<double>(count, 1.0 / static_cast<double>(count)));
}

Ensemble uniform_ensemble(AngleParam theta, std::size_t n) {
    return uniform_ensemble(symmetric_pair(theta), n);
}

}  // namespace qelim
