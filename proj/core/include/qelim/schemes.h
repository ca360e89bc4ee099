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
#ifndef QELIM_SCHEMES_H
#define QELIM_SCHEMES_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "qelim/matrix.h"
#include "qelim/povm.h"
#include "qelim/states.h"

namespace qelim {

// Sign patterns of the four two-qubit candidates. Bit 0 is the left qubit.
inline constexpr std::uint64_t kPP = 0;  // |+theta,+theta>
inline constexpr std::uint64_t kMP = 1;  // |-theta,+theta>
inline constexpr std::uint64_t kPM = 2;  // |+theta,-theta>
inline constexpr std::uint64_t kMM = 3;  // |-theta,-theta>

/// Wire-stable scheme identifiers.
enum class SchemeId { kPbr, kEliminateOne, kAncillaOne, kEliminateTwo, kUsd, kLocalUsd };

std::string_view scheme_name(SchemeId id);
std::optional<SchemeId> parse_scheme(std::string_view name);
std::span<const SchemeId> all_schemes();

/// Admissible range of 2*theta in degrees.
struct AngleDomain {
    double min_deg;
    double max_deg;
    bool min_inclusive;
    bool max_inclusive;

    bool contains(double two_theta_deg) const;
    /// e.g. "[0, 45)".
    std::string describe() const;
};

AngleDomain scheme_domain(SchemeId id);
/// Number of qubits the scheme measures; `n` only matters for local-usd.
std::size_t scheme_qubits(SchemeId id, std::size_t n);
Povm build_scheme(SchemeId id, AngleParam theta, std::size_t n = 2);

/// Diagonal sign-flip U = |0><0| - |1><1| applied to every qubit whose bit is
/// set in `flips` (bit 0 = leftmost qubit), identity elsewhere.
ComplexMatrix sign_flip(std::size_t n, std::uint64_t flips);

enum class PbrConvention {
    /// Candidates |+-22.5 deg>.
    kSymmetricPair,
    /// Candidates |0>, |+> (plus -> |0>, minus -> |+>).
    kZeroPlus,
};

/// Four-outcome entangled basis |not(a,b)> = (|a,b_orth> + |a_orth,b>)/sqrt2.
/// Only defined where the per-qubit overlap is 1/sqrt2, i.e. 2theta = 45 deg;
/// throws UnsupportedAngle otherwise.
Povm pbr_basis(AngleParam theta, PbrConvention convention = PbrConvention::kSymmetricPair);

/// Averages a two-qubit eliminate-one POVM over the sign-flip group so that
/// the outcome excluding pattern l is sum_g U_g P_{l^g} U_g / 4. Failure
/// effects (empty exclusion set) are averaged the same way and come out
/// diagonal. Throws BadLabels unless every non-failure effect excludes a
/// single pattern and all four singletons occur.
Povm symmetrize(const Povm &povm);

/// Optimal unambiguous eliminate-one-of-four measurement for 0 <= 2theta < 45:
/// rank-one effects generated from
///   |X> = tan(t)(1 + tan(t)/2)|00> - (|01> + |10> + |11>)/2
/// by sign flips, plus a failure effect on |00>.
Povm eliminate_one(AngleParam theta);

/// Per-qubit coupling unitary on (system, ancilla) mapping |+-theta>|0> to
/// |+-22.5 deg>|phi_+->, phi_+- = cos(mu)|0> +- sin(mu)|1>, cos(2mu) =
/// sqrt2 cos(2theta). The part of the unitary outside span{|+-theta>|0>} is a
/// Gram-Schmidt completion, further rotated by `completion_angle`.
ComplexMatrix ancilla_coupling_unitary(AngleParam theta, double completion_angle = 0.0);

/// Deterministic eliminate-one measurement for 45 <= 2theta <= 90: couple
/// each qubit to an ancilla, measure the PBR basis on the systems, discard the
/// ancillas. Wire order (system1, system2, ancilla1, ancilla2). Returns the
/// effective two-qubit POVM, including the (numerically zero) failure effect.
Povm ancilla_eliminate_one(AngleParam theta, double completion_angle = 0.0);

/// Eliminate-two-of-four measurement with outcomes A..F for 0 < 2theta <= 90.
/// Never fails once cos(2theta) <= sqrt2 - 1.
Povm eliminate_two(AngleParam theta);

/// Optimal single-qubit unambiguous discrimination of |+-theta>: outcomes
/// "id+" (excludes minus), "id-" (excludes plus) and "fail".
Povm usd_qubit(AngleParam theta);

/// Product of usd_qubit on each of n <= 6 qubits (3^n outcomes). Labels use
/// '+', '-' or '?' (failed) per qubit.
Povm local_usd(AngleParam theta, std::size_t n);

}  // namespace qelim

#endif
