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
#include "qelim/schemes.h"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "qelim/error.h"

namespace qelim {

namespace {

// Angles are compared on 2theta in radians with this slack so that values
// entered in degrees land on the intended side of 45 degrees.
constexpr double kAngleSlack = 1e-12;
constexpr double kQuarterPi = std::numbers::pi / 4;
constexpr double kPairThreshold = std::numbers::sqrt2 - 1.0;

constexpr std::array<SchemeId, 6> kAllSchemes = {
    SchemeId::kPbr,
    SchemeId::kEliminateOne,
    SchemeId::kAncillaOne,
    SchemeId::kEliminateTwo,
    SchemeId::kUsd,
    SchemeId::kLocalUsd,
};

std::string pattern_label(std::uint64_t pattern) {
    return "not(" + SignPattern(2, pattern).to_string() + ")";
}

ComplexMatrix basis_projector(std::size_t dim, std::size_t index) {
    ComplexMatrix m(dim, dim);
    m(index, index) = 1.0;
    return m;
}

std::vector<cplx> normalized(std::vector<cplx> v) {
    double norm2 = 0;
    for (const auto &x : v) {
        norm2 += std::norm(x);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto &x : v) {
        x *= inv;
    }
    return v;
}

std::vector<cplx> project_out(std::vector<cplx> v, const std::vector<std::vector<cplx>> &basis) {
    for (const auto &b : basis) {
        const cplx c = inner(b, v);
        for (std::size_t k = 0; k < v.size(); ++k) {
            v[k] -= c * b[k];
        }
    }
    return v;
}

/// Extends an orthonormal list to a basis of C^dim by Gram-Schmidt over the
/// computational basis, taking the largest residual each round.
void complete_basis(std::vector<std::vector<cplx>> &basis, std::size_t dim) {
    while (basis.size() < dim) {
        std::vector<cplx> best;
        double best_norm = -1;
        for (std::size_t k = 0; k < dim; ++k) {
            std::vector<cplx> e(dim, cplx{0.0, 0.0});
            e[k] = 1.0;
            // Twice for numerical orthogonality.
            auto r = project_out(project_out(std::move(e), basis), basis);
            double nr = 0;
            for (const auto &x : r) {
                nr += std::norm(x);
            }
            if (nr > best_norm) {
                best_norm = nr;
                best = std::move(r);
            }
        }
        basis.push_back(normalized(std::move(best)));
    }
}

void require_domain(SchemeId id, AngleParam theta) {
    const auto dom = scheme_domain(id);
    if (!dom.contains(theta.two_theta_degrees())) {
        std::ostringstream os;
        os << scheme_name(id) << " requires 2theta in " << dom.describe() << " degrees, got "
           << theta.two_theta_degrees();
        throw Error(ErrorCode::kUnsupportedAngle, os.str());
    }
}

}  // namespace

std::string_view scheme_name(SchemeId id) {
    switch (id) {
        case SchemeId::kPbr:
            return "pbr";
        case SchemeId::kEliminateOne:
            return "eliminate-one";
        case SchemeId::kAncillaOne:
            return "ancilla-one";
        case SchemeId::kEliminateTwo:
            return "eliminate-two";
        case SchemeId::kUsd:
            return "usd";
        case SchemeId::kLocalUsd:
            return "local-usd";
    }
    return "unknown";
}

std::optional<SchemeId> parse_scheme(std::string_view name) {
    for (auto id : kAllSchemes) {
        if (scheme_name(id) == name) {
            return id;
        }
    }
    return std::nullopt;
}

std::span<const SchemeId> all_schemes() {
    return kAllSchemes;
}

bool AngleDomain::contains(double two_theta_deg) const {
    // Degrees carry the same relative slack as the radian checks.
    constexpr double slack = kAngleSlack * 180.0 / std::numbers::pi;
    const bool above = min_inclusive ? two_theta_deg >= min_deg - slack : two_theta_deg > min_deg + slack;
    const bool below = max_inclusive ? two_theta_deg <= max_deg + slack : two_theta_deg < max_deg - slack;
    return above && below;
}

std::string AngleDomain::describe() const {
    std::ostringstream os;
    os << (min_inclusive ? "[" : "(") << min_deg << ", " << max_deg << (max_inclusive ? "]" : ")");
    return os.str();
}

AngleDomain scheme_domain(SchemeId id) {
    switch (id) {
        case SchemeId::kPbr:
            return {45.0, 45.0, true, true};
        case SchemeId::kEliminateOne:
            return {0.0, 45.0, true, false};
        case SchemeId::kAncillaOne:
            return {45.0, 90.0, true, true};
        case SchemeId::kEliminateTwo:
            return {0.0, 90.0, false, true};
        case SchemeId::kUsd:
        case SchemeId::kLocalUsd:
            return {0.0, 90.0, true, true};
    }
    return {0.0, 90.0, true, true};
}

std::size_t scheme_qubits(SchemeId id, std::size_t n) {
    switch (id) {
        case SchemeId::kUsd:
            return 1;
        case SchemeId::kLocalUsd:
            return n;
        default:
            return 2;
    }
}

Povm build_scheme(SchemeId id, AngleParam theta, std::size_t n) {
    switch (id) {
        case SchemeId::kPbr:
            return pbr_basis(theta);
        case SchemeId::kEliminateOne:
            return eliminate_one(theta);
        case SchemeId::kAncillaOne:
            return ancilla_eliminate_one(theta);
        case SchemeId::kEliminateTwo:
            return eliminate_two(theta);
        case SchemeId::kUsd:
            return usd_qubit(theta);
        case SchemeId::kLocalUsd:
            return local_usd(theta, n);
    }
    throw Error(ErrorCode::kInvalidArgument, "unknown scheme");
}

ComplexMatrix sign_flip(std::size_t n, std::uint64_t flips) {
    const std::size_t dim = std::size_t{1} << n;
    std::vector<double> diag(dim, 1.0);
    for (std::size_t idx = 0; idx < dim; ++idx) {
        for (std::size_t q = 0; q < n; ++q) {
            const bool flipped = (flips >> q) & 1U;
            const bool one = (idx >> (n - 1 - q)) & 1U;
            if (flipped && one) {
                diag[idx] = -diag[idx];
            }
        }
    }
    return ComplexMatrix::diagonal(diag);
}

Povm pbr_basis(AngleParam theta, PbrConvention convention) {
    if (std::abs(theta.overlap() - std::numbers::sqrt2 / 2) > 1e-9) {
        throw Error(
            ErrorCode::kUnsupportedAngle,
            "pbr requires cos(2theta) = 1/sqrt2 (2theta = 45 degrees), got 2theta = " +
                std::to_string(theta.two_theta_degrees()));
    }
    const auto pair = convention == PbrConvention::kSymmetricPair ? symmetric_pair(theta) : zero_plus_pair();
    std::vector<Effect> effects;
    for (std::uint64_t pattern = 0; pattern < 4; ++pattern) {
        const SignPattern sp(2, pattern);
        const Sign a = sp.is_minus(0) ? Sign::kMinus : Sign::kPlus;
        const Sign b = sp.is_minus(1) ? Sign::kMinus : Sign::kPlus;
        auto left = kron(pair.state(a).amplitudes(), pair.orth(b).amplitudes());
        auto right = kron(pair.orth(a).amplitudes(), pair.state(b).amplitudes());
        std::vector<cplx> v(4);
        for (std::size_t k = 0; k < 4; ++k) {
            v[k] = (left[k] + right[k]) / std::numbers::sqrt2;
        }
        effects.push_back(Effect{pattern_label(pattern), outer(v, v), ExclusionSet::of(2, {pattern})});
    }
    return Povm(std::move(effects));
}

Povm symmetrize(const Povm &povm) {
    if (povm.num_qubits() != 2) {
        throw Error(ErrorCode::kBadLabels, "symmetrize acts on two-qubit eliminate-one POVMs");
    }
    std::array<std::optional<ComplexMatrix>, 4> by_pattern;
    std::optional<ComplexMatrix> failure;
    for (const auto &e : povm.effects()) {
        if (e.excludes.empty()) {
            failure = failure ? *failure + e.op : e.op;
            continue;
        }
        if (e.excludes.size() != 1) {
            throw Error(
                ErrorCode::kBadLabels,
                "effect '" + e.label + "' excludes " + e.excludes.to_string() + ", expected a single state");
        }
        const auto pattern = static_cast<std::size_t>(std::countr_zero(e.excludes.mask));
        auto &slot = by_pattern[pattern];
        slot = slot ? *slot + e.op : e.op;
    }
    for (std::uint64_t p = 0; p < 4; ++p) {
        if (!by_pattern[p]) {
            throw Error(ErrorCode::kBadLabels, "no effect excludes " + SignPattern(2, p).to_string());
        }
    }

    std::array<ComplexMatrix, 4> flips;
    for (std::uint64_t g = 0; g < 4; ++g) {
        flips[g] = sign_flip(2, g);
    }
    auto average = [&](auto &&op_for) {
        ComplexMatrix acc(4, 4);
        for (std::uint64_t g = 0; g < 4; ++g) {
            acc += flips[g] * op_for(g) * flips[g];
        }
        return acc * cplx{0.25, 0.0};
    };

    std::vector<Effect> effects;
    for (std::uint64_t target = 0; target < 4; ++target) {
        auto op = average([&](std::uint64_t g) -> const ComplexMatrix & {
            return *by_pattern[target ^ g];
        });
        effects.push_back(Effect{pattern_label(target), std::move(op), ExclusionSet::of(2, {target})});
    }
    if (failure) {
        auto op = average([&](std::uint64_t) -> const ComplexMatrix & {
            return *failure;
        });
        effects.push_back(Effect{"fail", std::move(op), ExclusionSet::failure(2)});
    }
    return Povm(std::move(effects));
}

Povm eliminate_one(AngleParam theta) {
    if (theta.two_theta() >= kQuarterPi - kAngleSlack) {
        throw Error(
            ErrorCode::kUnsupportedAngle,
            "eliminate-one requires 2theta in [0, 45) degrees; use ancilla-one for [45, 90]");
    }
    const double t = std::tan(theta.theta());
    const std::vector<cplx> x = {t * (1.0 + 0.5 * t), -0.5, -0.5, -0.5};
    const ComplexMatrix base = outer(x, x);

    std::vector<Effect> effects;
    for (std::uint64_t pattern = 0; pattern < 4; ++pattern) {
        const auto u = sign_flip(2, pattern);
        effects.push_back(Effect{pattern_label(pattern), u * base * u, ExclusionSet::of(2, {pattern})});
    }
    const double fail_weight = 1.0 - t * t * (2.0 + t) * (2.0 + t);
    effects.push_back(Effect{"fail", fail_weight * basis_projector(4, 0), ExclusionSet::failure(2)});
    return Povm(std::move(effects));
}

ComplexMatrix ancilla_coupling_unitary(AngleParam theta, double completion_angle) {
    if (theta.theta() == 0.0) {
        throw Error(ErrorCode::kDegenerateAngle, "ancilla coupling is undefined for identical states (theta = 0)");
    }
    require_domain(SchemeId::kAncillaOne, theta);

    const auto target = AngleParam::from_radians(std::numbers::pi / 8);
    const double cos_two_mu = std::clamp(std::numbers::sqrt2 * theta.overlap(), -1.0, 1.0);
    const double mu = 0.5 * std::acos(cos_two_mu);
    const std::vector<cplx> anc0 = {1.0, 0.0};
    const std::vector<cplx> phi_plus = {std::cos(mu), std::sin(mu)};
    const std::vector<cplx> phi_minus = {std::cos(mu), -std::sin(mu)};

    const auto in_plus = kron(qubit_state(theta, Sign::kPlus).amplitudes(), anc0);
    const auto in_minus = kron(qubit_state(theta, Sign::kMinus).amplitudes(), anc0);
    const auto out_plus = kron(qubit_state(target, Sign::kPlus).amplitudes(), phi_plus);
    const auto out_minus = kron(qubit_state(target, Sign::kMinus).amplitudes(), phi_minus);

    // Both pairs have Gram matrix [[1, c], [c, 1]] with c = cos(2theta), so
    // Gram-Schmidt yields matching orthonormal frames.
    std::vector<std::vector<cplx>> in_frame = {in_plus};
    in_frame.push_back(normalized(project_out(in_minus, in_frame)));
    std::vector<std::vector<cplx>> out_frame = {out_plus};
    out_frame.push_back(normalized(project_out(out_minus, out_frame)));
    complete_basis(in_frame, 4);
    complete_basis(out_frame, 4);

    if (completion_angle != 0.0) {
        const double c = std::cos(completion_angle);
        const double s = std::sin(completion_angle);
        const cplx ph = std::polar(1.0, completion_angle);
        auto f3 = out_frame[2];
        auto f4 = out_frame[3];
        for (std::size_t k = 0; k < 4; ++k) {
            out_frame[2][k] = c * f3[k] + s * ph * f4[k];
            out_frame[3][k] = -s * std::conj(ph) * f3[k] + c * f4[k];
        }
    }

    ComplexMatrix v(4, 4);
    for (std::size_t k = 0; k < 4; ++k) {
        v += outer(out_frame[k], in_frame[k]);
    }
    return v;
}

Povm ancilla_eliminate_one(AngleParam theta, double completion_angle) {
    const ComplexMatrix v = ancilla_coupling_unitary(theta, completion_angle);
    const auto pbr = pbr_basis(AngleParam::from_radians(std::numbers::pi / 8));

    // J: system (s1, s2) -> C^16 in wire order (s1, s2, a1, a2), both
    // ancillas starting in |0>. V is indexed (system, ancilla).
    ComplexMatrix j(16, 4);
    for (std::size_t s1 = 0; s1 < 2; ++s1) {
        for (std::size_t s2 = 0; s2 < 2; ++s2) {
            for (std::size_t o1 = 0; o1 < 2; ++o1) {
                for (std::size_t o2 = 0; o2 < 2; ++o2) {
                    for (std::size_t a1 = 0; a1 < 2; ++a1) {
                        for (std::size_t a2 = 0; a2 < 2; ++a2) {
                            j(o1 * 8 + o2 * 4 + a1 * 2 + a2, s1 * 2 + s2) =
                                v(o1 * 2 + a1, s1 * 2) * v(o2 * 2 + a2, s2 * 2);
                        }
                    }
                }
            }
        }
    }
    const ComplexMatrix jd = j.adjoint();
    const ComplexMatrix anc_identity = ComplexMatrix::identity(4);

    std::vector<Effect> effects;
    ComplexMatrix total(4, 4);
    for (const auto &e : pbr.effects()) {
        ComplexMatrix op = jd * kron(e.op, anc_identity) * j;
        op = 0.5 * (op + op.adjoint());
        total += op;
        effects.push_back(Effect{e.label, std::move(op), e.excludes});
    }
    effects.push_back(Effect{"fail", ComplexMatrix::identity(4) - total, ExclusionSet::failure(2)});
    return Povm(std::move(effects));
}

Povm eliminate_two(AngleParam theta) {
    require_domain(SchemeId::kEliminateTwo, theta);
    const double s = std::sin(theta.theta());
    const double c = std::cos(theta.theta());
    const double s2 = s * s;
    const double c2 = c * c;
    const double t2 = s2 / c2;

    const double beta = 1.0 / (2.0 * c2 * c2);
    double gamma;
    double alpha;
    const bool never_fails = theta.overlap() <= kPairThreshold;
    if (never_fails) {
        gamma = (1.0 - t2 * t2) / (4.0 * s2);
        alpha = 0.5 - gamma * c2;
    } else {
        gamma = 1.0 / (2.0 * c2);
        alpha = 0.0;
    }

    const std::vector<cplx> zero = {1.0, 0.0};
    const auto plus_orth = orth_state(theta, Sign::kPlus);
    const auto minus_orth = orth_state(theta, Sign::kMinus);
    auto product_projector = [](std::span<const cplx> a, std::span<const cplx> b) {
        const auto v = kron(a, b);
        return outer(v, v);
    };
    const std::vector<cplx> psi01_plus = {0.0, 1.0, 1.0, 0.0};
    const std::vector<cplx> psi01_minus = {0.0, 1.0, -1.0, 0.0};
    const std::vector<cplx> psics_plus = {s2, 0.0, 0.0, c2};
    const std::vector<cplx> psics_minus = {s2, 0.0, 0.0, -c2};

    std::vector<Effect> effects;
    effects.push_back(
        {"A", gamma * product_projector(plus_orth.amplitudes(), zero), ExclusionSet::of(2, {kPP, kPM})});
    effects.push_back(
        {"B", gamma * product_projector(zero, plus_orth.amplitudes()), ExclusionSet::of(2, {kPP, kMP})});
    effects.push_back(
        {"C", gamma * product_projector(zero, minus_orth.amplitudes()), ExclusionSet::of(2, {kPM, kMM})});
    effects.push_back(
        {"D", gamma * product_projector(minus_orth.amplitudes(), zero), ExclusionSet::of(2, {kMP, kMM})});
    effects.push_back(
        {"E",
         alpha * outer(psi01_plus, psi01_plus) + beta * outer(psics_plus, psics_plus),
         ExclusionSet::of(2, {kPM, kMP})});
    effects.push_back(
        {"F",
         alpha * outer(psi01_minus, psi01_minus) + beta * outer(psics_minus, psics_minus),
         ExclusionSet::of(2, {kPP, kMM})});
    if (!never_fails) {
        const double w = 2.0 - (1.0 + t2) * (1.0 + t2);
        effects.push_back({"fail", w * basis_projector(4, 0), ExclusionSet::failure(2)});
    }
    return Povm(std::move(effects));
}

Povm usd_qubit(AngleParam theta) {
    if (theta.theta() == 0.0) {
        return Povm({
            {"id+", ComplexMatrix(2, 2), ExclusionSet::of(1, {1})},
            {"id-", ComplexMatrix(2, 2), ExclusionSet::of(1, {0})},
            {"fail", ComplexMatrix::identity(2), ExclusionSet::failure(1)},
        });
    }
    const double w = 1.0 / (1.0 + theta.overlap());
    const auto minus_orth = orth_state(theta, Sign::kMinus);
    const auto plus_orth = orth_state(theta, Sign::kPlus);
    const double t = std::tan(theta.theta());
    return Povm({
        {"id+", w * outer(minus_orth.amplitudes(), minus_orth.amplitudes()), ExclusionSet::of(1, {1})},
        {"id-", w * outer(plus_orth.amplitudes(), plus_orth.amplitudes()), ExclusionSet::of(1, {0})},
        {"fail", (1.0 - t * t) * basis_projector(2, 0), ExclusionSet::failure(1)},
    });
}

Povm local_usd(AngleParam theta, std::size_t n) {
    if (n == 0) {
        throw Error(ErrorCode::kInvalidArgument, "local-usd needs at least one qubit");
    }
    if (n > kMaxExclusionQubits) {
        throw Error(
            ErrorCode::kTooManyQubits,
            "local-usd builds 3^n outcomes explicitly and supports n <= " + std::to_string(kMaxExclusionQubits));
    }
    const Povm single = usd_qubit(theta);
    // Per-qubit outcome order: id+, id-, fail.
    constexpr std::array<char, 3> symbol = {'+', '-', '?'};
    const std::size_t patterns = std::size_t{1} << n;

    std::size_t outcomes = 1;
    for (std::size_t q = 0; q < n; ++q) {
        outcomes *= 3;
    }
    std::vector<Effect> effects;
    effects.reserve(outcomes);
    std::vector<std::size_t> digits(n, 0);
    for (std::size_t index = 0; index < outcomes; ++index) {
        std::size_t rest = index;
        for (std::size_t q = n; q-- > 0;) {
            digits[q] = rest % 3;
            rest /= 3;
        }
        ComplexMatrix op = ComplexMatrix::identity(1);
        std::string label;
        for (std::size_t q = 0; q < n; ++q) {
            op = kron(op, single.effects()[digits[q]].op);
            label.push_back(symbol[digits[q]]);
        }
        std::uint64_t mask = 0;
        for (std::uint64_t p = 0; p < patterns; ++p) {
            const SignPattern sp(n, p);
            for (std::size_t q = 0; q < n; ++q) {
                const bool said_plus = digits[q] == 0;
                const bool said_minus = digits[q] == 1;
                if ((said_plus && sp.is_minus(q)) || (said_minus && !sp.is_minus(q))) {
                    mask |= std::uint64_t{1} << p;
                    break;
                }
            }
        }
        effects.push_back(Effect{std::move(label), std::move(op), ExclusionSet(n, mask)});
    }
    return Povm(std::move(effects));
}

}  // namespace qelim
