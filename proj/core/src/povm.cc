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
#include "qelim/povm.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <sstream>

#include "qelim/error.h"

namespace qelim {

ExclusionSet::ExclusionSet(std::size_t n_, std::uint64_t mask_) : n(n_), mask(mask_) {
    if (n > kMaxExclusionQubits) {
        throw Error(
            ErrorCode::kTooManyQubits,
            "exclusion sets support at most " + std::to_string(kMaxExclusionQubits) + " qubits");
    }
    const std::size_t patterns = std::size_t{1} << n;
    if (patterns < 64 && (mask >> patterns) != 0) {
        throw Error(ErrorCode::kInvalidArgument, "exclusion mask out of range for " + std::to_string(n) + " qubits");
    }
}

ExclusionSet ExclusionSet::of(std::size_t n, std::initializer_list<std::uint64_t> patterns) {
    std::uint64_t mask = 0;
    for (auto p : patterns) {
        if (p >= (std::uint64_t{1} << n)) {
            throw Error(ErrorCode::kInvalidArgument, "pattern index out of range");
        }
        mask |= std::uint64_t{1} << p;
    }
    return ExclusionSet(n, mask);
}

std::size_t ExclusionSet::size() const noexcept {
    return static_cast<std::size_t>(std::popcount(mask));
}

std::string ExclusionSet::to_string() const {
    std::string s = "{";
    bool first = true;
    for (std::uint64_t p = 0; p < (std::uint64_t{1} << n); ++p) {
        if (contains(p)) {
            if (!first) {
                s += ",";
            }
            s += SignPattern(n, p).to_string();
            first = false;
        }
    }
    return s + "}";
}

Povm::Povm(std::vector<Effect> effects) : effects_(std::move(effects)) {
    if (effects_.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "a POVM needs at least one effect");
    }
    const std::size_t d = effects_.front().op.rows();
    const std::size_t n = effects_.front().excludes.n;
    if (d != (std::size_t{1} << n)) {
        throw Error(
            ErrorCode::kDimensionMismatch,
            "effect dimension " + std::to_string(d) + " does not match " + std::to_string(n) + " qubits");
    }
    for (const auto &e : effects_) {
        if (!e.op.is_square() || e.op.rows() != d || e.excludes.n != n) {
            throw Error(ErrorCode::kDimensionMismatch, "effect '" + e.label + "' has inconsistent shape");
        }
    }
}

ComplexMatrix Povm::sum() const {
    ComplexMatrix total(dim(), dim());
    for (const auto &e : effects_) {
        total += e.op;
    }
    return total;
}

namespace {

void require_compatible(const Povm &povm, const Ensemble &ensemble) {
    if (povm.dim() != ensemble.dim()) {
        throw Error(
            ErrorCode::kDimensionMismatch,
            "POVM dimension " + std::to_string(povm.dim()) + " vs ensemble dimension " +
                std::to_string(ensemble.dim()));
    }
}

std::string fmt_value(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

}  // namespace

ValidationReport validate(const Povm &povm, const Ensemble &ensemble, double tol) {
    if (!(tol > 0)) {
        throw Error(ErrorCode::kInvalidArgument, "tolerance must be positive");
    }
    require_compatible(povm, ensemble);

    ValidationReport report;
    report.tol = tol;
    for (const auto &e : povm.effects()) {
        if (ensemble.size() < 64 && (e.excludes.mask >> ensemble.size()) != 0) {
            throw Error(
                ErrorCode::kDimensionMismatch,
                "effect '" + e.label + "' excludes a state beyond the ensemble of size " +
                    std::to_string(ensemble.size()));
        }

        EffectCheck check;
        check.label = e.label;
        check.excludes = e.excludes;
        check.hermiticity_residual = e.op.hermiticity_residual();
        if (check.hermiticity_residual > kHermitianTol) {
            report.violations.push_back(
                "effect '" + e.label + "' is not Hermitian (residual " + fmt_value(check.hermiticity_residual) + ")");
            // Positivity of the Hermitian part is still informative.
            ComplexMatrix herm = 0.5 * (e.op + e.op.adjoint());
            check.min_eigenvalue = eig_hermitian(herm).front();
        } else {
            check.min_eigenvalue = eig_hermitian(e.op).front();
        }
        if (check.min_eigenvalue < -tol) {
            report.violations.push_back(
                "effect '" + e.label + "' is not positive (min eigenvalue " + fmt_value(check.min_eigenvalue) + ")");
        }

        for (std::size_t s = 0; s < ensemble.size(); ++s) {
            if (e.excludes.contains(s)) {
                const double overlap = expectation(e.op, ensemble.states()[s].amplitudes());
                check.unambiguity_residual = std::max(check.unambiguity_residual, overlap);
            }
        }
        if (check.unambiguity_residual > tol) {
            report.violations.push_back(
                "effect '" + e.label + "' fires on an excluded state (overlap " +
                fmt_value(check.unambiguity_residual) + ")");
        }
        report.effects.push_back(std::move(check));
    }

    report.completeness_residual = frob_dist(povm.sum(), ComplexMatrix::identity(povm.dim()));
    if (report.completeness_residual > tol) {
        report.violations.push_back(
            "effects do not sum to the identity (Frobenius residual " + fmt_value(report.completeness_residual) +
            ")");
    }
    return report;
}

std::vector<double> conditional_probabilities(const Povm &povm, const StateVector &state) {
    if (povm.dim() != state.dim()) {
        throw Error(ErrorCode::kDimensionMismatch, "state dimension does not match POVM");
    }
    std::vector<double> probs;
    probs.reserve(povm.size());
    for (const auto &e : povm.effects()) {
        probs.push_back(expectation(e.op, state.amplitudes()));
    }
    return probs;
}

OutcomeStats outcome_probabilities(const Povm &povm, const Ensemble &ensemble) {
    require_compatible(povm, ensemble);
    OutcomeStats stats;
    stats.probs.assign(povm.size(), 0.0);
    for (std::size_t s = 0; s < ensemble.size(); ++s) {
        const double prior = ensemble.priors()[s];
        if (prior == 0.0) {
            continue;
        }
        const auto cond = conditional_probabilities(povm, ensemble.states()[s]);
        for (std::size_t i = 0; i < cond.size(); ++i) {
            stats.probs[i] += prior * cond[i];
        }
    }
    for (std::size_t i = 0; i < povm.size(); ++i) {
        const auto &ex = povm.effects()[i].excludes;
        stats.avg_eliminated += stats.probs[i] * static_cast<double>(ex.size());
        if (ex.empty()) {
            stats.fail_prob += stats.probs[i];
        }
    }
    return stats;
}

double average_eliminated(const Povm &povm, const Ensemble &ensemble) {
    return outcome_probabilities(povm, ensemble).avg_eliminated;
}

std::vector<double> elimination_count_distribution(const Povm &povm, const Ensemble &ensemble) {
    const auto stats = outcome_probabilities(povm, ensemble);
    std::vector<double> by_k((std::size_t{1} << povm.num_qubits()) + 1, 0.0);
    for (std::size_t i = 0; i < povm.size(); ++i) {
        by_k[povm.effects()[i].excludes.size()] += stats.probs[i];
    }
    return by_k;
}

std::vector<SetProbability> aggregate_by_exclusion(const Povm &povm, const OutcomeStats &stats) {
    if (stats.probs.size() != povm.size()) {
        throw Error(ErrorCode::kDimensionMismatch, "outcome stats do not belong to this POVM");
    }
    std::vector<SetProbability> out;
    for (std::size_t i = 0; i < povm.size(); ++i) {
        const auto &e = povm.effects()[i];
        auto it = std::find_if(out.begin(), out.end(), [&](const SetProbability &sp) {
            return sp.set == e.excludes;
        });
        if (it == out.end()) {
            out.push_back(SetProbability{e.excludes, 0.0, {}});
            it = std::prev(out.end());
        }
        it->prob += stats.probs[i];
        it->labels.push_back(e.label);
    }
    return out;
}

double max_effect_distance(const Povm &a, const Povm &b) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorCode::kDimensionMismatch, "POVMs act on different dimensions");
    }
    std::map<std::uint64_t, std::pair<ComplexMatrix, ComplexMatrix>> by_mask;
    const ComplexMatrix zero(a.dim(), a.dim());
    auto slot = [&](std::uint64_t mask) -> std::pair<ComplexMatrix, ComplexMatrix> & {
        auto it = by_mask.find(mask);
        if (it == by_mask.end()) {
            it = by_mask.emplace(mask, std::make_pair(zero, zero)).first;
        }
        return it->second;
    };
    for (const auto &e : a.effects()) {
        slot(e.excludes.mask).first += e.op;
    }
    for (const auto &e : b.effects()) {
        slot(e.excludes.mask).second += e.op;
    }
    double worst = 0;
    for (const auto &[mask, ops] : by_mask) {
        worst = std::max(worst, frob_dist(ops.first, ops.second));
    }
    return worst;
}

}  // namespace qelim
