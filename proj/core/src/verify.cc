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
#include "qelim/verify.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <thread>

#include "qelim/analysis.h"
#include "qelim/error.h"

namespace qelim::verify {

namespace {

constexpr double kCertTol = 1e-4;
constexpr double kBoundTol = 1e-9;
constexpr double kFalsifyTol = 1e-12;
constexpr std::uint64_t kBlockShots = std::uint64_t{1} << 16;

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Failure probability of the symmetric rank-one candidate built from
/// (c01, c10, c11), or 1 when the candidate is identically zero.
class EliminateOneFamily {
   public:
    explicit EliminateOneFamily(AngleParam theta) : tan_(std::tan(theta.theta())) {
        const double c = std::cos(theta.theta());
        const double s = std::sin(theta.theta());
        // Amplitudes of |a,b> over |00>,|01>,|10>,|11>; pattern bit 0 is the
        // left qubit.
        for (std::uint64_t p = 0; p < 4; ++p) {
            const double sa = (p & 1U) ? -1.0 : 1.0;
            const double sb = (p & 2U) ? -1.0 : 1.0;
            states_[p] = {c * c, c * sb * s, sa * s * c, sa * sb * s * s};
        }
    }

    double failure(const std::array<double, 3> &free) const {
        const double c01 = free[0];
        const double c10 = free[1];
        const double c11 = free[2];
        const double c00 = -(c01 + c10) * tan_ - c11 * tan_ * tan_;
        const std::array<double, 4> x = {c00, c01, c10, c11};
        double peak = 0;
        for (double v : x) {
            peak = std::max(peak, v * v);
        }
        if (peak == 0.0) {
            return 1.0;
        }
        const double weight = 1.0 / (4.0 * peak);
        double success = 0;
        for (const auto &st : states_) {
            for (std::uint64_t g = 0; g < 4; ++g) {
                // U_g flips the sign of components whose flipped qubits are 1.
                double amp = 0;
                for (std::size_t idx = 0; idx < 4; ++idx) {
                    const bool left_one = idx & 2U;
                    const bool right_one = idx & 1U;
                    const bool negate = ((g & 1U) && left_one) != ((g & 2U) && right_one);
                    amp += st[idx] * (negate ? -x[idx] : x[idx]);
                }
                success += weight * amp * amp;
            }
        }
        return 1.0 - 0.25 * success;
    }

   private:
    double tan_;
    std::array<std::array<double, 4>, 4> states_{};
};

/// Linear success functional of the A..F family: success = kg*gamma +
/// ka*alpha + kb*beta, with each coefficient the ensemble-averaged overlap of
/// the corresponding unnormalized projectors.
struct EliminateTwoFamily {
    double s2;
    double c2;
    double kg = 0;
    double ka = 0;
    double kb = 0;

    explicit EliminateTwoFamily(AngleParam theta) {
        const double s = std::sin(theta.theta());
        const double c = std::cos(theta.theta());
        s2 = s * s;
        c2 = c * c;
        const auto ensemble = uniform_ensemble(theta, 2);
        const auto po = orth_state(theta, Sign::kPlus);
        const auto mo = orth_state(theta, Sign::kMinus);
        const std::vector<cplx> zero = {1.0, 0.0};
        const std::vector<std::vector<cplx>> gamma_vecs = {
            kron(po.amplitudes(), zero),
            kron(zero, po.amplitudes()),
            kron(zero, mo.amplitudes()),
            kron(mo.amplitudes(), zero),
        };
        const std::vector<std::vector<cplx>> alpha_vecs = {{0.0, 1.0, 1.0, 0.0}, {0.0, 1.0, -1.0, 0.0}};
        const std::vector<std::vector<cplx>> beta_vecs = {{s2, 0.0, 0.0, c2}, {s2, 0.0, 0.0, -c2}};
        auto coefficient = [&](const std::vector<std::vector<cplx>> &vecs) {
            double k = 0;
            for (std::size_t i = 0; i < ensemble.size(); ++i) {
                for (const auto &v : vecs) {
                    k += ensemble.priors()[i] * std::norm(inner(v, ensemble.states()[i].amplitudes()));
                }
            }
            return k;
        };
        kg = coefficient(gamma_vecs);
        ka = coefficient(alpha_vecs);
        kb = coefficient(beta_vecs);
    }

    /// Largest feasible alpha for (gamma, beta), or negative if infeasible.
    double max_alpha(double gamma, double beta) const {
        if (gamma < 0 || beta < 0) {
            return -1;
        }
        if (2 * beta * s2 * s2 + 4 * gamma * s2 > 1.0 + 1e-15) {
            return -1;
        }
        if (2 * beta * c2 * c2 > 1.0 + 1e-15) {
            return -1;
        }
        const double alpha = 0.5 - gamma * c2;
        return alpha >= -1e-15 ? std::max(alpha, 0.0) : -1;
    }

    /// Largest gamma satisfying the linear constraints at this beta.
    double gamma_cap(double beta) const {
        return std::min((1.0 - 2.0 * beta * s2 * s2) / (4.0 * s2), 0.5 / c2);
    }

    double success(double gamma, double beta, double alpha) const {
        return kg * gamma + ka * alpha + kb * beta;
    }
};

}  // namespace

std::uint64_t SplitMix64::next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
}

double SplitMix64::next_unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

CertReport certify_one(AngleParam theta, std::size_t grid_steps, std::size_t refine_iters) {
    if (theta.two_theta() >= std::numbers::pi / 4 - 1e-12) {
        throw Error(ErrorCode::kUnsupportedAngle, "certify_one requires 2theta in [0, 45) degrees");
    }
    if (grid_steps < 2) {
        throw Error(ErrorCode::kInvalidArgument, "grid_steps must be at least 2");
    }
    const EliminateOneFamily family(theta);
    auto coord = [&](std::size_t k) {
        return -1.0 + 2.0 * static_cast<double>(k) / static_cast<double>(grid_steps - 1);
    };

    std::array<double, 3> best{};
    double best_fail = 2.0;
    for (std::size_t i = 0; i < grid_steps; ++i) {
        for (std::size_t j = 0; j < grid_steps; ++j) {
            for (std::size_t k = 0; k < grid_steps; ++k) {
                const std::array<double, 3> cand = {coord(i), coord(j), coord(k)};
                const double f = family.failure(cand);
                if (f < best_fail) {
                    best_fail = f;
                    best = cand;
                }
            }
        }
    }

    double step = 2.0 / static_cast<double>(grid_steps - 1);
    for (std::size_t iter = 0; iter < refine_iters; ++iter) {
        bool moved = true;
        while (moved) {
            moved = false;
            for (std::size_t axis = 0; axis < 3; ++axis) {
                for (double dir : {-1.0, 1.0}) {
                    auto cand = best;
                    cand[axis] = std::clamp(cand[axis] + dir * step, -1.0, 1.0);
                    const double f = family.failure(cand);
                    if (f < best_fail) {
                        best_fail = f;
                        best = cand;
                        moved = true;
                    }
                }
            }
        }
        step *= 0.5;
    }

    CertReport r;
    r.claim = "eliminate-one optimal failure probability";
    r.closed_form = analysis::p_fail_one(theta);
    r.oracle = best_fail;
    r.gap = r.oracle - r.closed_form;
    r.tolerance = kCertTol;
    r.parameters = {
        {"two_theta_deg", theta.two_theta_degrees()},
        {"grid_steps", static_cast<double>(grid_steps)},
        {"refine_iters", static_cast<double>(refine_iters)},
        {"best_c01", best[0]},
        {"best_c10", best[1]},
        {"best_c11", best[2]},
    };
    r.pass = std::abs(r.gap) <= r.tolerance;
    if (r.gap < -kFalsifyTol) {
        r.note = "optimality-violated";
    }
    return r;
}

CertReport certify_two(AngleParam theta, std::size_t grid_steps, std::size_t refine_iters) {
    if (theta.theta() == 0.0) {
        throw Error(ErrorCode::kUnsupportedAngle, "certify_two requires 2theta in (0, 90] degrees");
    }
    if (grid_steps < 2) {
        throw Error(ErrorCode::kInvalidArgument, "grid_steps must be at least 2");
    }
    const EliminateTwoFamily family(theta);
    const double beta_max = 1.0 / (2.0 * family.c2 * family.c2);
    const double gamma_max = std::min(1.0 / (4.0 * family.s2), 1.0 / (2.0 * family.c2));

    double best_gamma = 0;
    double best_beta = 0;
    double best_success = -1;
    for (std::size_t i = 0; i < grid_steps; ++i) {
        const double gamma = gamma_max * static_cast<double>(i) / static_cast<double>(grid_steps - 1);
        for (std::size_t j = 0; j < grid_steps; ++j) {
            const double beta = beta_max * static_cast<double>(j) / static_cast<double>(grid_steps - 1);
            const double alpha = family.max_alpha(gamma, beta);
            if (alpha < 0) {
                continue;
            }
            const double v = family.success(gamma, beta, alpha);
            if (v > best_success) {
                best_success = v;
                best_gamma = gamma;
                best_beta = beta;
            }
        }
    }

    double gstep = gamma_max / static_cast<double>(grid_steps - 1);
    double bstep = beta_max / static_cast<double>(grid_steps - 1);
    for (std::size_t iter = 0; iter < refine_iters; ++iter) {
        bool moved = true;
        while (moved) {
            moved = false;
            for (int dg = -1; dg <= 1; ++dg) {
                for (int db = -1; db <= 1; ++db) {
                    if (dg == 0 && db == 0) {
                        continue;
                    }
                    const double gamma = best_gamma + dg * gstep;
                    const double beta = best_beta + db * bstep;
                    const double alpha = family.max_alpha(gamma, beta);
                    if (alpha < 0) {
                        continue;
                    }
                    const double v = family.success(gamma, beta, alpha);
                    if (v > best_success) {
                        best_success = v;
                        best_gamma = gamma;
                        best_beta = beta;
                        moved = true;
                    }
                }
            }
            // The optimum sits on a slanted constraint, which axis moves
            // cannot follow; also try sliding along it.
            for (int db = -1; db <= 1; db += 2) {
                const double beta = best_beta + db * bstep;
                const double gamma = family.gamma_cap(beta);
                const double alpha = family.max_alpha(gamma, beta);
                if (alpha < 0) {
                    continue;
                }
                const double v = family.success(gamma, beta, alpha);
                if (v > best_success) {
                    best_success = v;
                    best_gamma = gamma;
                    best_beta = beta;
                    moved = true;
                }
            }
        }
        gstep *= 0.5;
        bstep *= 0.5;
    }

    CertReport r;
    r.claim = "eliminate-two optimal success probability";
    r.closed_form = 1.0 - analysis::p_fail_two(theta);
    r.oracle = best_success;
    r.gap = r.oracle - r.closed_form;
    r.tolerance = kCertTol;
    r.parameters = {
        {"two_theta_deg", theta.two_theta_degrees()},
        {"grid_steps", static_cast<double>(grid_steps)},
        {"refine_iters", static_cast<double>(refine_iters)},
        {"best_gamma", best_gamma},
        {"best_beta", best_beta},
        {"best_alpha", family.max_alpha(best_gamma, best_beta)},
    };
    r.pass = std::abs(r.gap) <= r.tolerance;
    if (theta.overlap() > analysis::kPairOverlapThreshold) {
        // Optimality here is conjectured; agreement within the restricted
        // family only supports it.
        r.note = r.pass ? "conjecture-consistent" : "conjecture-inconsistent";
    } else {
        r.note = "deterministic-regime";
    }
    return r;
}

CertReport audit_bound(const Povm &povm, AngleParam theta, std::size_t n) {
    if (povm.num_qubits() != n) {
        throw Error(
            ErrorCode::kDimensionMismatch,
            "POVM acts on " + std::to_string(povm.num_qubits()) + " qubits, audit asked for " + std::to_string(n));
    }
    const auto ensemble = uniform_ensemble(theta, n);
    const auto validation = validate(povm, ensemble);
    if (!validation.ok()) {
        throw Error(ErrorCode::kInvalidPovm, validation.violations.front());
    }
    const auto bound = analysis::elimination_bound(theta, n);
    const auto stats = outcome_probabilities(povm, ensemble);
    const auto by_k = elimination_count_distribution(povm, ensemble);

    double worst_cap_excess = -bound.bound;
    for (std::size_t k = 1; k < by_k.size(); ++k) {
        worst_cap_excess = std::max(worst_cap_excess, static_cast<double>(k) * by_k[k] - bound.bound);
    }

    CertReport r;
    r.claim = "average eliminated within 2^n - (1 + cos2theta)^n";
    r.closed_form = bound.bound;
    r.oracle = stats.avg_eliminated;
    r.gap = std::max(0.0, r.oracle - r.closed_form) + std::max(0.0, worst_cap_excess);
    r.tolerance = kBoundTol;
    r.parameters = {
        {"two_theta_deg", theta.two_theta_degrees()},
        {"n", static_cast<double>(n)},
        {"slack", r.closed_form - r.oracle},
        {"worst_cap_excess", worst_cap_excess},
    };
    r.pass = std::abs(r.gap) <= r.tolerance;
    r.note = std::abs(r.closed_form - r.oracle) <= 1e-10 ? "saturated" : "slack";
    return r;
}

SimReport monte_carlo(
    const Povm &povm, const Ensemble &ensemble, std::uint64_t shots, std::uint64_t seed, std::size_t workers) {
    if (shots == 0) {
        throw Error(ErrorCode::kInvalidArgument, "shots must be at least 1");
    }
    const auto validation = validate(povm, ensemble);
    if (!validation.ok()) {
        throw Error(ErrorCode::kInvalidPovm, validation.violations.front());
    }

    // Inverse-CDF tables. Tiny negative roundoff is clipped; the last bucket
    // absorbs any leftover mass.
    std::vector<double> prior_cdf;
    double acc = 0;
    for (double p : ensemble.priors()) {
        acc += p;
        prior_cdf.push_back(acc);
    }
    std::vector<std::vector<double>> outcome_cdf;
    for (const auto &state : ensemble.states()) {
        auto cond = conditional_probabilities(povm, state);
        double run = 0;
        std::vector<double> cdf;
        cdf.reserve(cond.size());
        for (double p : cond) {
            run += std::max(p, 0.0);
            cdf.push_back(run);
        }
        for (auto &v : cdf) {
            v /= run;
        }
        outcome_cdf.push_back(std::move(cdf));
    }
    auto draw = [](const std::vector<double> &cdf, double u) {
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        return std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
    };

    const std::uint64_t blocks = (shots + kBlockShots - 1) / kBlockShots;
    if (workers == 0) {
        workers = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    }
    workers = static_cast<std::size_t>(std::min<std::uint64_t>(workers, blocks));

    std::vector<std::vector<std::uint64_t>> partial(workers, std::vector<std::uint64_t>(povm.size(), 0));
    auto run_worker = [&](std::size_t w) {
        auto &counts = partial[w];
        for (std::uint64_t b = w; b < blocks; b += workers) {
            SplitMix64 rng(mix64(seed) ^ mix64(b + 0x632BE59BD9B4E019ULL));
            const std::uint64_t begin = b * kBlockShots;
            const std::uint64_t end = std::min(shots, begin + kBlockShots);
            for (std::uint64_t k = begin; k < end; ++k) {
                const std::size_t s = draw(prior_cdf, rng.next_unit());
                const std::size_t o = draw(outcome_cdf[s], rng.next_unit());
                ++counts[o];
            }
        }
    };
    if (workers == 1) {
        run_worker(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            threads.emplace_back(run_worker, w);
        }
        for (auto &t : threads) {
            t.join();
        }
    }

    const auto stats = outcome_probabilities(povm, ensemble);
    SimReport r;
    r.shots = shots;
    r.seed = seed;
    r.counts.assign(povm.size(), 0);
    for (const auto &part : partial) {
        for (std::size_t i = 0; i < part.size(); ++i) {
            r.counts[i] += part[i];
        }
    }
    r.analytic = stats.probs;
    r.analytic_avg_eliminated = stats.avg_eliminated;
    double eliminated = 0;
    for (std::size_t i = 0; i < povm.size(); ++i) {
        const auto &e = povm.effects()[i];
        r.labels.push_back(e.label);
        const double f = static_cast<double>(r.counts[i]) / static_cast<double>(shots);
        r.frequencies.push_back(f);
        r.max_abs_deviation = std::max(r.max_abs_deviation, std::abs(f - stats.probs[i]));
        eliminated += static_cast<double>(r.counts[i]) * static_cast<double>(e.excludes.size());
    }
    r.empirical_avg_eliminated = eliminated / static_cast<double>(shots);
    return r;
}

}  // namespace qelim::verify
