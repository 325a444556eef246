// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "irshare/channel.hpp"
#include "irshare/rng.hpp"
#include "irshare/types.hpp"

namespace irshare {

enum class SmoothingMode {
    active_min,  // subgradient of the worst user's rate
    softmin,     // gradient of a temperature-weighted soft minimum
};

struct OptimizerOptions {
    int restarts = 8;
    int max_iters = 2000;
    double initial_step = 1.0;  // trial step, rescaled by the gradient norm
    double armijo_shrink = 0.5;
    double armijo_slope = 1e-4;
    double convergence_tol = 1e-6;  // relative min-rate improvement
    int convergence_window = 10;    // consecutive stalled iterations before stopping
    SmoothingMode smoothing_mode = SmoothingMode::active_min;
    double softmin_temperature = 0.1;  // bit/s/Hz, softmin mode only

    void validate() const;  // throws std::invalid_argument
};

// Snapshot of one accepted (or stalled) ascent iteration; plan is the
// post-projection state. Observers run on the optimizer's thread.
struct IterationRecord {
    int restart = 0;
    int iter = 0;
    double min_rate = 0.0;
    int argmin_user = 0;
    double step = 0.0;
};
using IterationObserver = std::function<void(const IterationRecord&, const PhasePlan&)>;

struct OptimizeOutcome {
    PhasePlan plan;
    double min_rate = 0.0;
    int best_restart = 0;
    long long total_iters = 0;  // ascent iterations summed over restarts
};

// Minimum user rate under `plan` and the index attaining it (ties break
// to the lowest user index).
std::pair<double, int> evaluate_min_rate(const std::vector<CascadedChannel>& channels,
                                         const PhasePlan& plan, const SlotAllocation& activity,
                                         const LinkBudget& budget);

// Gradient of user's rate with respect to the conjugate plan entries:
// moving entries along the returned matrix increases the rate at first
// order. Rows for slots where the user is inactive are zero.
CMat ascent_direction(const std::vector<CascadedChannel>& channels, const PhasePlan& plan,
                      int user, const SlotAllocation& activity, const LinkBudget& budget);

// Entry-wise radial projection onto the unit circle. Throws
// std::domain_error if an entry's modulus is within 1e-12 of zero.
PhasePlan project_unit_modulus(const PhasePlan& plan);

// Uniform random unit-modulus K x M plan; also the restart-0 initial
// point of optimize_maxmin for the stream it was derived from.
PhasePlan random_unit_plan(int n_slots, int n_elements, rng::Key stream);

// Projected (sub)gradient ascent on the minimum user rate with Armijo
// backtracking and random restarts. Accepted iterations never decrease
// the objective; the best plan across restarts is returned.
OptimizeOutcome optimize_maxmin(const std::vector<CascadedChannel>& channels, int n_slots,
                                const SlotAllocation& activity, const LinkBudget& budget,
                                const OptimizerOptions& opts, rng::Key stream,
                                const IterationObserver& observer = nullptr);

// Exact max-min optimum over the Q-point phase grid {2*pi*q/Q}, by full
// enumeration. Refuses search spaces larger than 2^26 plans.
std::pair<PhasePlan, double> brute_force_maxmin(const std::vector<CascadedChannel>& channels,
                                                int n_slots, const SlotAllocation& activity,
                                                const LinkBudget& budget, int q_levels);

}  // namespace irshare
