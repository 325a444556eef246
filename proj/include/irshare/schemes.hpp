// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "irshare/channel.hpp"
#include "irshare/optimizer.hpp"
#include "irshare/rng.hpp"
#include "irshare/scenario.hpp"

namespace irshare {

// Fixed vocabulary used by the CLI and all outputs.
inline const std::vector<std::string>& scheme_ids() {
    static const std::vector<std::string> ids{"sharing", "time-division", "no-sharing", "random",
                                              "standalone-switching"};
    return ids;
}

struct SchemeResult {
    std::string scheme_id;
    std::vector<double> per_user_rates;  // bit/s/Hz
    double min_rate = 0.0;
    uint64_t plan_digest = 0;  // hash of the phase plan, for audit trails
};

// Jointly optimized plan over K = N slots, every user active everywhere.
SchemeResult run_sharing(const std::vector<CascadedChannel>& channels, const Scenario& sc,
                         const LinkBudget& budget, const OptimizerOptions& opts, rng::Key stream,
                         const IterationObserver& observer = nullptr);

// Slot k conjugate-matched to user k's channel (K = N); users still
// receive the reflection in slots they do not control.
SchemeResult run_time_division(const std::vector<CascadedChannel>& channels, const Scenario& sc,
                               const LinkBudget& budget, const OptimizerOptions& opts,
                               rng::Key stream);

// Disjoint equal sub-surfaces of no_sharing_block_side()^2 elements per
// MNO (square tiles when they fit, row-major runs otherwise), each
// conjugate-matched to its owner; leftovers get fixed random phases; one
// static configuration for the whole interval.
SchemeResult run_no_sharing(const std::vector<CascadedChannel>& channels, const Scenario& sc,
                            const LinkBudget& budget, const OptimizerOptions& opts,
                            rng::Key stream);

// Uniform random phases, all users active. The plan equals the
// optimizer's restart-0 initial point for the same stream.
SchemeResult run_random(const std::vector<CascadedChannel>& channels, const Scenario& sc,
                        const LinkBudget& budget, rng::Key stream);

// CSI-free public codebook cycled over K slots; each UE transmits only
// in slots whose measured rate clears a fraction of its best slot.
SchemeResult run_standalone_switching(const std::vector<CascadedChannel>& channels,
                                      const Scenario& sc, const LinkBudget& budget,
                                      uint64_t codebook_seed, rng::Key stream);

// Dispatch by scheme_id; throws std::invalid_argument for unknown ids.
// The observer reaches the optimizer when the scheme runs one.
SchemeResult run_scheme(const std::string& scheme_id,
                        const std::vector<CascadedChannel>& channels, const Scenario& sc,
                        const LinkBudget& budget, const OptimizerOptions& opts, rng::Key stream,
                        const IterationObserver& observer = nullptr);

// Side length of each MNO's sub-surface in the no-sharing partition:
// floor(L / sqrt(N)), or floor(sqrt(L / N)) in the literal variant.
// Throws std::invalid_argument when even one element per MNO cannot fit.
int no_sharing_block_side(int l_side, int n_mnos, bool literal_subsurface);

// The K beacon patterns of the switching codebook (K x M plan), built
// from pure LoS geometry toward a fixed grid over the UE area.
PhasePlan switching_codebook(const Scenario& sc, const LinkBudget& budget, uint64_t codebook_seed);

uint64_t plan_digest(const PhasePlan& plan);

}  // namespace irshare
