// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "irshare/rng.hpp"
#include "irshare/scenario.hpp"
#include "irshare/types.hpp"

namespace irshare {

// Cascaded BS -> surface -> UE channel, one coefficient per element.
struct CascadedChannel {
    int ue_index = 0;
    std::vector<cplx> coeffs;
};

// Deterministic line-of-sight cascade through every element.
CascadedChannel los_cascade(const LinkBudget& budget, const std::vector<Vec3>& elements,
                            const Vec3& bs_pos, const Vec3& ue_pos, int ue_index);

// Multiplies each coefficient by independent Rician fading factors for the
// BS-side and UE-side hops.  kappa_lin = +inf returns the LoS channel as is.
CascadedChannel apply_rician(const CascadedChannel& los, double kappa_lin, rng::Key stream);

// Channels for every MNO's user in one drop: placement plus fading, with
// per-user substreams derived from `stream`.
std::vector<CascadedChannel> draw_drop_channels(const Scenario& sc, const LinkBudget& budget,
                                                const std::vector<Vec3>& elements,
                                                const std::vector<Vec3>& users, rng::Key stream);

// Receive SNR for one slot's phase configuration.  Throws std::domain_error
// if any phase strays from unit modulus by more than 1e-9.
double snr(const CascadedChannel& ch, std::span<const cplx> phases, const LinkBudget& budget);

// Time-shared rate: averages log2(1 + SNR) over the slots in `active`,
// dividing by the full slot count (inactive slots contribute zero).
double user_rate(const CascadedChannel& ch, const PhasePlan& plan, const SlotSet& active,
                 const LinkBudget& budget);

// Phase vector that maximizes a single user's SNR: element-wise conjugate
// direction of the channel.
std::vector<cplx> conjugate_match(const CascadedChannel& ch);

}  // namespace irshare
