// SPDX-License-Identifier: Apache-2.0
#include "irshare/schemes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace irshare {

namespace {

void require_one_channel_per_user(const std::vector<CascadedChannel>& channels,
                                  const Scenario& sc) {
    if (channels.size() != static_cast<size_t>(sc.n_mnos))
        throw std::invalid_argument("expected one channel per MNO");
}

void require_slot_per_mno(const Scenario& sc) {
    if (sc.n_slots != sc.n_mnos)
        throw std::invalid_argument("scheme requires the control interval divided among the MNOs "
                                    "(n_slots == n_mnos)");
}

SchemeResult finish(std::string id, const std::vector<CascadedChannel>& channels,
                    const LinkBudget& budget, const PhasePlan& plan,
                    const SlotAllocation& activity) {
    SchemeResult res;
    res.scheme_id = std::move(id);
    res.per_user_rates.reserve(channels.size());
    for (size_t n = 0; n < channels.size(); ++n)
        res.per_user_rates.push_back(user_rate(channels[n], plan, activity[n], budget));
    res.min_rate = *std::min_element(res.per_user_rates.begin(), res.per_user_rates.end());
    res.plan_digest = plan_digest(plan);
    return res;
}

}  // namespace

uint64_t plan_digest(const PhasePlan& plan) {
    uint64_t h = 0xcbf29ce484222325ULL;
    const auto mixin = [&h](uint64_t w) {
        for (int i = 0; i < 8; ++i) {
            h ^= (w >> (8 * i)) & 0xffU;
            h *= 0x100000001b3ULL;
        }
    };
    mixin(static_cast<uint64_t>(plan.rows));
    mixin(static_cast<uint64_t>(plan.cols));
    for (const cplx& z : plan.v) {
        mixin(std::bit_cast<uint64_t>(z.real()));
        mixin(std::bit_cast<uint64_t>(z.imag()));
    }
    return h;
}

SchemeResult run_sharing(const std::vector<CascadedChannel>& channels, const Scenario& sc,
                         const LinkBudget& budget, const OptimizerOptions& opts, rng::Key stream,
                         const IterationObserver& observer) {
    require_one_channel_per_user(channels, sc);
    require_slot_per_mno(sc);
    const SlotAllocation activity = full_activity(sc.n_mnos, sc.n_slots);
    const OptimizeOutcome out =
        optimize_maxmin(channels, sc.n_slots, activity, budget, opts, stream, observer);
    return finish("sharing", channels, budget, out.plan, activity);
}

SchemeResult run_time_division(const std::vector<CascadedChannel>& channels, const Scenario& sc,
                               const LinkBudget& budget, const OptimizerOptions&, rng::Key) {
    require_one_channel_per_user(channels, sc);
    require_slot_per_mno(sc);
    PhasePlan plan(sc.n_slots, sc.n_elements());
    for (int k = 0; k < sc.n_slots; ++k) {
        const std::vector<cplx> match = conjugate_match(channels[static_cast<size_t>(k)]);
        std::copy(match.begin(), match.end(), plan.row(k));
    }
    return finish("time-division", channels, budget, plan, full_activity(sc.n_mnos, sc.n_slots));
}

int no_sharing_block_side(int l_side, int n_mnos, bool literal_subsurface) {
    // Equal division of the surface: each MNO owns side^2 elements with
    // side = floor(L / sqrt(N)). The literal variant floor(sqrt(L / N))
    // keeps near-empty blocks for comparison runs.
    const long long cap = literal_subsurface
                              ? l_side / n_mnos
                              : static_cast<long long>(l_side) * l_side / n_mnos;
    int side = 0;
    while (static_cast<long long>(side + 1) * (side + 1) <= cap) ++side;
    if (side < 1)
        throw std::invalid_argument("surface cannot be partitioned into per-MNO blocks");
    return side;
}

SchemeResult run_no_sharing(const std::vector<CascadedChannel>& channels, const Scenario& sc,
                            const LinkBudget& budget, const OptimizerOptions&, rng::Key stream) {
    require_one_channel_per_user(channels, sc);
    const int l = sc.l_side;
    const int m = sc.n_elements();
    const int side = no_sharing_block_side(l, sc.n_mnos, sc.no_sharing_literal_subsurface);
    // Prefer contiguous square tiles; when more MNOs than tile positions,
    // fall back to row-major runs of the same element count per MNO.
    const int per_row = l / side;
    const bool tiled = per_row * per_row >= sc.n_mnos;

    // One static configuration for the whole interval.
    PhasePlan plan(1, m);
    std::vector<bool> owned(static_cast<size_t>(m), false);
    for (int n = 0; n < sc.n_mnos; ++n) {
        const CascadedChannel& ch = channels[static_cast<size_t>(n)];
        const auto claim = [&](int idx) {
            const cplx coeff = ch.coeffs[static_cast<size_t>(idx)];
            const double mag = std::abs(coeff);
            plan.v[static_cast<size_t>(idx)] = mag > 0.0 ? std::conj(coeff) / mag : cplx{1.0, 0.0};
            owned[static_cast<size_t>(idx)] = true;
        };
        if (tiled) {
            const int r0 = (n / per_row) * side;
            const int c0 = (n % per_row) * side;
            for (int r = r0; r < r0 + side; ++r)
                for (int c = c0; c < c0 + side; ++c) claim(r * l + c);
        } else {
            for (int idx = n * side * side; idx < (n + 1) * side * side; ++idx) claim(idx);
        }
    }
    rng::Stream leftover(rng::derive(stream, "leftover"));
    for (int idx = 0; idx < m; ++idx)
        if (!owned[static_cast<size_t>(idx)])
            plan.v[static_cast<size_t>(idx)] = std::polar(1.0, leftover.angle());

    return finish("no-sharing", channels, budget, plan,
                  SlotAllocation(static_cast<size_t>(sc.n_mnos), SlotSet{0}));
}

SchemeResult run_random(const std::vector<CascadedChannel>& channels, const Scenario& sc,
                        const LinkBudget& budget, rng::Key stream) {
    require_one_channel_per_user(channels, sc);
    const PhasePlan plan = random_unit_plan(
        sc.n_slots, sc.n_elements(), rng::derive(rng::derive(stream, "init"), uint64_t{0}));
    return finish("random", channels, budget, plan, full_activity(sc.n_mnos, sc.n_slots));
}

PhasePlan switching_codebook(const Scenario& sc, const LinkBudget& budget,
                             uint64_t codebook_seed) {
    sc.validate();
    const int k_slots = sc.n_slots;
    const std::vector<Vec3> elements = element_positions(sc);

    // Beacon targets: a fixed lattice over the UE square at mid-height.
    const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(k_slots))));
    const int rows = (k_slots + cols - 1) / cols;
    const double z = 0.5 * (sc.ue_area.height_low_m + sc.ue_area.height_high_m);

    PhasePlan book(k_slots, sc.n_elements());
    std::vector<int> pattern_of_slot(static_cast<size_t>(k_slots));
    for (int k = 0; k < k_slots; ++k) pattern_of_slot[static_cast<size_t>(k)] = k;
    rng::Stream s(rng::derive(rng::Key{codebook_seed}, "codebook"));
    for (int i = k_slots - 1; i > 0; --i) {
        const int j = static_cast<int>(s.uniform() * (i + 1));
        std::swap(pattern_of_slot[static_cast<size_t>(i)], pattern_of_slot[static_cast<size_t>(j)]);
    }

    for (int k = 0; k < k_slots; ++k) {
        const int p = pattern_of_slot[static_cast<size_t>(k)];
        const Vec3 target{
            sc.ue_area.corner_x_m + (p % cols + 0.5) * sc.ue_area.side_m / cols,
            sc.ue_area.corner_y_m + (p / cols + 0.5) * sc.ue_area.side_m / rows,
            z};
        const CascadedChannel los = los_cascade(budget, elements, sc.bs_pos_m, target, p);
        const std::vector<cplx> match = conjugate_match(los);
        std::copy(match.begin(), match.end(), book.row(k));
    }
    return book;
}

SchemeResult run_standalone_switching(const std::vector<CascadedChannel>& channels,
                                      const Scenario& sc, const LinkBudget& budget,
                                      uint64_t codebook_seed, rng::Key) {
    require_one_channel_per_user(channels, sc);
    const PhasePlan plan = switching_codebook(sc, budget, codebook_seed);

    // First switching cycle: each MNO measures its per-slot rates, then
    // schedules its UE into the slots near its own best one.
    SlotAllocation activity(channels.size());
    for (size_t n = 0; n < channels.size(); ++n) {
        std::vector<double> slot_rate(static_cast<size_t>(sc.n_slots));
        double best = 0.0;
        for (int k = 0; k < sc.n_slots; ++k) {
            const double r = std::log2(
                1.0 + snr(channels[n], {plan.row(k), static_cast<size_t>(plan.cols)}, budget));
            slot_rate[static_cast<size_t>(k)] = r;
            best = std::max(best, r);
        }
        for (int k = 0; k < sc.n_slots; ++k)
            if (slot_rate[static_cast<size_t>(k)] >= sc.switching_activity_fraction * best)
                activity[n].push_back(k);
    }
    return finish("standalone-switching", channels, budget, plan, activity);
}

SchemeResult run_scheme(const std::string& scheme_id,
                        const std::vector<CascadedChannel>& channels, const Scenario& sc,
                        const LinkBudget& budget, const OptimizerOptions& opts, rng::Key stream,
                        const IterationObserver& observer) {
    if (scheme_id == "sharing") return run_sharing(channels, sc, budget, opts, stream, observer);
    if (scheme_id == "time-division") return run_time_division(channels, sc, budget, opts, stream);
    if (scheme_id == "no-sharing") return run_no_sharing(channels, sc, budget, opts, stream);
    if (scheme_id == "random") return run_random(channels, sc, budget, stream);
    if (scheme_id == "standalone-switching")
        return run_standalone_switching(channels, sc, budget, sc.codebook_seed, stream);
    throw std::invalid_argument("unknown scheme id: " + scheme_id);
}

}  // namespace irshare
