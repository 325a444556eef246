// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "irshare/rng.hpp"
#include "irshare/types.hpp"

namespace irshare {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

// Horizontal square where users are dropped, plus their height range.
// The square is [corner_x, corner_x + side] x [corner_y, corner_y + side].
struct UeArea {
    double corner_x_m = -5.5;
    double corner_y_m = 7.5;
    double side_m = 5.0;
    double height_low_m = 1.0;
    double height_high_m = 5.0;
};

// Full experiment description: geometry, link budget in dB units and
// reproducibility seed. One BS and one UE per MNO; the reflective
// surface is an l_side x l_side grid in the x-z plane.
struct Scenario {
    int n_mnos = 5;    // N
    int l_side = 20;   // L, surface is L x L elements
    int n_slots = 5;   // K, slots per control interval

    double carrier_hz = 28e9;
    double tx_power_dbm = 30.0;
    double tx_gain_dbi = 20.0;
    double rx_gain_dbi = 0.0;
    double noise_dbm = -80.0;
    double rician_k_db = 0.0;

    Vec3 irs_center_m{0.0, 0.0, 2.0};
    Vec3 bs_pos_m{10.0, 5.0, 5.0};
    UeArea ue_area{};

    uint64_t seed = 1;

    // Scheme policy knobs (see schemes.hpp).
    uint64_t codebook_seed = 0;
    double switching_activity_fraction = 0.5;
    bool no_sharing_literal_subsurface = false;

    int n_elements() const { return l_side * l_side; }

    // Throws std::invalid_argument on the first violated invariant.
    void validate() const;
};

// Linear-domain link budget. All other modules consume only these
// quantities; dB conversions happen in derive_link_budget alone.
struct LinkBudget {
    double wavelength_m = 0.0;
    double tx_power_w = 0.0;
    double tx_gain_lin = 0.0;
    double rx_gain_lin = 0.0;
    double noise_w = 0.0;
    double element_gain_lin = 0.0;  // G_e = 4*pi*A_e/lambda^2 with A_e = (lambda/2)^2, i.e. exactly pi
    double rician_k_lin = 0.0;

    double snr_scale() const { return tx_power_w / noise_w; }  // P / sigma^2
};

double dbm_to_watts(double dbm);
double db_to_linear(double db);

LinkBudget derive_link_budget(const Scenario& sc);

// Element centers of the L x L grid, half-wavelength pitch, centered on
// irs_center_m in the x-z plane. Row-major: z varies with the outer
// (row) index, x with the inner one.
std::vector<Vec3> element_positions(const Scenario& sc);

// N user positions, uniform over the UE square and height range.
std::vector<Vec3> place_users(const Scenario& sc, rng::Key stream);

}  // namespace irshare
