// SPDX-License-Identifier: Apache-2.0
#include "irshare/scenario.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace irshare {

double norm(const Vec3& v) { return std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z); }
double distance(const Vec3& a, const Vec3& b) { return norm(a - b); }

SlotSet all_slots(int n_slots) {
    SlotSet s(static_cast<size_t>(n_slots));
    for (int k = 0; k < n_slots; ++k) s[static_cast<size_t>(k)] = k;
    return s;
}

SlotAllocation full_activity(int n_users, int n_slots) {
    return SlotAllocation(static_cast<size_t>(n_users), all_slots(n_slots));
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

void Scenario::validate() const {
    if (n_mnos < 1) throw std::invalid_argument("n_mnos must be >= 1");
    if (l_side < 1) throw std::invalid_argument("l_side must be >= 1");
    if (n_slots < 1) throw std::invalid_argument("n_slots must be >= 1");
    if (!(carrier_hz > 0.0)) throw std::invalid_argument("carrier_hz must be positive");
    if (!(ue_area.side_m > 0.0)) throw std::invalid_argument("ue_area side must be positive");
    if (ue_area.height_low_m > ue_area.height_high_m)
        throw std::invalid_argument("ue height range: low must be <= high");
    if (!(switching_activity_fraction > 0.0 && switching_activity_fraction <= 1.0))
        throw std::invalid_argument("switching_activity_fraction must lie in (0, 1]");

    // The surface sits in the x-z plane at y = irs_center.y; BS and the
    // whole UE square must be strictly off that plane.
    const double plane_y = irs_center_m.y;
    if (bs_pos_m.y == plane_y)
        throw std::invalid_argument("BS lies in the surface plane (y coordinate equals surface y)");
    const double y_lo = ue_area.corner_y_m;
    const double y_hi = ue_area.corner_y_m + ue_area.side_m;
    if (y_lo <= plane_y && plane_y <= y_hi)
        throw std::invalid_argument("UE area intersects the surface plane");
}

LinkBudget derive_link_budget(const Scenario& sc) {
    sc.validate();
    LinkBudget b;
    b.wavelength_m = kSpeedOfLight / sc.carrier_hz;
    b.tx_power_w = dbm_to_watts(sc.tx_power_dbm);
    b.tx_gain_lin = db_to_linear(sc.tx_gain_dbi);
    b.rx_gain_lin = db_to_linear(sc.rx_gain_dbi);
    b.noise_w = dbm_to_watts(sc.noise_dbm);
    // G_e = 4*pi*A_e/lambda^2 with element aperture A_e = (lambda/2)^2
    b.element_gain_lin = std::numbers::pi;
    b.rician_k_lin = db_to_linear(sc.rician_k_db);
    return b;
}

std::vector<Vec3> element_positions(const Scenario& sc) {
    sc.validate();
    const LinkBudget b = derive_link_budget(sc);
    const double pitch = b.wavelength_m / 2.0;
    const int L = sc.l_side;
    const double half = (L - 1) / 2.0;

    std::vector<Vec3> pos;
    pos.reserve(static_cast<size_t>(L) * L);
    for (int r = 0; r < L; ++r) {      // rows scan z from top down
        for (int c = 0; c < L; ++c) {  // columns scan x left to right
            pos.push_back({sc.irs_center_m.x + (c - half) * pitch,
                           sc.irs_center_m.y,
                           sc.irs_center_m.z + (half - r) * pitch});
        }
    }
    return pos;
}

std::vector<Vec3> place_users(const Scenario& sc, rng::Key stream) {
    sc.validate();
    rng::Stream s(stream);
    std::vector<Vec3> users;
    users.reserve(static_cast<size_t>(sc.n_mnos));
    for (int n = 0; n < sc.n_mnos; ++n) {
        Vec3 u;
        u.x = s.uniform(sc.ue_area.corner_x_m, sc.ue_area.corner_x_m + sc.ue_area.side_m);
        u.y = s.uniform(sc.ue_area.corner_y_m, sc.ue_area.corner_y_m + sc.ue_area.side_m);
        u.z = s.uniform(sc.ue_area.height_low_m, sc.ue_area.height_high_m);
        users.push_back(u);
    }
    return users;
}

}  // namespace irshare
