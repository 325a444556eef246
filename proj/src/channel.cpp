// SPDX-License-Identifier: Apache-2.0
#include "irshare/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace irshare {

namespace {

// One complex Rician mixing factor with E|m|^2 = 1.
cplx rician_factor(double kappa_lin, rng::Stream& s) {
    const cplx scatter = s.unit_gaussian();
    const double los_w = std::sqrt(kappa_lin / (1.0 + kappa_lin));
    const double nlos_w = std::sqrt(1.0 / (1.0 + kappa_lin));
    return cplx{los_w, 0.0} + nlos_w * scatter;
}

}  // namespace

CascadedChannel los_cascade(const LinkBudget& budget, const std::vector<Vec3>& elements,
                            const Vec3& bs_pos, const Vec3& ue_pos, int ue_index) {
    CascadedChannel ch;
    ch.ue_index = ue_index;
    ch.coeffs.reserve(elements.size());
    const double lam = budget.wavelength_m;
    const double two_pi = 2.0 * std::numbers::pi;
    for (const Vec3& e : elements) {
        const double d_t = distance(bs_pos, e);
        const double d_r = distance(e, ue_pos);
        if (d_t <= 0.0 || d_r <= 0.0)
            throw std::domain_error("endpoint coincides with a surface element");
        const double a_t = lam / (4.0 * std::numbers::pi * d_t) *
                           std::sqrt(budget.tx_gain_lin * budget.element_gain_lin);
        const double a_r = lam / (4.0 * std::numbers::pi * d_r) *
                           std::sqrt(budget.rx_gain_lin * budget.element_gain_lin);
        const double phase = -two_pi * (d_t + d_r) / lam;
        ch.coeffs.push_back(std::polar(a_t * a_r, phase));
    }
    return ch;
}

CascadedChannel apply_rician(const CascadedChannel& los, double kappa_lin, rng::Key stream) {
    if (!(kappa_lin >= 0.0)) throw std::invalid_argument("rician kappa must be >= 0");
    if (std::isinf(kappa_lin)) return los;

    CascadedChannel ch;
    ch.ue_index = los.ue_index;
    ch.coeffs.resize(los.coeffs.size());
    rng::Stream tx(rng::derive(stream, "hop_tx"));
    rng::Stream rx(rng::derive(stream, "hop_rx"));
    for (size_t l = 0; l < los.coeffs.size(); ++l) {
        const cplx m_t = rician_factor(kappa_lin, tx);
        const cplx m_r = rician_factor(kappa_lin, rx);
        ch.coeffs[l] = los.coeffs[l] * m_t * m_r;
    }
    return ch;
}

std::vector<CascadedChannel> draw_drop_channels(const Scenario& sc, const LinkBudget& budget,
                                                const std::vector<Vec3>& elements,
                                                const std::vector<Vec3>& users, rng::Key stream) {
    std::vector<CascadedChannel> out;
    out.reserve(users.size());
    for (size_t n = 0; n < users.size(); ++n) {
        CascadedChannel los =
            los_cascade(budget, elements, sc.bs_pos_m, users[n], static_cast<int>(n));
        out.push_back(apply_rician(los, budget.rician_k_lin,
                                   rng::derive(stream, static_cast<uint64_t>(n))));
    }
    return out;
}

double snr(const CascadedChannel& ch, std::span<const cplx> phases, const LinkBudget& budget) {
    if (phases.size() != ch.coeffs.size())
        throw std::invalid_argument("phase vector length does not match element count");
    cplx sum{0.0, 0.0};
    for (size_t l = 0; l < phases.size(); ++l) {
        const double mag = std::abs(phases[l]);
        if (std::abs(mag - 1.0) > 1e-9)
            throw std::domain_error("phase coefficient off the unit circle at element " +
                                    std::to_string(l));
        sum += ch.coeffs[l] * phases[l];
    }
    return budget.snr_scale() * std::norm(sum);
}

double user_rate(const CascadedChannel& ch, const PhasePlan& plan, const SlotSet& active,
                 const LinkBudget& budget) {
    if (plan.cols != static_cast<int>(ch.coeffs.size()))
        throw std::invalid_argument("plan column count does not match element count");
    double sum = 0.0;
    for (int k : active) {
        if (k < 0 || k >= plan.rows) throw std::invalid_argument("active slot index out of range");
        sum += std::log2(1.0 + snr(ch, {plan.row(k), static_cast<size_t>(plan.cols)}, budget));
    }
    return sum / plan.rows;
}

std::vector<cplx> conjugate_match(const CascadedChannel& ch) {
    std::vector<cplx> phases;
    phases.reserve(ch.coeffs.size());
    for (const cplx& c : ch.coeffs) {
        const double mag = std::abs(c);
        phases.push_back(mag > 0.0 ? std::conj(c) / mag : cplx{1.0, 0.0});
    }
    return phases;
}

}  // namespace irshare
