// SPDX-License-Identifier: Apache-2.0
#include "irshare/optimizer.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace irshare {

namespace {

double frob_norm(const CMat& a) {
    double s = 0.0;
    for (const cplx& z : a.v) s += std::norm(z);
    return std::sqrt(s);
}

// Re<a, b> with the conjugate-linear slot on a: sum of Re(conj(a_i) b_i).
double re_inner(const CMat& a, const CMat& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.v.size(); ++i)
        s += a.v[i].real() * b.v[i].real() + a.v[i].imag() * b.v[i].imag();
    return s;
}

CMat add_scaled(const CMat& a, const CMat& d, double step) {
    CMat out = a;
    for (size_t i = 0; i < out.v.size(); ++i) out.v[i] += step * d.v[i];
    return out;
}

// Gradient of one user's rate; rows outside its active slots stay zero.
CMat user_gradient(const CascadedChannel& ch, const PhasePlan& plan, const SlotSet& active,
                   const LinkBudget& budget) {
    CMat g(plan.rows, plan.cols);
    const double rho = budget.snr_scale();
    const double scale = 1.0 / (plan.rows * std::numbers::ln2);
    for (int k : active) {
        cplx s{0.0, 0.0};
        const cplx* row = plan.row(k);
        for (int l = 0; l < plan.cols; ++l) s += ch.coeffs[static_cast<size_t>(l)] * row[l];
        const double coef = scale * rho / (1.0 + rho * std::norm(s));
        cplx* grow = g.row(k);
        for (int l = 0; l < plan.cols; ++l)
            grow[l] = coef * s * std::conj(ch.coeffs[static_cast<size_t>(l)]);
    }
    return g;
}

CMat softmin_direction(const std::vector<CascadedChannel>& channels, const PhasePlan& plan,
                       const SlotAllocation& activity, const LinkBudget& budget,
                       double temperature) {
    std::vector<double> rates(channels.size());
    double r_min = 0.0;
    for (size_t n = 0; n < channels.size(); ++n) {
        rates[n] = user_rate(channels[n], plan, activity[n], budget);
        if (n == 0 || rates[n] < r_min) r_min = rates[n];
    }
    double total = 0.0;
    std::vector<double> w(channels.size());
    for (size_t n = 0; n < channels.size(); ++n) {
        w[n] = std::exp(-(rates[n] - r_min) / temperature);
        total += w[n];
    }
    CMat d(plan.rows, plan.cols);
    for (size_t n = 0; n < channels.size(); ++n) {
        const CMat g = user_gradient(channels[n], plan, activity[n], budget);
        const double wn = w[n] / total;
        for (size_t i = 0; i < d.v.size(); ++i) d.v[i] += wn * g.v[i];
    }
    return d;
}

}  // namespace

void OptimizerOptions::validate() const {
    if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
    if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
    if (!(initial_step > 0.0)) throw std::invalid_argument("initial_step must be positive");
    if (!(armijo_shrink > 0.0 && armijo_shrink < 1.0))
        throw std::invalid_argument("armijo_shrink must lie in (0, 1)");
    if (!(armijo_slope > 0.0 && armijo_slope < 1.0))
        throw std::invalid_argument("armijo_slope must lie in (0, 1)");
    if (!(convergence_tol >= 0.0)) throw std::invalid_argument("convergence_tol must be >= 0");
    if (convergence_window < 1) throw std::invalid_argument("convergence_window must be >= 1");
    if (smoothing_mode == SmoothingMode::softmin && !(softmin_temperature > 0.0))
        throw std::invalid_argument("softmin_temperature must be positive");
}

std::pair<double, int> evaluate_min_rate(const std::vector<CascadedChannel>& channels,
                                         const PhasePlan& plan, const SlotAllocation& activity,
                                         const LinkBudget& budget) {
    if (channels.empty()) throw std::invalid_argument("need at least one user");
    if (activity.size() != channels.size())
        throw std::invalid_argument("one slot set per user required");
    double best = 0.0;
    int who = 0;
    for (size_t n = 0; n < channels.size(); ++n) {
        const double r = user_rate(channels[n], plan, activity[n], budget);
        if (n == 0 || r < best) {
            best = r;
            who = static_cast<int>(n);
        }
    }
    return {best, who};
}

CMat ascent_direction(const std::vector<CascadedChannel>& channels, const PhasePlan& plan,
                      int user, const SlotAllocation& activity, const LinkBudget& budget) {
    if (user < 0 || user >= static_cast<int>(channels.size()))
        throw std::invalid_argument("user index out of range");
    return user_gradient(channels[static_cast<size_t>(user)], plan,
                         activity[static_cast<size_t>(user)], budget);
}

PhasePlan project_unit_modulus(const PhasePlan& plan) {
    PhasePlan out = plan;
    for (cplx& z : out.v) {
        const double mag = std::abs(z);
        if (mag <= 1e-12)
            throw std::domain_error("projection undefined for a zero-modulus entry");
        z /= mag;
    }
    return out;
}

PhasePlan random_unit_plan(int n_slots, int n_elements, rng::Key stream) {
    rng::Stream s(stream);
    PhasePlan plan(n_slots, n_elements);
    for (cplx& z : plan.v) z = std::polar(1.0, s.angle());
    return plan;
}

OptimizeOutcome optimize_maxmin(const std::vector<CascadedChannel>& channels, int n_slots,
                                const SlotAllocation& activity, const LinkBudget& budget,
                                const OptimizerOptions& opts, rng::Key stream,
                                const IterationObserver& observer) {
    opts.validate();
    if (channels.empty()) throw std::invalid_argument("need at least one user");
    const int m = static_cast<int>(channels.front().coeffs.size());
    const rng::Key init_root = rng::derive(stream, "init");

    OptimizeOutcome best;
    best.min_rate = -1.0;
    for (int r = 0; r < opts.restarts; ++r) {
        PhasePlan plan =
            random_unit_plan(n_slots, m, rng::derive(init_root, static_cast<uint64_t>(r)));
        auto [f, worst] = evaluate_min_rate(channels, plan, activity, budget);

        // Objective trail for the stop rule: improvement across the last
        // convergence_window iterations below tol ends the run.
        std::vector<double> trail{f};
        for (int iter = 1; iter <= opts.max_iters; ++iter) {
            const CMat dir = opts.smoothing_mode == SmoothingMode::softmin
                                 ? softmin_direction(channels, plan, activity, budget,
                                                     opts.softmin_temperature)
                                 : ascent_direction(channels, plan, worst, activity, budget);
            const double gnorm = frob_norm(dir);
            double used_step = 0.0;
            if (gnorm > 0.0) {
                double step = opts.initial_step / gnorm;
                for (int halvings = 0; halvings <= 60; ++halvings, step *= opts.armijo_shrink) {
                    const PhasePlan cand = project_unit_modulus(add_scaled(plan, dir, step));
                    const auto [fc, wc] = evaluate_min_rate(channels, cand, activity, budget);
                    // Armijo on the projected move: predicted first-order
                    // gain is 2 Re<dir, cand - plan>, clamped so accepted
                    // steps can never lower the objective.
                    CMat delta = cand;
                    for (size_t i = 0; i < delta.v.size(); ++i) delta.v[i] -= plan.v[i];
                    const double predicted = std::max(2.0 * re_inner(dir, delta), 0.0);
                    if (fc >= f + opts.armijo_slope * predicted) {
                        plan = cand;
                        f = fc;
                        worst = wc;
                        used_step = step;
                        break;
                    }
                }
            }
            ++best.total_iters;
            if (observer) observer({r, iter, f, worst, used_step}, plan);
            trail.push_back(f);
            if (static_cast<int>(trail.size()) > opts.convergence_window + 1)
                trail.erase(trail.begin());
            if (static_cast<int>(trail.size()) == opts.convergence_window + 1) {
                const double base = std::max(trail.front(), 1e-300);
                if ((f - trail.front()) / base < opts.convergence_tol) break;
            }
        }
        if (f > best.min_rate) {
            best.plan = plan;
            best.min_rate = f;
            best.best_restart = r;
        }
    }
    return best;
}

std::pair<PhasePlan, double> brute_force_maxmin(const std::vector<CascadedChannel>& channels,
                                                int n_slots, const SlotAllocation& activity,
                                                const LinkBudget& budget, int q_levels) {
    if (q_levels < 2) throw std::invalid_argument("q_levels must be >= 2");
    if (channels.empty()) throw std::invalid_argument("need at least one user");
    const int m = static_cast<int>(channels.front().coeffs.size());
    const int digits = n_slots * m;

    constexpr uint64_t kGuard = uint64_t{1} << 26;
    uint64_t total = 1;
    for (int i = 0; i < digits; ++i) {
        if (total > kGuard / static_cast<uint64_t>(q_levels))
            throw std::invalid_argument("grid search needs more than 2^26 plans (" +
                                        std::to_string(q_levels) + "^" + std::to_string(digits) +
                                        ")");
        total *= static_cast<uint64_t>(q_levels);
    }

    std::vector<cplx> grid(static_cast<size_t>(q_levels));
    for (int q = 0; q < q_levels; ++q)
        grid[static_cast<size_t>(q)] = std::polar(1.0, 2.0 * std::numbers::pi * q / q_levels);

    std::vector<int> digit(static_cast<size_t>(digits), 0);
    PhasePlan plan(n_slots, m);
    for (cplx& z : plan.v) z = grid[0];

    PhasePlan best_plan = plan;
    double best = -1.0;
    for (uint64_t it = 0;; ++it) {
        const double f = evaluate_min_rate(channels, plan, activity, budget).first;
        if (f > best) {
            best = f;
            best_plan = plan;
        }
        if (it + 1 == total) break;
        for (int i = 0; i < digits; ++i) {
            digit[static_cast<size_t>(i)] = (digit[static_cast<size_t>(i)] + 1) % q_levels;
            plan.v[static_cast<size_t>(i)] = grid[static_cast<size_t>(digit[static_cast<size_t>(i)])];
            if (digit[static_cast<size_t>(i)] != 0) break;
        }
    }
    return {best_plan, best};
}

}  // namespace irshare
