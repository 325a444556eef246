// SPDX-License-Identifier: Apache-2.0
#include "irshare/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "irshare/optimizer.hpp"

namespace irshare {

namespace {

rng::Key drop_key(uint64_t seed, int drop_index) {
    return rng::derive(rng::derive(rng::Key{seed}, "drop"), static_cast<uint64_t>(drop_index));
}

long long integer_sqrt(long long v) {
    const long long r = std::llround(std::sqrt(static_cast<double>(v)));
    return r * r == v ? r : -1;
}

// Scenario used by both validation checks: small surface, fast drops.
Scenario check_scenario(int n_mnos, int l_side, int n_slots) {
    Scenario sc;
    sc.n_mnos = n_mnos;
    sc.l_side = l_side;
    sc.n_slots = n_slots;
    return sc;
}

}  // namespace

int worker_count() {
    if (const char* env = std::getenv("IRSHARE_WORKERS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

DropResult run_drop(const Scenario& sc, const std::string& scheme_id,
                    const OptimizerOptions& opts, int drop_index, uint64_t seed,
                    const IterationObserver& observer) {
    sc.validate();
    const LinkBudget budget = derive_link_budget(sc);
    const std::vector<Vec3> elements = element_positions(sc);
    const rng::Key key = drop_key(seed, drop_index);

    DropResult out;
    out.users = place_users(sc, rng::derive(key, "users"));
    out.channels = draw_drop_channels(sc, budget, elements, out.users, rng::derive(key, "rician"));
    out.scheme = run_scheme(scheme_id, out.channels, sc, budget, opts,
                            rng::derive(key, "scheme"), observer);
    return out;
}

SweepRecord summarize(const Scenario& sc, const std::string& scheme_id, uint64_t seed,
                      const std::vector<double>& min_rates) {
    if (min_rates.empty()) throw std::invalid_argument("n_drops must be >= 1");
    const int n_drops = static_cast<int>(min_rates.size());
    double sum = 0.0;
    for (double v : min_rates) sum += v;
    const double mean = sum / n_drops;
    double se = 0.0;
    if (n_drops > 1) {
        double ss = 0.0;
        for (double v : min_rates) ss += (v - mean) * (v - mean);
        se = std::sqrt(ss / (n_drops - 1)) / std::sqrt(static_cast<double>(n_drops));
    }

    SweepRecord rec;
    rec.axis_name = "elements";
    rec.axis_value = sc.n_elements();
    rec.scheme_id = scheme_id;
    rec.mean_min_rate = mean;
    rec.std_error = se;
    rec.n_drops = n_drops;
    rec.seed = seed;
    return rec;
}

SweepRecord monte_carlo(const Scenario& sc, const std::string& scheme_id, int n_drops,
                        uint64_t seed, const OptimizerOptions& opts, int workers) {
    if (n_drops < 1) throw std::invalid_argument("n_drops must be >= 1");
    sc.validate();
    opts.validate();
    if (std::find(scheme_ids().begin(), scheme_ids().end(), scheme_id) == scheme_ids().end())
        throw std::invalid_argument("unknown scheme id: " + scheme_id);

    if (workers <= 0) workers = worker_count();
    workers = std::min(workers, n_drops);

    std::vector<double> mins(static_cast<size_t>(n_drops), 0.0);
    std::atomic<int> next{0};
    const auto work = [&] {
        for (int i = next.fetch_add(1); i < n_drops; i = next.fetch_add(1))
            mins[static_cast<size_t>(i)] =
                run_drop(sc, scheme_id, opts, i, seed).scheme.min_rate;
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (std::thread& t : pool) t.join();
    }

    // Reduction happens in drop order so the result is schedule-independent.
    return summarize(sc, scheme_id, seed, mins);
}

std::vector<SweepRecord> sweep_elements(const Scenario& base, const std::vector<long long>& values,
                                        int n_drops, const OptimizerOptions& opts, int workers) {
    if (values.empty()) throw std::invalid_argument("sweep requires at least one axis value");
    std::vector<SweepRecord> records;
    for (long long v : values) {
        const long long side = integer_sqrt(v);
        if (side < 1)
            throw std::invalid_argument("element count " + std::to_string(v) +
                                        " is not a perfect square");
        Scenario sc = base;
        sc.l_side = static_cast<int>(side);
        for (const std::string& scheme : scheme_ids()) {
            SweepRecord rec = monte_carlo(sc, scheme, n_drops, base.seed, opts, workers);
            rec.axis_name = "elements";
            rec.axis_value = v;
            records.push_back(std::move(rec));
        }
    }
    return records;
}

std::vector<SweepRecord> sweep_mnos(const Scenario& base, const std::vector<long long>& values,
                                    int n_drops, const OptimizerOptions& opts, int workers) {
    if (values.empty()) throw std::invalid_argument("sweep requires at least one axis value");
    std::vector<SweepRecord> records;
    for (long long v : values) {
        if (v < 1 || v > base.n_elements())
            throw std::invalid_argument("MNO count " + std::to_string(v) +
                                        " outside {1..L^2}");
        Scenario sc = base;
        sc.n_mnos = static_cast<int>(v);
        sc.n_slots = static_cast<int>(v);  // K tracks N
        for (const std::string& scheme : scheme_ids()) {
            SweepRecord rec = monte_carlo(sc, scheme, n_drops, base.seed, opts, workers);
            rec.axis_name = "mnos";
            rec.axis_value = v;
            records.push_back(std::move(rec));
        }
    }
    return records;
}

CheckReport check_gradient(uint64_t seed, double perturbation) {
    const Scenario sc = check_scenario(3, 4, 2);  // N=3, M=16, K=2
    const LinkBudget budget = derive_link_budget(sc);
    const std::vector<Vec3> elements = element_positions(sc);
    const SlotAllocation activity = full_activity(sc.n_mnos, sc.n_slots);
    const double h = 1e-6;

    double worst = 0.0;
    for (int inst = 0; inst < 20; ++inst) {
        const rng::Key key = drop_key(seed, inst);
        const std::vector<Vec3> users = place_users(sc, rng::derive(key, "users"));
        const std::vector<CascadedChannel> channels =
            draw_drop_channels(sc, budget, elements, users, rng::derive(key, "rician"));
        const PhasePlan plan =
            random_unit_plan(sc.n_slots, sc.n_elements(), rng::derive(key, "plan"));

        for (int n = 0; n < sc.n_mnos; ++n) {
            CMat g = ascent_direction(channels, plan, n, activity, budget);
            if (perturbation != 0.0) g.v[0] *= (1.0 + perturbation);

            double max_abs_err = 0.0;
            double max_fd = 0.0;
            for (int k = 0; k < plan.rows; ++k) {
                for (int l = 0; l < plan.cols; ++l) {
                    // derivative of the rate in the entry's phase angle
                    const cplx e = plan(k, l);
                    const double analytic =
                        2.0 * (std::conj(g(k, l)) * cplx{0.0, 1.0} * e).real();
                    PhasePlan bumped = plan;
                    bumped(k, l) = e * std::polar(1.0, h);
                    const double up =
                        user_rate(channels[static_cast<size_t>(n)], bumped,
                                  activity[static_cast<size_t>(n)], budget);
                    bumped(k, l) = e * std::polar(1.0, -h);
                    const double down =
                        user_rate(channels[static_cast<size_t>(n)], bumped,
                                  activity[static_cast<size_t>(n)], budget);
                    const double fd = (up - down) / (2.0 * h);
                    max_abs_err = std::max(max_abs_err, std::abs(analytic - fd));
                    max_fd = std::max(max_fd, std::abs(fd));
                }
            }
            worst = std::max(worst, max_abs_err / std::max(max_fd, 1e-300));
        }
    }

    CheckReport rep;
    rep.pass = worst < 1e-4;
    std::ostringstream os;
    os << "gradient check: 20 instances, M=16 K=2 N=3, central differences h=1e-06\n"
       << "max relative error " << format_double(worst) << " (tolerance 1e-04)\n"
       << (rep.pass ? "PASS" : "FAIL") << "\n";
    rep.text = os.str();
    return rep;
}

CheckReport check_oracle(uint64_t seed, const OptimizerOptions& opts) {
    const Scenario sc = check_scenario(2, 2, 1);  // N=2, M=4, K=1
    const LinkBudget budget = derive_link_budget(sc);
    const std::vector<Vec3> elements = element_positions(sc);
    const SlotAllocation activity = full_activity(sc.n_mnos, sc.n_slots);
    const int q_levels = 16;

    int passed = 0;
    double worst_ratio = 1e300;
    std::ostringstream os;
    os << "oracle check: 20 instances, M=4 K=1 N=2, grid Q=" << q_levels << "\n";
    for (int inst = 0; inst < 20; ++inst) {
        const rng::Key key = drop_key(seed, inst);
        const std::vector<Vec3> users = place_users(sc, rng::derive(key, "users"));
        const std::vector<CascadedChannel> channels =
            draw_drop_channels(sc, budget, elements, users, rng::derive(key, "rician"));

        const double oracle =
            brute_force_maxmin(channels, sc.n_slots, activity, budget, q_levels).second;
        const double reached =
            optimize_maxmin(channels, sc.n_slots, activity, budget, opts,
                            rng::derive(key, "scheme"))
                .min_rate;
        const double ratio = oracle > 0.0 ? reached / oracle : 1.0;
        worst_ratio = std::min(worst_ratio, ratio);
        const bool ok = reached >= 0.95 * oracle;
        passed += ok ? 1 : 0;
        os << "instance " << inst << ": optimizer " << format_double(reached) << " oracle "
           << format_double(oracle) << " ratio " << format_double(ratio)
           << (ok ? "" : "  <-- below 0.95") << "\n";
    }

    CheckReport rep;
    rep.pass = passed == 20;
    os << passed << "/20 instances at or above 0.95 of the enumerated optimum (worst ratio "
       << format_double(worst_ratio) << ")\n"
       << (rep.pass ? "PASS" : "FAIL") << "\n";
    rep.text = os.str();
    return rep;
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string records_to_csv(const std::vector<SweepRecord>& records) {
    std::ostringstream os;
    os << "axis_name,axis_value,scheme,mean_min_rate,std_error,n_drops,seed\n";
    for (const SweepRecord& r : records) {
        os << r.axis_name << ',' << r.axis_value << ',' << r.scheme_id << ','
           << format_double(r.mean_min_rate) << ',' << format_double(r.std_error) << ','
           << r.n_drops << ',' << r.seed << "\n";
    }
    return os.str();
}

std::string records_to_json(const std::vector<SweepRecord>& records) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const SweepRecord& r : records) {
        nlohmann::ordered_json row;
        row["axis_name"] = r.axis_name;
        row["axis_value"] = r.axis_value;
        row["scheme"] = r.scheme_id;
        row["mean_min_rate"] = r.mean_min_rate;
        row["std_error"] = r.std_error;
        row["n_drops"] = r.n_drops;
        row["seed"] = r.seed;
        arr.push_back(std::move(row));
    }
    return arr.dump(2) + "\n";
}

std::string records_to_svg(const std::vector<SweepRecord>& records) {
    if (records.empty()) throw std::invalid_argument("no records to plot");
    const double width = 720.0, height = 480.0;
    const double ml = 70.0, mr = 180.0, mt = 30.0, mb = 50.0;
    const double pw = width - ml - mr, ph = height - mt - mb;

    double x_lo = 1e300, x_hi = -1e300, y_hi = 0.0;
    for (const SweepRecord& r : records) {
        x_lo = std::min(x_lo, static_cast<double>(r.axis_value));
        x_hi = std::max(x_hi, static_cast<double>(r.axis_value));
        y_hi = std::max(y_hi, r.mean_min_rate + 2.0 * r.std_error);
    }
    if (x_hi <= x_lo) {
        x_lo -= 1.0;
        x_hi += 1.0;
    }
    if (y_hi <= 0.0) y_hi = 1.0;
    y_hi *= 1.05;

    const auto px = [&](double v) { return ml + (v - x_lo) / (x_hi - x_lo) * pw; };
    const auto py = [&](double v) { return mt + ph - v / y_hi * ph; };
    const auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.2f", v);
        return std::string(buf);
    };

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#7f7f7f", "#9467bd"};
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
       << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // axes and ticks
    os << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw << "\" y2=\""
       << mt + ph << "\" stroke=\"black\"/>\n"
       << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << mt + ph
       << "\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        const double yv = y_hi * t / 4.0;
        os << "<line x1=\"" << ml - 4 << "\" y1=\"" << py(yv) << "\" x2=\"" << ml << "\" y2=\""
           << py(yv) << "\" stroke=\"black\"/>\n"
           << "<text x=\"" << ml - 8 << "\" y=\"" << py(yv) + 4
           << "\" text-anchor=\"end\" font-size=\"12\">" << num(yv) << "</text>\n";
    }

    std::vector<long long> xs;
    for (const SweepRecord& r : records)
        if (std::find(xs.begin(), xs.end(), r.axis_value) == xs.end()) xs.push_back(r.axis_value);
    std::sort(xs.begin(), xs.end());
    for (long long v : xs) {
        os << "<line x1=\"" << px(static_cast<double>(v)) << "\" y1=\"" << mt + ph << "\" x2=\""
           << px(static_cast<double>(v)) << "\" y2=\"" << mt + ph + 4
           << "\" stroke=\"black\"/>\n"
           << "<text x=\"" << px(static_cast<double>(v)) << "\" y=\"" << mt + ph + 18
           << "\" text-anchor=\"middle\" font-size=\"12\">" << v << "</text>\n";
    }
    os << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 12
       << "\" text-anchor=\"middle\" font-size=\"13\">" << records.front().axis_name
       << "</text>\n"
       << "<text x=\"16\" y=\"" << mt + ph / 2
       << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 " << mt + ph / 2
       << ")\">min rate (bit/s/Hz)</text>\n";

    // one series per scheme, fixed order
    int color = 0;
    for (const std::string& scheme : scheme_ids()) {
        std::vector<const SweepRecord*> series;
        for (const SweepRecord& r : records)
            if (r.scheme_id == scheme) series.push_back(&r);
        if (series.empty()) {
            ++color;
            continue;
        }
        std::sort(series.begin(), series.end(),
                  [](const SweepRecord* a, const SweepRecord* b) {
                      return a->axis_value < b->axis_value;
                  });
        const char* c = palette[color % 5];
        os << "<polyline fill=\"none\" stroke=\"" << c << "\" stroke-width=\"2\" points=\"";
        for (const SweepRecord* r : series)
            os << px(static_cast<double>(r->axis_value)) << "," << py(r->mean_min_rate) << " ";
        os << "\"/>\n";
        for (const SweepRecord* r : series) {
            const double x = px(static_cast<double>(r->axis_value));
            os << "<circle cx=\"" << x << "\" cy=\"" << py(r->mean_min_rate)
               << "\" r=\"3\" fill=\"" << c << "\"/>\n";
            if (r->std_error > 0.0)
                os << "<line x1=\"" << x << "\" y1=\"" << py(r->mean_min_rate - r->std_error)
                   << "\" x2=\"" << x << "\" y2=\"" << py(r->mean_min_rate + r->std_error)
                   << "\" stroke=\"" << c << "\"/>\n";
        }
        const double ly = mt + 16.0 * (color + 1);
        os << "<line x1=\"" << ml + pw + 12 << "\" y1=\"" << ly << "\" x2=\"" << ml + pw + 34
           << "\" y2=\"" << ly << "\" stroke=\"" << c << "\" stroke-width=\"2\"/>\n"
           << "<text x=\"" << ml + pw + 40 << "\" y=\"" << ly + 4 << "\" font-size=\"12\">"
           << scheme << "</text>\n";
        ++color;
    }
    os << "</svg>\n";
    return os.str();
}

std::string dump_channels_text(const std::vector<DropResult>& drops) {
    std::ostringstream os;
    os << "# channel dump v1\n";
    for (size_t i = 0; i < drops.size(); ++i) {
        const DropResult& d = drops[i];
        os << "drop " << i << "\n";
        os << "users " << d.users.size() << "\n";
        for (size_t n = 0; n < d.users.size(); ++n)
            os << "user " << n << " " << format_double(d.users[n].x) << " "
               << format_double(d.users[n].y) << " " << format_double(d.users[n].z) << "\n";
        const size_t m = d.channels.empty() ? 0 : d.channels.front().coeffs.size();
        os << "channels " << d.channels.size() << " " << m << "\n";
        for (size_t n = 0; n < d.channels.size(); ++n) {
            os << "channel " << n;
            for (const cplx& z : d.channels[n].coeffs)
                os << " " << format_double(z.real()) << " " << format_double(z.imag());
            os << "\n";
        }
    }
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace irshare
