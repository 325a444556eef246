// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "irshare/schemes.hpp"

namespace irshare {

// One Monte Carlo summary point, one CSV row.
struct SweepRecord {
    std::string axis_name;  // "elements" or "mnos"
    long long axis_value = 0;
    std::string scheme_id;
    double mean_min_rate = 0.0;  // bit/s/Hz
    double std_error = 0.0;
    int n_drops = 0;
    uint64_t seed = 0;
};

// Everything produced by a single drop, for dumps and reproduction.
struct DropResult {
    std::vector<Vec3> users;
    std::vector<CascadedChannel> channels;
    SchemeResult scheme;
};

// Worker count for parallel drops: IRSHARE_WORKERS if set and positive,
// otherwise the hardware concurrency (at least 1).
int worker_count();

// Runs drop `drop_index` of the (scenario, seed) experiment under one
// scheme. All randomness is drawn from streams derived from
// (seed, drop_index, purpose), so any execution order is equivalent.
DropResult run_drop(const Scenario& sc, const std::string& scheme_id,
                    const OptimizerOptions& opts, int drop_index, uint64_t seed,
                    const IterationObserver& observer = nullptr);

// Mean and standard error over per-drop minimum rates, reduced in drop
// order. axis defaults to ("elements", L^2); sweeps relabel it.
SweepRecord summarize(const Scenario& sc, const std::string& scheme_id, uint64_t seed,
                      const std::vector<double>& min_rates);

// Mean and standard error of the per-drop minimum rate over n_drops
// drops. Bit-identical output for fixed inputs regardless of workers.
SweepRecord monte_carlo(const Scenario& sc, const std::string& scheme_id, int n_drops,
                        uint64_t seed, const OptimizerOptions& opts = {}, int workers = 0);

// One record per (value, scheme) for all schemes; values are element
// counts L^2 and must be perfect squares. N stays at base.n_mnos.
std::vector<SweepRecord> sweep_elements(const Scenario& base, const std::vector<long long>& values,
                                        int n_drops, const OptimizerOptions& opts = {},
                                        int workers = 0);

// One record per (value, scheme); values are MNO counts, and the slot
// count K tracks N so sharing and time-division stay well posed.
std::vector<SweepRecord> sweep_mnos(const Scenario& base, const std::vector<long long>& values,
                                    int n_drops, const OptimizerOptions& opts = {},
                                    int workers = 0);

struct CheckReport {
    bool pass = false;
    std::string text;  // human-readable, one finding per line
};

// Central finite differences against the analytic ascent direction on
// 20 seeded instances (M=16, K=2, N=3). `perturbation` scales one
// gradient entry by (1 + perturbation) first, as a negative control.
CheckReport check_gradient(uint64_t seed, double perturbation = 0.0);

// Optimizer vs exhaustive Q=16 grid search on 20 seeded instances
// (M=4, K=1, N=2); passes when every instance reaches 95% of the
// enumerated optimum.
CheckReport check_oracle(uint64_t seed, const OptimizerOptions& opts = {});

// Serializers. CSV header:
//   axis_name,axis_value,scheme,mean_min_rate,std_error,n_drops,seed
// Doubles are written with 17 significant digits and round-trip exactly.
std::string records_to_csv(const std::vector<SweepRecord>& records);
std::string records_to_json(const std::vector<SweepRecord>& records);
// Line chart (SVG), one series per scheme in scheme_ids() order.
std::string records_to_svg(const std::vector<SweepRecord>& records);

// Plain-text channel dump, one block per drop (positions then
// interleaved re/im coefficient rows).
std::string dump_channels_text(const std::vector<DropResult>& drops);

std::string format_double(double x);  // %.17g

// Writes content to path; throws std::runtime_error when unwritable.
void write_file(const std::string& path, const std::string& content);

}  // namespace irshare
