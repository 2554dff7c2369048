// SPDX-License-Identifier: Apache-2.0
//
// hybridsim: ADMM hybrid precoding and combining for mmWave MIMO
// Copyright (C) 2026 The hybridsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef HYBRIDSIM_HARNESS_HPP
#define HYBRIDSIM_HARNESS_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "hybridsim/admm_full.hpp"
#include "hybridsim/channel.hpp"

namespace hybridsim {

inline constexpr const char *kVersion = "0.1.0";

enum class Scenario { narrowband_full, narrowband_partial, wideband };
enum class Method { digital_opt, hybrid_full, hybrid_partial, hybrid_wideband };

const char *to_string(Scenario s);
const char *to_string(Method m);
Scenario scenario_from_string(const std::string &s);

/// Declarative Monte Carlo sweep. Channel draw r uses seed base_seed + r.
struct SweepSpec {
    Scenario scenario = Scenario::narrowband_full;
    int n_s = 1;
    std::vector<int> n_rf{1};
    int n_tx_side = 1;
    int n_rx_side = 1;
    int subcarriers = 1; // K; must be 1 unless scenario is wideband
    std::vector<double> snr_db;
    int runs = 200;
    std::uint64_t base_seed = 0;
    AdmmConfig admm;
    int multistart = 1;
    ClusterParams clusters;

    int n_tx() const { return n_tx_side * n_tx_side; }
    int n_rx() const { return n_rx_side * n_rx_side; }
    Method hybrid_method() const;

    /// Throws std::invalid_argument describing the first violated invariant.
    void validate() const;
};

/// Parses the JSON config. Unknown keys anywhere are rejected.
SweepSpec sweep_spec_from_json(const nlohmann::json &j);
nlohmann::json to_json(const SweepSpec &spec);
SweepSpec load_sweep_spec(const std::filesystem::path &path);

struct ResultRecord {
    Scenario scenario = Scenario::narrowband_full;
    double snr_db = 0.0;
    int n_rf = 0;
    int run_index = 0;
    std::uint64_t seed = 0;
    Method method = Method::digital_opt;
    double spectral_efficiency = 0.0;
    double final_objective = 0.0;
    int iterations_used = 0;
    double wall_time_ms = 0.0;
    std::string status = "ok";

    bool ok() const { return status == "ok"; }
};

/// Precoder and combiner designs of one run, handed to an optional sink so
/// callers can inspect the factors behind the records.
struct RunDesigns {
    int run_index = 0;
    int n_rf = 0;
    const ChannelRealization *channel = nullptr;
    const HybridFactors *precoder = nullptr;
    const HybridFactors *combiner = nullptr;
};
using DesignSink = std::function<void(const RunDesigns &)>;

/// Initialization seed for start `start` of the precoder (role 0) or the
/// combiner (role 1) design in the run drawn with `run_seed`.
std::uint64_t design_seed(std::uint64_t admm_seed, std::uint64_t run_seed, int start, int role);

/// One channel draw evaluated at every SNR point: for each SNR, a
/// digital_opt row followed by the scenario's hybrid row.
std::vector<ResultRecord> run_single(const SweepSpec &spec, int n_rf, int run_index,
                                     const DesignSink &sink = {});

/// All (n_rf, snr, run) rows, ordered by n_rf list position, SNR list
/// position, run index and method. Runs are spread over `workers` threads;
/// the result does not depend on the worker count.
std::vector<ResultRecord> run_sweep_records(const SweepSpec &spec, int workers = 1,
                                            const DesignSink &sink = {});

struct PointSummary {
    int n_rf = 0;
    double snr_db = 0.0;
    Method method = Method::digital_opt;
    int count = 0;
    int errors = 0;
    double mean = 0.0;
    double std_error = 0.0;
};

std::vector<PointSummary> summarize(const std::vector<ResultRecord> &records);

void write_results_csv(std::ostream &out, const std::vector<ResultRecord> &records);
nlohmann::json sweep_metadata(const SweepSpec &spec, const std::vector<ResultRecord> &records);

/// Writes `out_csv` and `<out_csv>.meta.json`. The CSV is first written to
/// `<out_csv>.partial` and renamed on success, so an aborted sweep leaves
/// the .partial marker behind.
std::vector<ResultRecord> run_sweep(const SweepSpec &spec, const std::filesystem::path &out_csv,
                                    int workers = 1);

} // namespace hybridsim

#endif
