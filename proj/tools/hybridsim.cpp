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

// hybridsim command line: run sweeps, dump design traces, validate configs.

#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "hybridsim/admm_ofdm.hpp"
#include "hybridsim/admm_partial.hpp"
#include "hybridsim/digital_baseline.hpp"
#include "hybridsim/harness.hpp"

using namespace hybridsim;

namespace {

int cmd_run(const std::string &config, const std::string &out, int runs, long long seed, int workers)
{
    SweepSpec spec = load_sweep_spec(config);
    if (runs > 0)
        spec.runs = runs;
    if (seed >= 0)
        spec.base_seed = static_cast<std::uint64_t>(seed);
    spec.validate();

    const auto records = run_sweep(spec, out, workers);
    for (const auto &p : summarize(records))
        std::cout << "n_rf=" << p.n_rf << " snr_db=" << p.snr_db << " " << to_string(p.method)
                  << " mean=" << p.mean << " se=" << p.std_error << " n=" << p.count
                  << (p.errors ? " errors=" + std::to_string(p.errors) : "") << '\n';
    std::cout << "wrote " << records.size() << " rows to " << out << '\n';
    return 0;
}

// Precoder trace of run 0 at the first n_rf of the sweep.
int cmd_trace(const std::string &config, const std::string &out)
{
    const SweepSpec spec = load_sweep_spec(config);
    spec.validate();
    const int n_rf = spec.n_rf.front();
    const ChannelRealization ch =
        gen_wideband(spec.base_seed, {spec.n_tx_side, 0.5}, {spec.n_rx_side, 0.5}, spec.clusters, spec.subcarriers);

    AdmmConfig cfg = spec.admm;
    cfg.seed = design_seed(spec.admm.seed, spec.base_seed, 0, 0);
    std::vector<ComplexMatrix> targets;
    for (const auto &h : ch.matrices)
        targets.push_back(optimal_factors(h, spec.n_s).f_opt);

    HybridFactors f;
    switch (spec.scenario) {
    case Scenario::narrowband_full:
        f = design_fully_connected(targets.front(), n_rf, cfg, true);
        break;
    case Scenario::narrowband_partial:
        f = design_partially_connected(targets.front(), n_rf, cfg, true);
        break;
    case Scenario::wideband:
        f = design_wideband(WidebandTargets{targets}, n_rf, cfg, true);
        break;
    }

    std::ofstream os(out, std::ios::binary);
    if (!os)
        throw std::runtime_error("cannot open " + out);
    write_trace_csv(os, f.trace);
    std::cout << "iterations_used=" << f.iterations_used << " final_objective=" << f.final_objective << '\n';
    return 0;
}

int cmd_validate(const std::string &config)
{
    const SweepSpec spec = load_sweep_spec(config);
    spec.validate();
    std::cout << "ok: " << to_string(spec.scenario) << ", " << spec.n_rf.size() << " n_rf value(s) x "
              << spec.snr_db.size() << " SNR point(s) x " << spec.runs << " run(s)\n";
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Hybrid analog/digital precoder and combiner design for mmWave MIMO"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::string config;
    std::string out;
    int runs = 0;
    long long seed = -1;
    int workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

    auto *run = app.add_subcommand("run", "Run a Monte Carlo sweep and write CSV plus metadata");
    run->add_option("--config", config, "Sweep config (JSON)")->required()->check(CLI::ExistingFile);
    run->add_option("--out", out, "Output CSV path")->required();
    run->add_option("--runs", runs, "Override the number of runs")->check(CLI::PositiveNumber);
    run->add_option("--seed", seed, "Override base_seed")->check(CLI::NonNegativeNumber);
    run->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);

    auto *trace = app.add_subcommand("trace", "Dump the per-iteration trace of one precoder design");
    trace->add_option("--config", config, "Sweep config (JSON)")->required()->check(CLI::ExistingFile);
    trace->add_option("--out", out, "Output CSV path")->required();

    auto *validate = app.add_subcommand("validate", "Check a config without running it");
    validate->add_option("--config", config, "Sweep config (JSON)")->required()->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run)
            return cmd_run(config, out, runs, seed, workers);
        if (*trace)
            return cmd_trace(config, out);
        if (*validate)
            return cmd_validate(config);
    } catch (const std::exception &e) {
        std::cerr << "hybridsim: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
