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

#include "hybridsim/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <set>
#include <thread>
#include <tuple>

#include "hybridsim/admm_ofdm.hpp"
#include "hybridsim/admm_partial.hpp"
#include "hybridsim/digital_baseline.hpp"

namespace hybridsim {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

void reject_unknown_keys(const nlohmann::json &j, const std::set<std::string> &known, const std::string &where)
{
    if (!j.is_object())
        throw std::invalid_argument(where + ": expected a JSON object");
    for (const auto &item : j.items())
        if (!known.count(item.key()))
            throw std::invalid_argument(where + ": unknown key \"" + item.key() + "\"");
}

// Designs one side of the link with `multistart` random starts and keeps the
// lowest final objective.
HybridFactors design_side(const SweepSpec &spec, const std::vector<ComplexMatrix> &targets, int n_rf,
                          std::uint64_t run_seed, int role)
{
    const bool precoder = role == 0;
    HybridFactors best;
    bool have = false;
    for (int s = 0; s < spec.multistart; ++s) {
        AdmmConfig cfg = spec.admm;
        cfg.seed = design_seed(spec.admm.seed, run_seed, s, role);
        HybridFactors f;
        switch (spec.scenario) {
        case Scenario::narrowband_full:
            f = design_fully_connected(targets.front(), n_rf, cfg, precoder);
            break;
        case Scenario::narrowband_partial:
            f = design_partially_connected(targets.front(), n_rf, cfg, precoder);
            break;
        case Scenario::wideband:
            f = design_wideband(WidebandTargets{targets}, n_rf, cfg, precoder);
            break;
        }
        if (!have || f.final_objective < best.final_objective) {
            best = std::move(f);
            have = true;
        }
    }
    return best;
}

double mean_rate(const ChannelRealization &ch, const std::vector<ComplexMatrix> &f,
                 const std::vector<ComplexMatrix> &w, double snr, int n_s)
{
    double acc = 0.0;
    for (std::size_t k = 0; k < ch.matrices.size(); ++k)
        acc += spectral_efficiency(ch.matrices[k], f[k], w[k], snr, n_s);
    return acc / static_cast<double>(ch.matrices.size());
}

std::string format_double(double v)
{
    if (std::isnan(v))
        return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_escape(const std::string &s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c == '\n' ? ' ' : c;
    }
    return out + "\"";
}

} // namespace

const char *to_string(Scenario s)
{
    switch (s) {
    case Scenario::narrowband_full:
        return "narrowband_full";
    case Scenario::narrowband_partial:
        return "narrowband_partial";
    case Scenario::wideband:
        return "wideband";
    }
    return "?";
}

const char *to_string(Method m)
{
    switch (m) {
    case Method::digital_opt:
        return "digital_opt";
    case Method::hybrid_full:
        return "hybrid_full";
    case Method::hybrid_partial:
        return "hybrid_partial";
    case Method::hybrid_wideband:
        return "hybrid_wideband";
    }
    return "?";
}

Scenario scenario_from_string(const std::string &s)
{
    for (Scenario v : {Scenario::narrowband_full, Scenario::narrowband_partial, Scenario::wideband})
        if (s == to_string(v))
            return v;
    throw std::invalid_argument("unknown scenario \"" + s + "\"");
}

Method SweepSpec::hybrid_method() const
{
    switch (scenario) {
    case Scenario::narrowband_full:
        return Method::hybrid_full;
    case Scenario::narrowband_partial:
        return Method::hybrid_partial;
    case Scenario::wideband:
        return Method::hybrid_wideband;
    }
    return Method::hybrid_full;
}

void SweepSpec::validate() const
{
    if (snr_db.empty())
        throw std::invalid_argument("empty sweep axis: snr_db_list");
    if (n_rf.empty())
        throw std::invalid_argument("empty sweep axis: n_rf");
    if (runs < 1)
        throw std::invalid_argument("runs must be >= 1");
    if (multistart < 1)
        throw std::invalid_argument("multistart must be >= 1");
    if (n_tx_side < 1 || n_rx_side < 1)
        throw std::invalid_argument("array sides must be >= 1");
    if (subcarriers < 1)
        throw std::invalid_argument("K must be >= 1");
    if (scenario != Scenario::wideband && subcarriers != 1)
        throw std::invalid_argument("K > 1 requires the wideband scenario");
    if (n_s < 1 || n_s > std::min(n_tx(), n_rx()))
        throw std::invalid_argument("n_s must lie in [1, min(N_tx, N_rx)]");
    for (double snr : snr_db)
        if (!std::isfinite(snr))
            throw std::invalid_argument("snr_db_list entries must be finite");
    for (int r : n_rf) {
        if (r < n_s || r > std::min(n_tx(), n_rx()))
            throw std::invalid_argument("n_rf=" + std::to_string(r) + " outside [n_s, min(N_tx, N_rx)]");
        if (scenario == Scenario::narrowband_partial && (n_tx() % r != 0 || n_rx() % r != 0))
            throw std::invalid_argument("partially-connected arrays need N_tx and N_rx divisible by n_rf=" +
                                        std::to_string(r));
    }
    admm.validate();
    clusters.validate();
}

SweepSpec sweep_spec_from_json(const nlohmann::json &j)
{
    reject_unknown_keys(j,
                        {"scenario", "n_s", "n_rf", "n_tx_side", "n_rx_side", "K", "snr_db_list", "runs",
                         "base_seed", "admm", "multistart", "clusters"},
                        "config");
    SweepSpec s;
    s.scenario = scenario_from_string(j.at("scenario").get<std::string>());
    s.n_s = j.at("n_s").get<int>();
    const auto &rf = j.at("n_rf");
    s.n_rf = rf.is_array() ? rf.get<std::vector<int>>() : std::vector<int>{rf.get<int>()};
    s.n_tx_side = j.at("n_tx_side").get<int>();
    s.n_rx_side = j.at("n_rx_side").get<int>();
    s.subcarriers = j.value("K", 1);
    s.snr_db = j.at("snr_db_list").get<std::vector<double>>();
    s.runs = j.value("runs", 200);
    s.base_seed = j.value("base_seed", std::uint64_t{0});
    s.multistart = j.value("multistart", 1);
    if (j.contains("admm")) {
        const auto &a = j.at("admm");
        reject_unknown_keys(a, {"rho", "max_iters", "tau", "phase_bits", "seed"}, "config.admm");
        s.admm.rho = a.value("rho", s.admm.rho);
        s.admm.max_iters = a.value("max_iters", s.admm.max_iters);
        s.admm.tau = a.value("tau", s.admm.tau);
        if (a.contains("phase_bits") && !a.at("phase_bits").is_null())
            s.admm.phase_bits = a.at("phase_bits").get<int>();
        s.admm.seed = a.value("seed", s.admm.seed);
    }
    if (j.contains("clusters")) {
        const auto &c = j.at("clusters");
        reject_unknown_keys(c, {"n_clusters", "n_rays", "angular_spread_deg"}, "config.clusters");
        s.clusters.n_clusters = c.value("n_clusters", s.clusters.n_clusters);
        s.clusters.n_rays = c.value("n_rays", s.clusters.n_rays);
        if (c.contains("angular_spread_deg"))
            s.clusters.angular_spread_rad = c.at("angular_spread_deg").get<double>() * std::numbers::pi / 180.0;
    }
    return s;
}

nlohmann::json to_json(const SweepSpec &s)
{
    nlohmann::json admm = {{"rho", s.admm.rho},
                           {"max_iters", s.admm.max_iters},
                           {"tau", s.admm.tau},
                           {"seed", s.admm.seed}};
    admm["phase_bits"] = s.admm.phase_bits ? nlohmann::json(*s.admm.phase_bits) : nlohmann::json(nullptr);
    return {{"scenario", to_string(s.scenario)},
            {"n_s", s.n_s},
            {"n_rf", s.n_rf},
            {"n_tx_side", s.n_tx_side},
            {"n_rx_side", s.n_rx_side},
            {"K", s.subcarriers},
            {"snr_db_list", s.snr_db},
            {"runs", s.runs},
            {"base_seed", s.base_seed},
            {"admm", admm},
            {"multistart", s.multistart},
            {"clusters",
             {{"n_clusters", s.clusters.n_clusters},
              {"n_rays", s.clusters.n_rays},
              {"angular_spread_deg", s.clusters.angular_spread_rad * 180.0 / std::numbers::pi}}}};
}

SweepSpec load_sweep_spec(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config " + path.string());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error &e) {
        throw std::invalid_argument("config " + path.string() + ": " + e.what());
    }
    return sweep_spec_from_json(j);
}

std::uint64_t design_seed(std::uint64_t admm_seed, std::uint64_t run_seed, int start, int role)
{
    return mix_seed(admm_seed, mix_seed(run_seed, static_cast<std::uint64_t>(2 * start + role)));
}

std::vector<ResultRecord> run_single(const SweepSpec &spec, int n_rf, int run_index, const DesignSink &sink)
{
    spec.validate();
    const std::uint64_t seed = spec.base_seed + static_cast<std::uint64_t>(run_index);
    const ArrayGeometry tx{spec.n_tx_side, 0.5};
    const ArrayGeometry rx{spec.n_rx_side, 0.5};
    const ChannelRealization ch = gen_wideband(seed, tx, rx, spec.clusters, spec.subcarriers);

    const auto t_digital = Clock::now();
    std::vector<ComplexMatrix> f_opt;
    std::vector<ComplexMatrix> w_opt;
    for (const auto &h : ch.matrices) {
        OptimalFactors opt = optimal_factors(h, spec.n_s);
        f_opt.push_back(std::move(opt.f_opt));
        w_opt.push_back(std::move(opt.w_opt));
    }
    const double digital_ms = elapsed_ms(t_digital);

    std::vector<ComplexMatrix> f_hybrid;
    std::vector<ComplexMatrix> w_hybrid;
    HybridFactors precoder;
    HybridFactors combiner;
    std::string failure;
    const auto t_hybrid = Clock::now();
    try {
        precoder = design_side(spec, f_opt, n_rf, seed, 0);
        combiner = design_side(spec, w_opt, n_rf, seed, 1);
        for (std::size_t k = 0; k < ch.matrices.size(); ++k) {
            f_hybrid.push_back(precoder.composite(k));
            w_hybrid.push_back(combiner.composite(k));
        }
    } catch (const std::exception &e) {
        failure = std::string("error: ") + e.what();
    }
    const double hybrid_ms = elapsed_ms(t_hybrid);

    if (failure.empty() && sink)
        sink(RunDesigns{run_index, n_rf, &ch, &precoder, &combiner});

    std::vector<ResultRecord> out;
    for (double snr_db : spec.snr_db) {
        const double snr = db_to_linear(snr_db);

        ResultRecord digital{spec.scenario, snr_db, n_rf, run_index, seed, Method::digital_opt,
                             0.0, 0.0, 0, digital_ms, "ok"};
        try {
            digital.spectral_efficiency = mean_rate(ch, f_opt, w_opt, snr, spec.n_s);
        } catch (const std::exception &e) {
            digital.spectral_efficiency = std::numeric_limits<double>::quiet_NaN();
            digital.status = std::string("error: ") + e.what();
        }
        out.push_back(digital);

        ResultRecord hybrid{spec.scenario, snr_db, n_rf, run_index, seed, spec.hybrid_method(),
                            std::numeric_limits<double>::quiet_NaN(),
                            std::numeric_limits<double>::quiet_NaN(), 0, hybrid_ms, failure.empty() ? "ok" : failure};
        if (failure.empty()) {
            hybrid.final_objective = precoder.final_objective;
            hybrid.iterations_used = precoder.iterations_used;
            try {
                hybrid.spectral_efficiency = mean_rate(ch, f_hybrid, w_hybrid, snr, spec.n_s);
            } catch (const std::exception &e) {
                hybrid.status = std::string("error: ") + e.what();
            }
        }
        out.push_back(hybrid);
    }
    return out;
}

std::vector<ResultRecord> run_sweep_records(const SweepSpec &spec, int workers, const DesignSink &sink)
{
    spec.validate();
    workers = std::max(1, workers);

    struct Item {
        std::size_t rf_pos;
        int run;
    };
    std::vector<Item> items;
    for (std::size_t p = 0; p < spec.n_rf.size(); ++p)
        for (int r = 0; r < spec.runs; ++r)
            items.push_back({p, r});

    std::vector<std::vector<ResultRecord>> slots(items.size());
    std::atomic<std::size_t> next{0};
    std::mutex sink_mutex;
    std::exception_ptr failure;
    std::mutex failure_mutex;

    DesignSink locked_sink;
    if (sink)
        locked_sink = [&](const RunDesigns &d) {
            std::lock_guard lock(sink_mutex);
            sink(d);
        };

    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= items.size())
                return;
            try {
                slots[i] = run_single(spec, spec.n_rf[items[i].rf_pos], items[i].run, locked_sink);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next.store(items.size());
                return;
            }
        }
    };

    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(work);
        for (auto &t : pool)
            t.join();
    }
    if (failure)
        std::rethrow_exception(failure);

    std::vector<ResultRecord> records;
    for (auto &s : slots)
        for (auto &r : s)
            records.push_back(std::move(r));

    auto rf_pos = [&](int n_rf) {
        return std::find(spec.n_rf.begin(), spec.n_rf.end(), n_rf) - spec.n_rf.begin();
    };
    auto snr_pos = [&](double snr) {
        return std::find(spec.snr_db.begin(), spec.snr_db.end(), snr) - spec.snr_db.begin();
    };
    std::stable_sort(records.begin(), records.end(), [&](const ResultRecord &a, const ResultRecord &b) {
        return std::make_tuple(rf_pos(a.n_rf), snr_pos(a.snr_db), a.run_index, static_cast<int>(a.method)) <
               std::make_tuple(rf_pos(b.n_rf), snr_pos(b.snr_db), b.run_index, static_cast<int>(b.method));
    });
    return records;
}

std::vector<PointSummary> summarize(const std::vector<ResultRecord> &records)
{
    // Keyed by first appearance so the summary follows the record order.
    std::vector<PointSummary> out;
    std::vector<std::vector<double>> values;
    std::map<std::tuple<int, double, int>, std::size_t> index;
    for (const auto &r : records) {
        const auto key = std::make_tuple(r.n_rf, r.snr_db, static_cast<int>(r.method));
        auto it = index.find(key);
        if (it == index.end()) {
            it = index.emplace(key, out.size()).first;
            out.push_back({r.n_rf, r.snr_db, r.method, 0, 0, 0.0, 0.0});
            values.emplace_back();
        }
        if (r.ok())
            values[it->second].push_back(r.spectral_efficiency);
        else
            ++out[it->second].errors;
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto &v = values[i];
        out[i].count = static_cast<int>(v.size());
        if (v.empty()) {
            out[i].mean = std::numeric_limits<double>::quiet_NaN();
            out[i].std_error = std::numeric_limits<double>::quiet_NaN();
            continue;
        }
        double sum = 0.0;
        for (double x : v)
            sum += x;
        const double mean = sum / v.size();
        double ss = 0.0;
        for (double x : v)
            ss += (x - mean) * (x - mean);
        out[i].mean = mean;
        out[i].std_error = v.size() > 1 ? std::sqrt(ss / (v.size() - 1) / v.size()) : 0.0;
    }
    return out;
}

void write_results_csv(std::ostream &out, const std::vector<ResultRecord> &records)
{
    out << "scenario,snr_db,n_rf,run_index,seed,method,spectral_efficiency,final_objective,"
           "iterations_used,wall_time_ms,status\n";
    for (const auto &r : records) {
        out << to_string(r.scenario) << ',' << format_double(r.snr_db) << ',' << r.n_rf << ',' << r.run_index
            << ',' << r.seed << ',' << to_string(r.method) << ',' << format_double(r.spectral_efficiency) << ','
            << format_double(r.final_objective) << ',' << r.iterations_used << ','
            << format_double(r.wall_time_ms) << ',' << csv_escape(r.status) << '\n';
    }
}

nlohmann::json sweep_metadata(const SweepSpec &spec, const std::vector<ResultRecord> &records)
{
    nlohmann::json points = nlohmann::json::array();
    for (const auto &p : summarize(records)) {
        auto num = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); };
        points.push_back({{"n_rf", p.n_rf},
                          {"snr_db", p.snr_db},
                          {"method", to_string(p.method)},
                          {"count", p.count},
                          {"errors", p.errors},
                          {"mean_spectral_efficiency", num(p.mean)},
                          {"std_error", num(p.std_error)}});
    }
    return {{"software", {{"name", "hybridsim"}, {"version", kVersion}}},
            {"spec", to_json(spec)},
            {"conventions",
             {{"snr", "linear snr = 10^(snr_db/10) = received power / noise variance"},
              {"wideband_spectral_efficiency", "mean over subcarriers of the per-subcarrier rate"},
              {"final_objective", "precoder ||F_opt - F_RF F_BB||_F^2 after power normalization"},
              {"seeding", "channel seed = base_seed + run_index"}}},
            {"records", records.size()},
            {"summary", points}};
}

std::vector<ResultRecord> run_sweep(const SweepSpec &spec, const std::filesystem::path &out_csv, int workers)
{
    spec.validate();
    const std::filesystem::path partial = out_csv.string() + ".partial";
    std::ofstream csv(partial, std::ios::binary | std::ios::trunc);
    if (!csv)
        throw std::runtime_error("cannot open " + partial.string() + " for writing");

    const auto records = run_sweep_records(spec, workers);
    write_results_csv(csv, records);
    csv.flush();
    if (!csv)
        throw std::runtime_error("write failed for " + partial.string());
    csv.close();

    const std::filesystem::path meta = out_csv.string() + ".meta.json";
    std::ofstream m(meta, std::ios::binary | std::ios::trunc);
    m << sweep_metadata(spec, records).dump(2) << '\n';
    if (!m)
        throw std::runtime_error("write failed for " + meta.string());
    m.close();

    std::filesystem::rename(partial, out_csv);
    return records;
}

} // namespace hybridsim
