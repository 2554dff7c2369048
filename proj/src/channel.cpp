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

#include "hybridsim/channel.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace hybridsim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

PathAngles draw_uniform_angles(Rng &rng)
{
    PathAngles a;
    a.tx_azimuth = rng.uniform(0.0, kTwoPi);
    a.tx_elevation = rng.uniform(0.0, kTwoPi);
    a.rx_azimuth = rng.uniform(0.0, kTwoPi);
    a.rx_elevation = rng.uniform(0.0, kTwoPi);
    return a;
}

PathAngles draw_offsets(Rng &rng, double spread)
{
    PathAngles a;
    a.tx_azimuth = rng.normal(0.0, spread);
    a.tx_elevation = rng.normal(0.0, spread);
    a.rx_azimuth = rng.normal(0.0, spread);
    a.rx_elevation = rng.normal(0.0, spread);
    return a;
}

ChannelRealization synthesize(std::uint64_t seed, const ArrayGeometry &tx, const ArrayGeometry &rx,
                              const ClusterParams &params, int subcarriers)
{
    tx.validate();
    rx.validate();
    params.validate();
    if (subcarriers < 1)
        throw std::invalid_argument("gen_wideband: subcarrier count must be >= 1");

    Rng rng(seed);
    const int n_paths = params.n_clusters * params.n_rays;
    std::vector<Complex> gains(static_cast<std::size_t>(n_paths));
    const double half = std::sqrt(0.5);
    for (auto &g : gains) {
        const double re = rng.normal(0.0, half);
        const double im = rng.normal(0.0, half);
        g = {re, im};
    }
    const AngleSet angles = sample_cluster_angles(rng, params);

    // Per-cluster sum of rank-one ray terms; the delay phase is applied per
    // cluster afterwards.
    const double gamma = channel_gain_normalization(tx, rx, params);
    std::vector<ComplexMatrix> clusters;
    clusters.reserve(static_cast<std::size_t>(params.n_clusters));
    for (int i = 0; i < params.n_clusters; ++i) {
        ComplexMatrix c = ComplexMatrix::Zero(rx.elements(), tx.elements());
        for (int l = 0; l < params.n_rays; ++l) {
            const PathAngles p = angles.ray(i, l);
            const ComplexVector ar = array_response(rx, p.rx_azimuth, p.rx_elevation);
            const ComplexVector at = array_response(tx, p.tx_azimuth, p.tx_elevation);
            c.noalias() += gains[static_cast<std::size_t>(i * params.n_rays + l)] * ar * at.adjoint();
        }
        clusters.push_back(gamma * c);
    }

    ChannelRealization out;
    out.seed = seed;
    out.params = params;
    out.tx = tx;
    out.rx = rx;
    out.matrices.reserve(static_cast<std::size_t>(subcarriers));
    for (int k = 0; k < subcarriers; ++k) {
        ComplexMatrix h = clusters.front();
        for (int i = 1; i < params.n_clusters; ++i) {
            const double phase = -kTwoPi * static_cast<double>(i) * k / subcarriers;
            h += std::polar(1.0, phase) * clusters[static_cast<std::size_t>(i)];
        }
        out.matrices.push_back(std::move(h));
    }
    return out;
}

} // namespace

void ArrayGeometry::validate() const
{
    if (side < 1)
        throw std::invalid_argument("ArrayGeometry: side must be >= 1");
    if (!(spacing_over_lambda > 0.0) || !std::isfinite(spacing_over_lambda))
        throw std::invalid_argument("ArrayGeometry: spacing_over_lambda must be positive");
}

void ClusterParams::validate() const
{
    if (n_clusters < 1 || n_rays < 1)
        throw std::invalid_argument("ClusterParams: cluster and ray counts must be >= 1");
    if (!(angular_spread_rad >= 0.0) || !std::isfinite(angular_spread_rad))
        throw std::invalid_argument("ClusterParams: angular spread must be non-negative");
}

PathAngles AngleSet::ray(int cluster, int ray) const
{
    const PathAngles &m = cluster_means.at(static_cast<std::size_t>(cluster));
    const PathAngles &o = ray_offsets.at(static_cast<std::size_t>(cluster * n_rays + ray));
    return {m.tx_azimuth + o.tx_azimuth, m.tx_elevation + o.tx_elevation,
            m.rx_azimuth + o.rx_azimuth, m.rx_elevation + o.rx_elevation};
}

ComplexVector array_response(const ArrayGeometry &geom, double azimuth, double elevation)
{
    geom.validate();
    const int n = geom.side;
    const double k = kTwoPi * geom.spacing_over_lambda;
    const double u = std::sin(azimuth) * std::sin(elevation);
    const double v = std::cos(elevation);
    const double amp = 1.0 / n;
    ComplexVector a(geom.elements());
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            a(p * n + q) = std::polar(amp, k * (p * u + q * v));
    return a;
}

AngleSet sample_cluster_angles(Rng &rng, const ClusterParams &params)
{
    params.validate();
    AngleSet set;
    set.n_clusters = params.n_clusters;
    set.n_rays = params.n_rays;
    set.cluster_means.reserve(static_cast<std::size_t>(params.n_clusters));
    for (int i = 0; i < params.n_clusters; ++i)
        set.cluster_means.push_back(draw_uniform_angles(rng));
    set.ray_offsets.reserve(static_cast<std::size_t>(params.n_clusters * params.n_rays));
    for (int i = 0; i < params.n_clusters; ++i)
        for (int l = 0; l < params.n_rays; ++l)
            set.ray_offsets.push_back(draw_offsets(rng, params.angular_spread_rad));
    return set;
}

double channel_gain_normalization(const ArrayGeometry &tx, const ArrayGeometry &rx,
                                  const ClusterParams &params)
{
    return std::sqrt(static_cast<double>(tx.elements()) * rx.elements() /
                     (static_cast<double>(params.n_clusters) * params.n_rays));
}

ChannelRealization gen_narrowband(std::uint64_t seed, const ArrayGeometry &tx,
                                  const ArrayGeometry &rx, const ClusterParams &params)
{
    return synthesize(seed, tx, rx, params, 1);
}

ChannelRealization gen_wideband(std::uint64_t seed, const ArrayGeometry &tx,
                                const ArrayGeometry &rx, const ClusterParams &params,
                                int subcarriers)
{
    return synthesize(seed, tx, rx, params, subcarriers);
}

void write_channel(std::ostream &out, const ChannelRealization &channel)
{
    nlohmann::json j;
    j["format"] = "hybridsim-channel-v1";
    j["seed"] = channel.seed;
    j["subcarriers"] = channel.subcarriers();
    j["n_rx"] = channel.rx.elements();
    j["n_tx"] = channel.tx.elements();
    j["tx"] = {{"side", channel.tx.side}, {"spacing_over_lambda", channel.tx.spacing_over_lambda}};
    j["rx"] = {{"side", channel.rx.side}, {"spacing_over_lambda", channel.rx.spacing_over_lambda}};
    j["clusters"] = {{"n_clusters", channel.params.n_clusters},
                     {"n_rays", channel.params.n_rays},
                     {"angular_spread_rad", channel.params.angular_spread_rad}};
    nlohmann::json mats = nlohmann::json::array();
    for (const auto &h : channel.matrices) {
        std::vector<double> flat;
        flat.reserve(static_cast<std::size_t>(2 * h.size()));
        for (Eigen::Index r = 0; r < h.rows(); ++r)
            for (Eigen::Index c = 0; c < h.cols(); ++c) {
                flat.push_back(h(r, c).real());
                flat.push_back(h(r, c).imag());
            }
        mats.push_back(std::move(flat));
    }
    j["matrices"] = std::move(mats);
    out << j.dump() << '\n';
}

ChannelRealization read_channel(std::istream &in)
{
    const nlohmann::json j = nlohmann::json::parse(in);
    if (j.value("format", "") != "hybridsim-channel-v1")
        throw std::runtime_error("read_channel: unrecognized format tag");

    ChannelRealization ch;
    ch.seed = j.at("seed").get<std::uint64_t>();
    ch.tx = {j.at("tx").at("side").get<int>(), j.at("tx").at("spacing_over_lambda").get<double>()};
    ch.rx = {j.at("rx").at("side").get<int>(), j.at("rx").at("spacing_over_lambda").get<double>()};
    const auto &cl = j.at("clusters");
    ch.params = {cl.at("n_clusters").get<int>(), cl.at("n_rays").get<int>(),
                 cl.at("angular_spread_rad").get<double>()};
    const int n_rx = j.at("n_rx").get<int>();
    const int n_tx = j.at("n_tx").get<int>();
    if (n_rx != ch.rx.elements() || n_tx != ch.tx.elements())
        throw std::runtime_error("read_channel: dimensions disagree with array geometry");

    for (const auto &m : j.at("matrices")) {
        const auto flat = m.get<std::vector<double>>();
        if (flat.size() != static_cast<std::size_t>(2 * n_rx * n_tx))
            throw std::runtime_error("read_channel: matrix entry count mismatch");
        ComplexMatrix h(n_rx, n_tx);
        std::size_t idx = 0;
        for (int r = 0; r < n_rx; ++r)
            for (int c = 0; c < n_tx; ++c, idx += 2)
                h(r, c) = {flat[idx], flat[idx + 1]};
        ch.matrices.push_back(std::move(h));
    }
    if (ch.subcarriers() != j.at("subcarriers").get<int>())
        throw std::runtime_error("read_channel: subcarrier count mismatch");
    return ch;
}

} // namespace hybridsim
