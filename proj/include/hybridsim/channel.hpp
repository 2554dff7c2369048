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

#ifndef HYBRIDSIM_CHANNEL_HPP
#define HYBRIDSIM_CHANNEL_HPP

#include <cstdint>
#include <iosfwd>
#include <numbers>
#include <vector>

#include "hybridsim/numerics.hpp"
#include "hybridsim/rng.hpp"

namespace hybridsim {

/// Square uniform planar array with side x side elements.
struct ArrayGeometry {
    int side = 1;
    double spacing_over_lambda = 0.5;

    int elements() const { return side * side; }
    void validate() const;
};

struct ClusterParams {
    int n_clusters = 8;
    int n_rays = 10;
    double angular_spread_rad = 10.0 * std::numbers::pi / 180.0;

    void validate() const;
};

struct PathAngles {
    double tx_azimuth = 0.0;
    double tx_elevation = 0.0;
    double rx_azimuth = 0.0;
    double rx_elevation = 0.0;
};

/// Cluster mean angles and per-ray Gaussian offsets around them.
struct AngleSet {
    int n_clusters = 0;
    int n_rays = 0;
    std::vector<PathAngles> cluster_means; // n_clusters
    std::vector<PathAngles> ray_offsets;   // n_clusters * n_rays, cluster-major

    PathAngles ray(int cluster, int ray) const;
};

struct ChannelRealization {
    std::vector<ComplexMatrix> matrices; // one per subcarrier, each N_rx x N_tx
    std::uint64_t seed = 0;
    ClusterParams params;
    ArrayGeometry tx;
    ArrayGeometry rx;

    int subcarriers() const { return static_cast<int>(matrices.size()); }
};

/// Planar array steering vector. Element (p, q) sits at index p * side + q and
/// equals exp(j 2 pi d/lambda (p sin(az) sin(el) + q cos(el))) / side.
ComplexVector array_response(const ArrayGeometry &geom, double azimuth, double elevation);

/// Draws cluster means uniform on [0, 2 pi) for all clusters (tx az, tx el,
/// rx az, rx el per cluster), then the ray offsets cluster by cluster in the
/// same component order.
AngleSet sample_cluster_angles(Rng &rng, const ClusterParams &params);

/// Normalization gamma = sqrt(N_tx N_rx / (N_cl N_ray)).
double channel_gain_normalization(const ArrayGeometry &tx, const ArrayGeometry &rx,
                                  const ClusterParams &params);

// Both generators consume the stream in the order: ray gains (cluster-major,
// real then imaginary part), cluster means, ray offsets.
ChannelRealization gen_narrowband(std::uint64_t seed, const ArrayGeometry &tx,
                                  const ArrayGeometry &rx, const ClusterParams &params);

// Cluster i (zero-based) is delayed by i samples, giving the per-subcarrier
// factor exp(-j 2 pi i k / K).
ChannelRealization gen_wideband(std::uint64_t seed, const ArrayGeometry &tx,
                                const ArrayGeometry &rx, const ClusterParams &params,
                                int subcarriers);

// JSON dump for replay: dimensions, seed, K, generating parameters and each
// matrix as row-major interleaved (re, im) pairs.
void write_channel(std::ostream &out, const ChannelRealization &channel);
ChannelRealization read_channel(std::istream &in);

} // namespace hybridsim

#endif
