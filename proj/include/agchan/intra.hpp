// SPDX-License-Identifier: Apache-2.0
//
// agchan - cluster-based characterization and synthesis of time-varying
// air-to-ground multipath channels
// Copyright (C) 2026 the agchan authors
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

#ifndef agchan_intra_H
#define agchan_intra_H

#include "agchan/clustering.hpp"
#include "agchan/types.hpp"

#include <vector>

namespace agchan
{

// Geometric descriptor of one cluster: the delay/power bounding box, the
// power-decay line across it, and the per-ray share of the box area.
struct ClusterRectangle
{
    double tau_min = 0.0, tau_max = 0.0; // ns
    double p_min = 0.0, p_max = 0.0;     // dB
    double slope_a = 0.0;                // dB/ns, from the box extremes
    double slope_ls = 0.0;               // dB/ns, least-squares diagnostic
    double intercept_b = 0.0;            // dB, from P = -a*tau + b at the mean
    double area_b = 0.0;                 // dB*ns
    double ray_unit_area = 0.0;          // dB*ns per member
    int member_count = 0;
};

// Requires >= 2 members with distinct delays (zero-width boxes are
// degenerate). slope_a = (p_max - p_min) / (tau_max - tau_min); the intercept
// ties the decay line P = -slope_a * tau + b to the cluster's mean delay and
// mean power.
ClusterRectangle rectangle(const std::vector<MultipathComponent> &members);

// Power ratio of the strongest member to the sum of the rest, in dB
// (linear-power arithmetic). Requires >= 2 members.
double cluster_k_factor(const std::vector<MultipathComponent> &members);

// Linear-power weighted RMS delay spread, ns. Single member -> 0.
double rms_delay_spread(const std::vector<MultipathComponent> &members);

// Linear-power weighted mean delay, ns.
double mean_delay(const std::vector<MultipathComponent> &members);

// Per-MPC delay minus the unweighted mean delay of its cluster, pooled over
// all clusters of the snapshot. Single-member clusters are skipped.
std::vector<double> delay_offsets(const ClusterSet &clusters, const Snapshot &snapshot);

} // namespace agchan

#endif
