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

#ifndef agchan_tracking_H
#define agchan_tracking_H

#include "agchan/clustering.hpp"
#include "agchan/distributions.hpp"
#include "agchan/types.hpp"

#include <vector>

namespace agchan
{

struct TrackingWeights
{
    double w_d = 0.05;
    double w_p = 0.95;
    double w_tau = 0.95;
};

TrackingWeights weights_delay_2d();  // (0.05, 0, 0.95)
TrackingWeights weights_power_2d();  // (0.05, 0.95, 0)
TrackingWeights weights_3d();        // (0.05, 0.95, 0.95)

// One cluster of one snapshot, with raw values kept for survival/slope
// reporting and min-max normalized values used by the tracking distance.
struct ClusterFeature
{
    int snapshot_index = 0;
    int cluster_id = 0;
    double link_distance_m = 0.0; // raw
    double delay_ns = 0.0;        // raw mean member delay
    double power_db = 0.0;        // raw mean member power
    double norm_distance = 0.0;   // in [0, 1]
    double norm_power = 0.0;      // in [0, 1]
    double norm_delay = 0.0;      // in [0, 1]
};

// Normalization rule: delay / max_delay_ns, power mapped from
// [p_floor_db, p_ceil_db] to [0, 1] (clamped), link distance min-max scaled
// over the record's span.
struct FeatureScaling
{
    double max_delay_ns = 550.0;
    double p_floor_db = -30.0;
    double p_ceil_db = 0.0;
    double d_min_m = 0.0;
    double d_max_m = 0.0;
};

FeatureScaling make_feature_scaling(const SnapshotRecord &record);

// Cluster-level features for every clustered snapshot: the cluster's
// unweighted mean member delay and mean member power (dB), normalized per
// the scaling.
std::vector<ClusterFeature> extract_features(const SnapshotRecord &record,
                                             const std::vector<ClusterSet> &clusterings,
                                             const FeatureScaling &scaling);

// sqrt(w_d*dd^2 + w_p*dp^2 + w_tau*dt^2) over the normalized fields.
double weighted_distance(const ClusterFeature &a, const ClusterFeature &b,
                         const TrackingWeights &w);

struct Trajectory
{
    std::vector<ClusterFeature> members; // sorted by snapshot index
    double survival_length_m = 0.0;      // last minus first link distance
};

// Greedy agglomeration: repeatedly make the globally closest link between a
// trajectory endpoint and a still-unassigned cluster, subject to the distance
// threshold and at most one member per snapshot. Every cluster ends up in
// exactly one trajectory; threshold 0 leaves all singletons.
std::vector<Trajectory> track(const std::vector<ClusterFeature> &features,
                              const TrackingWeights &w, double link_threshold = 0.1);

// Least-squares slope of raw delay (ns) against raw link distance (m).
// Requires >= 2 members spanning distinct distances.
double slope_dd(const Trajectory &traj);

std::vector<double> survival_lengths(const std::vector<Trajectory> &trajectories);

// Weibull fit over the strictly positive lengths; all-singleton input is
// degenerate.
DistributionFit fit_survival(const std::vector<double> &lengths);

} // namespace agchan

#endif
