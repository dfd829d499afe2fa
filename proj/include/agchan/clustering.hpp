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

#ifndef agchan_clustering_H
#define agchan_clustering_H

#include "agchan/types.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace agchan
{

// Delay-domain scaling for the multipath component distance: the distance
// between two delays is zeta * (|t_i - t_j| / dtmax) * (t_std / dtmax),
// with dtmax the largest pairwise delay gap and t_std the population
// standard deviation, both over the snapshot being clustered.
struct DelayStats
{
    double delta_tau_max = 0.0; // ns
    double tau_std = 0.0;       // ns
    double zeta = 1.0;
};

// Computes the stats over a delay set. Throws degenerate_error when all
// delays coincide (the distance is undefined then).
DelayStats delay_stats(const std::vector<double> &delays_ns, double zeta = 1.0);

double mcd_delay(double tau_i_ns, double tau_j_ns, const DelayStats &stats);

struct ClusterSet
{
    int snapshot_index = 0;
    std::map<int, int> assignments;     // path_id -> cluster_id in 1..k
    std::vector<double> centroids;      // delay ns, ascending, centroids[c-1]
    std::vector<double> centroid_powers_db; // km only; empty for kpm
    int k = 0;
    double objective = 0.0; // sum of power-weighted squared distances
    int n_iterations = 0;
};

// K-Power-Means in the delay domain: assignment minimizes the linear-power
// weighted distance to the centroid; centroids are linear-power weighted mean
// delays; best of `restarts` runs (distance-squared seeding) by the weighted
// squared-distance objective. Cluster ids are relabeled 1..k by ascending
// centroid delay. Requires k >= 1, k <= number of MPCs and at most the number
// of distinct delays; fewer than 2 distinct delays is degenerate.
ClusterSet kpm_cluster(const Snapshot &snapshot, int k, std::uint64_t seed, int restarts = 10);

// Plain k-means baseline over (delay ns, power dB) with unweighted Euclidean
// distance and unweighted centroid means. Same seeding and relabeling rules.
ClusterSet km_cluster(const Snapshot &snapshot, int k, std::uint64_t seed);

// Davies-Bouldin index under the delay-domain distance: compactness is the
// mean member-to-centroid distance, separation the centroid-to-centroid
// distance. Lower is better. Requires k >= 2; coincident centroids are
// degenerate. Delay stats are computed over the assigned MPCs.
double db_index(const Snapshot &snapshot, const ClusterSet &clusters);

// Mean silhouette value under the delay-domain distance; singletons
// contribute 0. Requires k >= 2.
double silhouette_index(const Snapshot &snapshot, const ClusterSet &clusters);

enum class KCriterion
{
    db,
    silhouette
};

struct KSelectConfig
{
    int k_min = 4;
    int k_max = 10;
    KCriterion criterion = KCriterion::db;
    // The Davies-Bouldin index is canonically minimized; set this to pick the
    // maximizer instead.
    bool db_select_max = false;
    int restarts = 10;
};

struct KSweepEntry
{
    int k = 0;
    double db = 0.0;
    double silhouette = 0.0;
    ClusterSet clusters;
};

struct KSweep
{
    std::vector<KSweepEntry> entries;
    int best_k = 0;
};

// Runs kpm_cluster for every K in [k_min, k_max] and selects by the given
// criterion (DB minimized unless db_select_max, silhouette maximized).
KSweep sweep_k(const Snapshot &snapshot, const KSelectConfig &cfg, std::uint64_t seed);

int optimal_k(const Snapshot &snapshot, const KSelectConfig &cfg, std::uint64_t seed);

// Position of the line-of-sight path to exclude from clustering: the
// strongest MPC when it exceeds the runner-up by margin_db. Empty when the
// snapshot has < 2 MPCs or the margin is not met.
std::optional<std::size_t> find_los_path(const std::vector<MultipathComponent> &mpcs,
                                         double margin_db = 5.0);

// Member lists per cluster id (index c-1), resolved against the snapshot by
// path_id. Throws invalid_argument when an assigned path_id is missing.
std::vector<std::vector<MultipathComponent>> cluster_members(const ClusterSet &clusters,
                                                             const Snapshot &snapshot);

} // namespace agchan

#endif
