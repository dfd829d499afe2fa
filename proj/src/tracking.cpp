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

#include "agchan/tracking.hpp"
#include "agchan/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace agchan
{

TrackingWeights weights_delay_2d()
{
    return TrackingWeights{0.05, 0.0, 0.95};
}

TrackingWeights weights_power_2d()
{
    return TrackingWeights{0.05, 0.95, 0.0};
}

TrackingWeights weights_3d()
{
    return TrackingWeights{0.05, 0.95, 0.95};
}

FeatureScaling make_feature_scaling(const SnapshotRecord &record)
{
    if (record.snapshots.empty())
        throw std::invalid_argument("make_feature_scaling: empty record");
    FeatureScaling s;
    s.max_delay_ns = record.meta.max_delay_ns;
    s.d_min_m = s.d_max_m = record.snapshots[0].link_distance_m;
    for (const auto &snap : record.snapshots)
    {
        s.d_min_m = std::min(s.d_min_m, snap.link_distance_m);
        s.d_max_m = std::max(s.d_max_m, snap.link_distance_m);
    }
    return s;
}

static double clamp01(double v)
{
    return std::min(1.0, std::max(0.0, v));
}

std::vector<ClusterFeature> extract_features(const SnapshotRecord &record,
                                             const std::vector<ClusterSet> &clusterings,
                                             const FeatureScaling &scaling)
{
    if (scaling.max_delay_ns <= 0.0 || scaling.p_ceil_db <= scaling.p_floor_db)
        throw std::invalid_argument("extract_features: bad scaling");
    std::unordered_map<int, const Snapshot *> by_index;
    for (const auto &snap : record.snapshots)
        by_index[snap.index] = &snap;

    const double span = scaling.d_max_m - scaling.d_min_m;
    std::vector<ClusterFeature> out;
    for (const auto &cs : clusterings)
    {
        auto it = by_index.find(cs.snapshot_index);
        if (it == by_index.end())
            throw std::invalid_argument("extract_features: clustering for unknown snapshot");
        const auto members = cluster_members(cs, *it->second);
        for (int c = 0; c < cs.k; c++)
        {
            if (members[c].empty())
                throw std::invalid_argument("extract_features: empty cluster");
            double p_db = 0.0, tau = 0.0;
            for (const auto &m : members[c])
            {
                p_db += m.power_db();
                tau += m.delay_ns;
            }
            p_db /= static_cast<double>(members[c].size());
            tau /= static_cast<double>(members[c].size());

            ClusterFeature f;
            f.snapshot_index = cs.snapshot_index;
            f.cluster_id = c + 1;
            f.link_distance_m = it->second->link_distance_m;
            f.delay_ns = tau;
            f.power_db = p_db;
            f.norm_distance = span > 0.0 ? (f.link_distance_m - scaling.d_min_m) / span : 0.0;
            f.norm_delay = clamp01(f.delay_ns / scaling.max_delay_ns);
            f.norm_power =
                clamp01((p_db - scaling.p_floor_db) / (scaling.p_ceil_db - scaling.p_floor_db));
            out.push_back(f);
        }
    }
    return out;
}

static void check_normalized(const ClusterFeature &f)
{
    const double eps = 1e-9;
    if (f.norm_distance < -eps || f.norm_distance > 1.0 + eps || f.norm_power < -eps ||
        f.norm_power > 1.0 + eps || f.norm_delay < -eps || f.norm_delay > 1.0 + eps)
        throw std::invalid_argument("tracking: features are not normalized to [0, 1]");
}

double weighted_distance(const ClusterFeature &a, const ClusterFeature &b,
                         const TrackingWeights &w)
{
    if (w.w_d < 0.0 || w.w_d > 1.0 || w.w_p < 0.0 || w.w_p > 1.0 || w.w_tau < 0.0 || w.w_tau > 1.0)
        throw std::invalid_argument("weighted_distance: weights must lie in [0, 1]");
    if (w.w_d == 0.0 && w.w_p == 0.0 && w.w_tau == 0.0)
        throw std::invalid_argument("weighted_distance: all weights are zero");
    check_normalized(a);
    check_normalized(b);
    const double dd = a.norm_distance - b.norm_distance;
    const double dp = a.norm_power - b.norm_power;
    const double dt = a.norm_delay - b.norm_delay;
    return std::sqrt(w.w_d * dd * dd + w.w_p * dp * dp + w.w_tau * dt * dt);
}

namespace
{

struct candidate
{
    double dist;
    size_t i, j; // feature indices, i < j in the deterministic pair order
};

struct candidate_order
{
    // min-heap by distance, ties by the content-based pair order
    bool operator()(const candidate &a, const candidate &b) const
    {
        if (a.dist != b.dist)
            return a.dist > b.dist;
        if (a.i != b.i)
            return a.i > b.i;
        return a.j > b.j;
    }
};

} // namespace

std::vector<Trajectory> track(const std::vector<ClusterFeature> &features,
                              const TrackingWeights &w, double link_threshold)
{
    if (link_threshold < 0.0)
        throw std::invalid_argument("track: negative threshold");
    for (const auto &f : features)
        check_normalized(f);
    {
        std::set<int> snaps;
        for (const auto &f : features)
            snaps.insert(f.snapshot_index);
        if (snaps.size() < 2)
            throw std::invalid_argument("track: features must cover at least 2 snapshots");
    }

    // deterministic feature order regardless of caller ordering
    std::vector<size_t> order(features.size());
    for (size_t i = 0; i < order.size(); i++)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (features[a].snapshot_index != features[b].snapshot_index)
            return features[a].snapshot_index < features[b].snapshot_index;
        return features[a].cluster_id < features[b].cluster_id;
    });

    const size_t n = features.size();
    std::vector<const ClusterFeature *> pt(n);
    for (size_t i = 0; i < n; i++)
        pt[i] = &features[order[i]];

    std::priority_queue<candidate, std::vector<candidate>, candidate_order> queue;
    for (size_t i = 0; i < n; i++)
        for (size_t j = i + 1; j < n; j++)
        {
            if (pt[i]->snapshot_index == pt[j]->snapshot_index)
                continue;
            const double d = weighted_distance(*pt[i], *pt[j], w);
            if (d < link_threshold)
                queue.push({d, i, j});
        }

    // trajectory bookkeeping: traj_of[i] = trajectory id, members per id,
    // covered snapshots per id
    std::vector<int> traj_of(n);
    std::vector<std::vector<size_t>> members(n);
    std::vector<std::set<int>> covered(n);
    for (size_t i = 0; i < n; i++)
    {
        traj_of[i] = static_cast<int>(i);
        members[i] = {i};
        covered[i] = {pt[i]->snapshot_index};
    }

    auto is_endpoint = [&](size_t node) {
        const auto &mem = members[traj_of[node]];
        int lo = pt[mem[0]]->snapshot_index, hi = lo;
        for (size_t m : mem)
        {
            lo = std::min(lo, pt[m]->snapshot_index);
            hi = std::max(hi, pt[m]->snapshot_index);
        }
        return pt[node]->snapshot_index == lo || pt[node]->snapshot_index == hi;
    };
    // join the two chains end to end, provided the meeting features are chain
    // endpoints and no snapshot would hold two members
    auto try_merge = [&](size_t a, size_t b) {
        const int ta = traj_of[a], tb = traj_of[b];
        if (!is_endpoint(a) || !is_endpoint(b))
            return false;
        for (int s : covered[tb])
            if (covered[ta].count(s))
                return false;
        for (size_t m : members[tb])
        {
            traj_of[m] = ta;
            members[ta].push_back(m);
        }
        covered[ta].insert(covered[tb].begin(), covered[tb].end());
        members[tb].clear();
        covered[tb].clear();
        return true;
    };

    while (!queue.empty())
    {
        const candidate c = queue.top();
        queue.pop();
        if (traj_of[c.i] == traj_of[c.j])
            continue;
        try_merge(c.i, c.j);
    }

    std::vector<Trajectory> out;
    for (size_t t = 0; t < n; t++)
    {
        if (members[t].empty())
            continue;
        Trajectory traj;
        std::vector<size_t> mem = members[t];
        std::sort(mem.begin(), mem.end(), [&](size_t a, size_t b) {
            return pt[a]->snapshot_index < pt[b]->snapshot_index;
        });
        for (size_t m : mem)
            traj.members.push_back(*pt[m]);
        traj.survival_length_m =
            traj.members.back().link_distance_m - traj.members.front().link_distance_m;
        out.push_back(std::move(traj));
    }
    std::sort(out.begin(), out.end(), [](const Trajectory &a, const Trajectory &b) {
        if (a.members.front().snapshot_index != b.members.front().snapshot_index)
            return a.members.front().snapshot_index < b.members.front().snapshot_index;
        return a.members.front().cluster_id < b.members.front().cluster_id;
    });
    return out;
}

double slope_dd(const Trajectory &traj)
{
    if (traj.members.size() < 2)
        throw std::invalid_argument("slope_dd: need at least 2 members");
    double md = 0.0, mt = 0.0;
    for (const auto &f : traj.members)
    {
        md += f.link_distance_m;
        mt += f.delay_ns;
    }
    md /= static_cast<double>(traj.members.size());
    mt /= static_cast<double>(traj.members.size());
    double sxx = 0.0, sxy = 0.0;
    for (const auto &f : traj.members)
    {
        const double dx = f.link_distance_m - md;
        sxx += dx * dx;
        sxy += dx * (f.delay_ns - mt);
    }
    if (sxx <= 0.0)
        throw degenerate_error("slope_dd: zero link-distance span");
    return sxy / sxx;
}

std::vector<double> survival_lengths(const std::vector<Trajectory> &trajectories)
{
    if (trajectories.empty())
        throw std::invalid_argument("survival_lengths: no trajectories");
    std::vector<double> out;
    out.reserve(trajectories.size());
    for (const auto &t : trajectories)
        out.push_back(t.survival_length_m);
    return out;
}

DistributionFit fit_survival(const std::vector<double> &lengths)
{
    std::vector<double> positive;
    for (double v : lengths)
        if (v > 0.0)
            positive.push_back(v);
    if (positive.empty())
        throw degenerate_error("fit_survival: no positive survival lengths");
    return fit_distribution(positive, DistFamily::weibull);
}

} // namespace agchan
