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

#include "agchan/clustering.hpp"
#include "agchan/errors.hpp"
#include "agchan/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace agchan
{

DelayStats delay_stats(const std::vector<double> &delays_ns, double zeta)
{
    if (delays_ns.size() < 2)
        throw std::invalid_argument("delay_stats: need at least 2 delays");
    const auto [mn, mx] = std::minmax_element(delays_ns.begin(), delays_ns.end());
    DelayStats s;
    s.zeta = zeta;
    s.delta_tau_max = *mx - *mn;
    if (s.delta_tau_max <= 0.0)
        throw degenerate_error("delay_stats: all delays coincide");
    const double n = static_cast<double>(delays_ns.size());
    const double mean = std::accumulate(delays_ns.begin(), delays_ns.end(), 0.0) / n;
    double ss = 0.0;
    for (double t : delays_ns)
        ss += (t - mean) * (t - mean);
    s.tau_std = std::sqrt(ss / n);
    return s;
}

double mcd_delay(double tau_i_ns, double tau_j_ns, const DelayStats &stats)
{
    if (stats.delta_tau_max <= 0.0)
        throw degenerate_error("mcd_delay: delta_tau_max must be positive");
    return stats.zeta * (std::fabs(tau_i_ns - tau_j_ns) / stats.delta_tau_max) *
           (stats.tau_std / stats.delta_tau_max);
}

namespace
{

struct point
{
    double delay = 0.0;
    double p_lin = 0.0;
    double p_db = 0.0;
    int path_id = 0;
};

std::vector<point> collect_points(const Snapshot &snapshot)
{
    std::vector<point> pts;
    pts.reserve(snapshot.mpcs.size());
    std::set<int> ids;
    for (const auto &m : snapshot.mpcs)
    {
        if (!ids.insert(m.path_id).second)
            throw std::invalid_argument("clustering: duplicate path_id in snapshot");
        point p;
        p.delay = m.delay_ns;
        p.p_lin = m.power_linear();
        p.p_db = m.power_db();
        p.path_id = m.path_id;
        if (p.p_lin <= 0.0)
            throw std::invalid_argument("clustering: zero-power MPC");
        pts.push_back(p);
    }
    return pts;
}

size_t count_distinct_delays(const std::vector<point> &pts)
{
    std::set<double> d;
    for (const auto &p : pts)
        d.insert(p.delay);
    return d.size();
}

// index drawn with probability proportional to weights (all >= 0, sum > 0)
size_t weighted_pick(const std::vector<double> &weights, RandomStream &rng)
{
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (total <= 0.0)
        return rng.uniform_int(0, static_cast<int>(weights.size()) - 1);
    double u = rng.uniform01() * total;
    for (size_t i = 0; i < weights.size(); i++)
    {
        u -= weights[i];
        if (u <= 0.0)
            return i;
    }
    return weights.size() - 1;
}

struct lloyd_result
{
    std::vector<int> assign; // 0-based cluster per point
    std::vector<double> cen_delay;
    std::vector<double> cen_pdb; // km only
    double objective = std::numeric_limits<double>::infinity();
    int iterations = 0;
};

// One K-power-means run from a distance-squared weighted random seed.
lloyd_result run_kpm(const std::vector<point> &pts, const DelayStats &stats, int k,
                     RandomStream &rng)
{
    const size_t n = pts.size();
    std::vector<double> cen(k);
    {
        std::vector<double> w(n);
        for (size_t i = 0; i < n; i++)
            w[i] = pts[i].p_lin;
        cen[0] = pts[weighted_pick(w, rng)].delay;
        std::vector<double> dmin(n);
        for (int j = 1; j < k; j++)
        {
            for (size_t i = 0; i < n; i++)
            {
                double d = std::numeric_limits<double>::infinity();
                for (int c = 0; c < j; c++)
                    d = std::min(d, mcd_delay(pts[i].delay, cen[c], stats));
                dmin[i] = d;
                w[i] = pts[i].p_lin * d * d;
            }
            cen[j] = pts[weighted_pick(w, rng)].delay;
        }
    }

    lloyd_result res;
    res.assign.assign(n, -1);
    double prev_obj = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 200; it++)
    {
        // assignment: minimize power-weighted distance; ties to the lower id
        std::vector<int> next(n);
        for (size_t i = 0; i < n; i++)
        {
            int best = 0;
            double best_d = pts[i].p_lin * mcd_delay(pts[i].delay, cen[0], stats);
            for (int c = 1; c < k; c++)
            {
                const double d = pts[i].p_lin * mcd_delay(pts[i].delay, cen[c], stats);
                if (d < best_d)
                {
                    best_d = d;
                    best = c;
                }
            }
            next[i] = best;
        }

        // repair empty clusters from the farthest member of a cluster of >= 2
        bool repaired = false;
        std::vector<int> count(k, 0);
        for (int c : next)
            count[c]++;
        for (int c = 0; c < k; c++)
        {
            if (count[c] > 0)
                continue;
            double worst = -1.0;
            size_t worst_i = 0;
            for (size_t i = 0; i < n; i++)
            {
                if (count[next[i]] < 2)
                    continue;
                const double d = mcd_delay(pts[i].delay, cen[next[i]], stats);
                const double wd = pts[i].p_lin * d * d;
                if (wd > worst)
                {
                    worst = wd;
                    worst_i = i;
                }
            }
            if (worst < 0.0)
                throw degenerate_error("kpm_cluster: cannot repair empty cluster");
            count[next[worst_i]]--;
            next[worst_i] = c;
            count[c] = 1;
            cen[c] = pts[worst_i].delay;
            repaired = true;
        }

        const bool stable = (next == res.assign);
        res.assign = next;

        // centroid update: linear-power weighted mean delay
        std::vector<double> psum(k, 0.0), tsum(k, 0.0);
        for (size_t i = 0; i < n; i++)
        {
            psum[res.assign[i]] += pts[i].p_lin;
            tsum[res.assign[i]] += pts[i].p_lin * pts[i].delay;
        }
        for (int c = 0; c < k; c++)
            cen[c] = tsum[c] / psum[c];

        double obj = 0.0;
        for (size_t i = 0; i < n; i++)
        {
            const double d = mcd_delay(pts[i].delay, cen[res.assign[i]], stats);
            obj += pts[i].p_lin * d * d;
        }
        if (!repaired && obj > prev_obj * (1.0 + 1e-9) + 1e-300)
            throw std::logic_error("kpm_cluster: objective increased");
        prev_obj = obj;
        res.objective = obj;
        res.iterations = it + 1;
        if (stable)
            break;
    }
    res.cen_delay = cen;
    return res;
}

// One plain k-means run over (delay ns, power dB).
lloyd_result run_km(const std::vector<point> &pts, int k, RandomStream &rng)
{
    const size_t n = pts.size();
    auto dist2 = [&](size_t i, double cd, double cp) {
        const double dt = pts[i].delay - cd, dp = pts[i].p_db - cp;
        return dt * dt + dp * dp;
    };
    std::vector<double> cd(k), cp(k);
    {
        const size_t first = rng.uniform_int(0, static_cast<int>(n) - 1);
        cd[0] = pts[first].delay;
        cp[0] = pts[first].p_db;
        std::vector<double> w(n);
        for (int j = 1; j < k; j++)
        {
            for (size_t i = 0; i < n; i++)
            {
                double d = std::numeric_limits<double>::infinity();
                for (int c = 0; c < j; c++)
                    d = std::min(d, dist2(i, cd[c], cp[c]));
                w[i] = d;
            }
            const size_t pick = weighted_pick(w, rng);
            cd[j] = pts[pick].delay;
            cp[j] = pts[pick].p_db;
        }
    }

    lloyd_result res;
    res.assign.assign(n, -1);
    double prev_obj = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 200; it++)
    {
        std::vector<int> next(n);
        for (size_t i = 0; i < n; i++)
        {
            int best = 0;
            double best_d = dist2(i, cd[0], cp[0]);
            for (int c = 1; c < k; c++)
            {
                const double d = dist2(i, cd[c], cp[c]);
                if (d < best_d)
                {
                    best_d = d;
                    best = c;
                }
            }
            next[i] = best;
        }

        bool repaired = false;
        std::vector<int> count(k, 0);
        for (int c : next)
            count[c]++;
        for (int c = 0; c < k; c++)
        {
            if (count[c] > 0)
                continue;
            double worst = -1.0;
            size_t worst_i = 0;
            for (size_t i = 0; i < n; i++)
            {
                if (count[next[i]] < 2)
                    continue;
                const double d = dist2(i, cd[next[i]], cp[next[i]]);
                if (d > worst)
                {
                    worst = d;
                    worst_i = i;
                }
            }
            if (worst < 0.0)
                throw degenerate_error("km_cluster: cannot repair empty cluster");
            count[next[worst_i]]--;
            next[worst_i] = c;
            count[c] = 1;
            cd[c] = pts[worst_i].delay;
            cp[c] = pts[worst_i].p_db;
            repaired = true;
        }

        const bool stable = (next == res.assign);
        res.assign = next;

        std::vector<double> ns(k, 0.0), ts(k, 0.0), ps(k, 0.0);
        for (size_t i = 0; i < n; i++)
        {
            ns[res.assign[i]] += 1.0;
            ts[res.assign[i]] += pts[i].delay;
            ps[res.assign[i]] += pts[i].p_db;
        }
        for (int c = 0; c < k; c++)
        {
            cd[c] = ts[c] / ns[c];
            cp[c] = ps[c] / ns[c];
        }

        double obj = 0.0;
        for (size_t i = 0; i < n; i++)
            obj += dist2(i, cd[res.assign[i]], cp[res.assign[i]]);
        if (!repaired && obj > prev_obj * (1.0 + 1e-9) + 1e-300)
            throw std::logic_error("km_cluster: objective increased");
        prev_obj = obj;
        res.objective = obj;
        res.iterations = it + 1;
        if (stable)
            break;
    }
    res.cen_delay = cd;
    res.cen_pdb = cp;
    return res;
}

// relabel clusters 1..k by ascending (delay, power) centroid and build the set
ClusterSet finalize(const std::vector<point> &pts, const lloyd_result &run, int k,
                    int snapshot_index, bool with_powers)
{
    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (run.cen_delay[a] != run.cen_delay[b])
            return run.cen_delay[a] < run.cen_delay[b];
        if (with_powers && run.cen_pdb[a] != run.cen_pdb[b])
            return run.cen_pdb[a] < run.cen_pdb[b];
        return a < b;
    });
    std::vector<int> new_id(k);
    for (int c = 0; c < k; c++)
        new_id[order[c]] = c + 1;

    ClusterSet out;
    out.snapshot_index = snapshot_index;
    out.k = k;
    out.objective = run.objective;
    out.n_iterations = run.iterations;
    out.centroids.resize(k);
    if (with_powers)
        out.centroid_powers_db.resize(k);
    for (int c = 0; c < k; c++)
    {
        out.centroids[c] = run.cen_delay[order[c]];
        if (with_powers)
            out.centroid_powers_db[c] = run.cen_pdb[order[c]];
    }
    for (size_t i = 0; i < pts.size(); i++)
        out.assignments[pts[i].path_id] = new_id[run.assign[i]];
    return out;
}

void check_k(const std::vector<point> &pts, int k, size_t distinct)
{
    if (k < 1)
        throw std::invalid_argument("clustering: k must be >= 1");
    if (static_cast<size_t>(k) > pts.size())
        throw std::invalid_argument("clustering: k exceeds the number of MPCs");
    if (distinct < 2)
        throw degenerate_error("clustering: fewer than 2 distinct delays");
    if (static_cast<size_t>(k) > distinct)
        throw degenerate_error("clustering: k exceeds the number of distinct delays");
}

} // namespace

ClusterSet kpm_cluster(const Snapshot &snapshot, int k, std::uint64_t seed, int restarts)
{
    if (restarts < 1)
        throw std::invalid_argument("kpm_cluster: restarts must be >= 1");
    const std::vector<point> pts = collect_points(snapshot);
    check_k(pts, k, count_distinct_delays(pts));

    std::vector<double> delays(pts.size());
    for (size_t i = 0; i < pts.size(); i++)
        delays[i] = pts[i].delay;
    const DelayStats stats = delay_stats(delays);

    lloyd_result best;
    for (int r = 0; r < restarts; r++)
    {
        RandomStream rng = RandomStream::substream(seed, {1, static_cast<std::uint64_t>(r)});
        lloyd_result run = run_kpm(pts, stats, k, rng);
        if (run.objective < best.objective)
            best = run;
    }
    return finalize(pts, best, k, snapshot.index, false);
}

ClusterSet km_cluster(const Snapshot &snapshot, int k, std::uint64_t seed)
{
    const std::vector<point> pts = collect_points(snapshot);
    std::set<std::pair<double, double>> distinct2d;
    for (const auto &p : pts)
        distinct2d.insert({p.delay, p.p_db});
    check_k(pts, k, count_distinct_delays(pts));
    if (static_cast<size_t>(k) > distinct2d.size())
        throw degenerate_error("km_cluster: k exceeds the number of distinct points");

    lloyd_result best;
    for (int r = 0; r < 10; r++)
    {
        RandomStream rng = RandomStream::substream(seed, {2, static_cast<std::uint64_t>(r)});
        lloyd_result run = run_km(pts, k, rng);
        if (run.objective < best.objective)
            best = run;
    }
    return finalize(pts, best, k, snapshot.index, true);
}

std::vector<std::vector<MultipathComponent>> cluster_members(const ClusterSet &clusters,
                                                             const Snapshot &snapshot)
{
    std::unordered_map<int, const MultipathComponent *> by_id;
    for (const auto &m : snapshot.mpcs)
        if (!by_id.emplace(m.path_id, &m).second)
            throw std::invalid_argument("cluster_members: duplicate path_id in snapshot");

    std::vector<std::vector<MultipathComponent>> out(clusters.k);
    for (const auto &[pid, cid] : clusters.assignments)
    {
        if (cid < 1 || cid > clusters.k)
            throw std::invalid_argument("cluster_members: cluster id out of range");
        auto it = by_id.find(pid);
        if (it == by_id.end())
            throw std::invalid_argument("cluster_members: assigned path_id not in snapshot");
        out[cid - 1].push_back(*it->second);
    }
    return out;
}

namespace
{

// stats over exactly the MPCs the cluster set covers
DelayStats stats_of_assigned(const std::vector<std::vector<MultipathComponent>> &members)
{
    std::vector<double> delays;
    for (const auto &cl : members)
        for (const auto &m : cl)
            delays.push_back(m.delay_ns);
    return delay_stats(delays);
}

} // namespace

double db_index(const Snapshot &snapshot, const ClusterSet &clusters)
{
    if (clusters.k < 2)
        throw std::invalid_argument("db_index: need k >= 2");
    const auto members = cluster_members(clusters, snapshot);
    for (const auto &cl : members)
        if (cl.empty())
            throw std::invalid_argument("db_index: empty cluster");
    const DelayStats stats = stats_of_assigned(members);

    const int k = clusters.k;
    std::vector<double> spread(k, 0.0);
    for (int c = 0; c < k; c++)
    {
        for (const auto &m : members[c])
            spread[c] += mcd_delay(m.delay_ns, clusters.centroids[c], stats);
        spread[c] /= static_cast<double>(members[c].size());
    }

    double db = 0.0;
    for (int i = 0; i < k; i++)
    {
        double worst = 0.0;
        for (int j = 0; j < k; j++)
        {
            if (j == i)
                continue;
            const double sep = mcd_delay(clusters.centroids[i], clusters.centroids[j], stats);
            if (sep <= 0.0)
                throw degenerate_error("db_index: coincident centroids");
            worst = std::max(worst, (spread[i] + spread[j]) / sep);
        }
        db += worst;
    }
    return db / static_cast<double>(k);
}

double silhouette_index(const Snapshot &snapshot, const ClusterSet &clusters)
{
    if (clusters.k < 2)
        throw std::invalid_argument("silhouette_index: need k >= 2");
    const auto members = cluster_members(clusters, snapshot);
    for (const auto &cl : members)
        if (cl.empty())
            throw std::invalid_argument("silhouette_index: empty cluster");
    const DelayStats stats = stats_of_assigned(members);

    double total = 0.0;
    size_t n = 0;
    for (int c = 0; c < clusters.k; c++)
    {
        for (const auto &m : members[c])
        {
            n++;
            if (members[c].size() < 2)
                continue; // singleton contributes 0
            double a = 0.0;
            for (const auto &o : members[c])
                if (&o != &m)
                    a += mcd_delay(m.delay_ns, o.delay_ns, stats);
            a /= static_cast<double>(members[c].size() - 1);

            double b = std::numeric_limits<double>::infinity();
            for (int c2 = 0; c2 < clusters.k; c2++)
            {
                if (c2 == c)
                    continue;
                double d = 0.0;
                for (const auto &o : members[c2])
                    d += mcd_delay(m.delay_ns, o.delay_ns, stats);
                b = std::min(b, d / static_cast<double>(members[c2].size()));
            }
            const double denom = std::max(a, b);
            if (denom > 0.0)
                total += (b - a) / denom;
        }
    }
    return total / static_cast<double>(n);
}

KSweep sweep_k(const Snapshot &snapshot, const KSelectConfig &cfg, std::uint64_t seed)
{
    if (cfg.k_min < 1 || cfg.k_min > cfg.k_max)
        throw std::invalid_argument("sweep_k: need 1 <= k_min <= k_max");
    if (static_cast<size_t>(cfg.k_max) > snapshot.mpcs.size())
        throw std::invalid_argument("sweep_k: k_max exceeds the number of MPCs");

    KSweep sweep;
    for (int k = cfg.k_min; k <= cfg.k_max; k++)
    {
        KSweepEntry e;
        e.k = k;
        e.clusters = kpm_cluster(snapshot, k, mix_seed(seed, static_cast<std::uint64_t>(k)),
                                 cfg.restarts);
        e.db = k >= 2 ? db_index(snapshot, e.clusters) : std::numeric_limits<double>::quiet_NaN();
        e.silhouette =
            k >= 2 ? silhouette_index(snapshot, e.clusters) : std::numeric_limits<double>::quiet_NaN();
        sweep.entries.push_back(std::move(e));
    }

    const KSweepEntry *best = nullptr;
    for (const auto &e : sweep.entries)
    {
        if (std::isnan(e.db) || std::isnan(e.silhouette))
            continue;
        if (best == nullptr)
        {
            best = &e;
            continue;
        }
        bool better = false;
        if (cfg.criterion == KCriterion::db)
            better = cfg.db_select_max ? e.db > best->db : e.db < best->db;
        else
            better = e.silhouette > best->silhouette;
        if (better)
            best = &e;
    }
    if (best == nullptr)
        throw degenerate_error("sweep_k: no candidate K admits a validity index");
    sweep.best_k = best->k;
    return sweep;
}

int optimal_k(const Snapshot &snapshot, const KSelectConfig &cfg, std::uint64_t seed)
{
    return sweep_k(snapshot, cfg, seed).best_k;
}

std::optional<std::size_t> find_los_path(const std::vector<MultipathComponent> &mpcs,
                                         double margin_db)
{
    if (mpcs.size() < 2)
        return std::nullopt;
    size_t top = 0;
    for (size_t i = 1; i < mpcs.size(); i++)
        if (mpcs[i].power_db() > mpcs[top].power_db())
            top = i;
    double runner_up = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < mpcs.size(); i++)
        if (i != top)
            runner_up = std::max(runner_up, mpcs[i].power_db());
    if (mpcs[top].power_db() > runner_up + margin_db)
        return top;
    return std::nullopt;
}

} // namespace agchan
