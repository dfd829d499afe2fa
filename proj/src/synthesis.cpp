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

#include "agchan/synthesis.hpp"
#include "agchan/errors.hpp"
#include "agchan/intra.hpp"
#include "agchan/rng.hpp"
#include "agchan/sage.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace agchan
{

namespace
{

// substream tags so each draw family is independent of the others
constexpr std::uint64_t stream_skeleton = 1;
constexpr std::uint64_t stream_subpath = 2;
constexpr std::uint64_t stream_phase = 3;
constexpr std::uint64_t stream_count = 4;

// highest cluster index the clamp rule admits
constexpr int max_cluster_index = 11;

void check_positive(double v, const char *name)
{
    if (!(v > 0.0) || !std::isfinite(v))
        throw std::invalid_argument(std::string("model parameters: ") + name +
                                    " must be positive and finite");
}

} // namespace

void validate_model_parameters(const ModelParameters &params)
{
    check_positive(params.cluster_count_db.std, "cluster_count_db.std");
    check_positive(params.cluster_count_silhouette.std, "cluster_count_silhouette.std");
    check_positive(params.survival_length.scale, "survival_length.scale");
    check_positive(params.survival_length.shape, "survival_length.shape");
    check_positive(params.rays_per_cluster_db, "rays_per_cluster_db");
    check_positive(params.rays_per_cluster_silhouette, "rays_per_cluster_silhouette");
    check_positive(params.ray_unit_area.scale, "ray_unit_area.scale");
    check_positive(params.ray_unit_area.shape, "ray_unit_area.shape");
    check_positive(params.cluster_kf.std, "cluster_kf.std");
    check_positive(params.cluster_rms_ds.sigma_ln, "cluster_rms_ds.sigma_ln");
    check_positive(params.intra_decay.scale, "intra_decay.scale");
    check_positive(params.intra_decay.shape, "intra_decay.shape");
    check_positive(params.delay_offset.scale, "delay_offset.scale");
    if (params.occurrence.knee < 0)
        throw std::invalid_argument("model parameters: occurrence knee must be >= 0");
    for (double c : {params.delay_index_fit.a1, params.delay_index_fit.b1,
                     params.delay_index_fit.a2, params.delay_index_fit.b2,
                     params.power_delay_fit.a1, params.power_delay_fit.b1,
                     params.power_delay_fit.a2, params.power_delay_fit.b2})
        if (!std::isfinite(c))
            throw std::invalid_argument("model parameters: non-finite fit coefficient");
}

void validate_scenario(const ScenarioConfig &cfg)
{
    if (!(cfg.d_start_m > 0.0) || !(cfg.d_end_m > cfg.d_start_m))
        throw std::invalid_argument("scenario: need d_end > d_start > 0");
    if (cfg.n_snapshots < 1)
        throw std::invalid_argument("scenario: need at least 1 snapshot");
    if (!std::isfinite(cfg.los_excess_db))
        throw std::invalid_argument("scenario: non-finite los_excess_db");
}

namespace
{

std::vector<double> snapshot_distances(const ScenarioConfig &cfg)
{
    std::vector<double> d(static_cast<size_t>(cfg.n_snapshots));
    if (cfg.n_snapshots == 1)
    {
        d[0] = cfg.d_start_m;
        return d;
    }
    const double step = (cfg.d_end_m - cfg.d_start_m) / static_cast<double>(cfg.n_snapshots - 1);
    for (int i = 0; i < cfg.n_snapshots; i++)
        d[static_cast<size_t>(i)] = cfg.d_start_m + step * i;
    return d;
}

struct segment_state
{
    std::uint64_t seg = 0;
    double birth = 0.0;
    double survival = 0.0;
    bool present = false;
};

void draw_segment(segment_state &st, int k, const ModelParameters &params, std::uint64_t seed)
{
    RandomStream rng = RandomStream::substream(
        seed, {stream_skeleton, static_cast<std::uint64_t>(k), st.seg});
    st.survival = rng.weibull(params.survival_length.scale, params.survival_length.shape);
    st.present = rng.uniform01() < occurrence_probability(k, params.occurrence);
}

} // namespace

std::vector<std::vector<ClusterSkeleton>> generate_cluster_skeletons(const ModelParameters &params,
                                                                     const ScenarioConfig &cfg,
                                                                     const SynthesisOptions &opts)
{
    validate_model_parameters(params);
    validate_scenario(cfg);

    // deterministic per-index delay/power
    std::array<double, max_cluster_index + 1> tau{}, pwr{};
    const double power_hi = std::max(550.0, opts.max_delay_ns);
    for (int k = 1; k <= max_cluster_index; k++)
    {
        tau[static_cast<size_t>(k)] = delay_from_index(k, params.delay_index_fit);
        if (tau[static_cast<size_t>(k)] > opts.max_delay_ns)
            throw std::invalid_argument(
                "generate_cluster_skeletons: max_delay_ns too small for the cluster delays");
        pwr[static_cast<size_t>(k)] =
            power_from_delay(tau[static_cast<size_t>(k)], params.power_delay_fit, 25.0, power_hi);
    }

    const std::vector<double> dist = snapshot_distances(cfg);
    std::array<segment_state, max_cluster_index + 1> state{};
    for (int k = 1; k <= max_cluster_index; k++)
    {
        state[static_cast<size_t>(k)].birth = cfg.d_start_m;
        draw_segment(state[static_cast<size_t>(k)], k, params, cfg.rng_seed);
    }

    const NormalParams count =
        opts.use_silhouette_params ? params.cluster_count_silhouette : params.cluster_count_db;

    std::vector<std::vector<ClusterSkeleton>> out(dist.size());
    for (size_t i = 0; i < dist.size(); i++)
    {
        int k_cap = max_cluster_index;
        if (opts.count_mode == CountMode::normal)
        {
            RandomStream crng = RandomStream::substream(
                cfg.rng_seed, {stream_count, static_cast<std::uint64_t>(i)});
            const double draw = std::round(crng.normal(count.mean, count.std));
            k_cap = static_cast<int>(std::min(11.0, std::max(4.0, draw)));
        }
        for (int k = 1; k <= max_cluster_index; k++)
        {
            segment_state &st = state[static_cast<size_t>(k)];
            while (dist[i] >= st.birth + st.survival)
            {
                st.birth += st.survival;
                st.seg++;
                draw_segment(st, k, params, cfg.rng_seed);
            }
            if (!st.present || k > k_cap)
                continue;
            ClusterSkeleton sk;
            sk.index_k = k;
            sk.tau_ns = tau[static_cast<size_t>(k)];
            sk.power_db = pwr[static_cast<size_t>(k)];
            sk.birth_m = st.birth;
            sk.survival_m = st.survival;
            sk.segment = st.seg;
            out[i].push_back(sk);
        }
    }
    return out;
}

std::vector<MultipathComponent> generate_subpaths(const ClusterSkeleton &skeleton,
                                                  const ModelParameters &params,
                                                  std::uint64_t master_seed,
                                                  const SynthesisOptions &opts)
{
    if (skeleton.index_k < 1)
        throw std::invalid_argument("generate_subpaths: bad cluster index");
    RandomStream rng = RandomStream::substream(
        master_seed,
        {stream_subpath, static_cast<std::uint64_t>(skeleton.index_k), skeleton.segment});

    const double rays_mean =
        opts.use_silhouette_params ? params.rays_per_cluster_silhouette : params.rays_per_cluster_db;
    const int n_rays = std::max(1, rng.poisson(rays_mean));

    double area = 0.0, decay = 0.0;
    do
        area = rng.weibull(params.ray_unit_area.scale, params.ray_unit_area.shape);
    while (area <= 1e-12);
    do
        decay = rng.weibull(params.intra_decay.scale, params.intra_decay.shape);
    while (decay <= 1e-12);

    // rectangle identity: delay width = sqrt(A*L/a); offsets live in +-width/2,
    // additionally clamped so delays stay inside the generation window
    const double tau_k = skeleton.tau_ns;
    double half_width = std::sqrt(area * static_cast<double>(n_rays) / decay) / 2.0;
    half_width = std::min(half_width, std::min(tau_k, opts.max_delay_ns - tau_k));

    const double b_k = skeleton.power_db + decay * tau_k;
    std::vector<MultipathComponent> out;
    out.reserve(static_cast<size_t>(n_rays));
    for (int l = 0; l < n_rays; l++)
    {
        double offset = 0.0;
        if (opts.truncate_offsets)
        {
            offset = rng.laplace_truncated(params.delay_offset.location, params.delay_offset.scale,
                                           -half_width, half_width);
        }
        else
        {
            for (int tries = 0; tries < 1000; tries++)
            {
                offset = rng.laplace(params.delay_offset.location, params.delay_offset.scale);
                if (tau_k + offset >= 0.0 && tau_k + offset <= opts.max_delay_ns)
                    break;
                offset = 0.0;
            }
        }
        const double delay = tau_k + offset;
        const double power_db = -decay * delay + b_k;
        out.push_back(MultipathComponent::from_power_db(delay, power_db, rng.phase(), l));
    }
    return out;
}

std::vector<std::complex<double>> assemble_cir(const std::vector<MultipathComponent> &mpcs,
                                               const std::optional<MultipathComponent> &los,
                                               double tap_spacing_ns, int n_taps)
{
    std::vector<MultipathComponent> all = mpcs;
    if (los.has_value())
        all.push_back(*los);
    return synthesize_cir_from_mpcs(all, tap_spacing_ns, n_taps);
}

SnapshotRecord synthesize_record(const ModelParameters &params, const ScenarioConfig &cfg,
                                 const SynthesisOptions &opts)
{
    const auto skeletons = generate_cluster_skeletons(params, cfg, opts);
    const std::vector<double> dist = snapshot_distances(cfg);

    SnapshotRecord record;
    record.meta.max_delay_ns = opts.max_delay_ns;
    record.meta.seed = cfg.rng_seed;

    // per-index cache of the current segment's sub-paths
    std::map<int, std::pair<std::uint64_t, std::vector<MultipathComponent>>> cache;

    for (size_t i = 0; i < skeletons.size(); i++)
    {
        Snapshot snap;
        snap.index = static_cast<int>(i);
        snap.link_distance_m = dist[i];

        double strongest_cluster_db = -std::numeric_limits<double>::infinity();
        std::vector<MultipathComponent> cluster_paths;
        for (const auto &sk : skeletons[i])
        {
            auto it = cache.find(sk.index_k);
            if (it == cache.end() || it->second.first != sk.segment)
            {
                auto subs = generate_subpaths(sk, params, cfg.rng_seed, opts);
                cache[sk.index_k] = {sk.segment, std::move(subs)};
                it = cache.find(sk.index_k);
            }

            RandomStream prng = RandomStream::substream(
                cfg.rng_seed, {stream_phase, static_cast<std::uint64_t>(i),
                               static_cast<std::uint64_t>(sk.index_k)});
            double mean_db = 0.0;
            for (const auto &sub : it->second.second)
            {
                MultipathComponent m = sub;
                m.phase_rad = prng.phase();
                mean_db += m.power_db();
                cluster_paths.push_back(m);
            }
            mean_db /= static_cast<double>(it->second.second.size());
            strongest_cluster_db = std::max(strongest_cluster_db, mean_db);
        }

        if (cfg.los_present)
        {
            const double los_delay = dist[i] / speed_of_light_m_per_ns;
            if (los_delay > opts.max_delay_ns)
                throw std::invalid_argument("synthesize_record: LOS delay exceeds the window");
            if (skeletons[i].empty())
                throw degenerate_error("synthesize_record: no clusters to anchor the LOS power");
            RandomStream prng = RandomStream::substream(
                cfg.rng_seed, {stream_phase, static_cast<std::uint64_t>(i), 0});
            snap.mpcs.push_back(MultipathComponent::from_power_db(
                los_delay, strongest_cluster_db + cfg.los_excess_db, prng.phase(), 0));
        }

        for (auto &m : cluster_paths)
        {
            m.path_id = static_cast<int>(snap.mpcs.size());
            snap.mpcs.push_back(m);
        }
        validate_snapshot(snap, record.meta.max_delay_ns);
        record.snapshots.push_back(std::move(snap));
    }
    return record;
}

WholeLinkMetrics whole_link_metrics(const SnapshotRecord &record)
{
    if (record.snapshots.empty())
        throw std::invalid_argument("whole_link_metrics: empty record");
    WholeLinkMetrics out;
    for (const auto &snap : record.snapshots)
    {
        if (snap.mpcs.size() < 2)
            throw degenerate_error(
                "whole_link_metrics: K-factor undefined on a single-component snapshot");
        out.k_factor_db.push_back(cluster_k_factor(snap.mpcs));
        out.rms_ds_ns.push_back(rms_delay_spread(snap.mpcs));
    }
    const double n = static_cast<double>(record.snapshots.size());
    for (double v : out.k_factor_db)
        out.mean_k_factor_db += v;
    for (double v : out.rms_ds_ns)
        out.mean_rms_ds_ns += v;
    out.mean_k_factor_db /= n;
    out.mean_rms_ds_ns /= n;
    return out;
}

std::vector<CdlEntry> emit_cdl(const ModelParameters &params, int n_clusters,
                               double los_excess_db)
{
    if (n_clusters < 1)
        throw std::invalid_argument("emit_cdl: need at least 1 cluster");
    if (!std::isfinite(los_excess_db))
        throw std::invalid_argument("emit_cdl: non-finite los_excess_db");

    std::vector<double> tau(static_cast<size_t>(n_clusters)), pwr(static_cast<size_t>(n_clusters));
    for (int k = 1; k <= n_clusters; k++)
        tau[static_cast<size_t>(k - 1)] = delay_from_index(k, params.delay_index_fit);
    const double hi = std::max(550.0, tau.back() + 1.0);
    double p_max = -std::numeric_limits<double>::infinity();
    for (int k = 1; k <= n_clusters; k++)
    {
        pwr[static_cast<size_t>(k - 1)] =
            power_from_delay(tau[static_cast<size_t>(k - 1)], params.power_delay_fit, 25.0, hi);
        p_max = std::max(p_max, pwr[static_cast<size_t>(k - 1)]);
    }
    const double p_los = p_max + los_excess_db;

    std::vector<CdlEntry> entries;
    entries.push_back({0, 0.0, 0.0, 0.0});
    for (int k = 1; k <= n_clusters; k++)
        entries.push_back({k, tau[static_cast<size_t>(k - 1)], 0.0,
                           pwr[static_cast<size_t>(k - 1)] - p_los});

    // profile RMS delay spread for the scaled-delay column
    double wsum = 0.0, tsum = 0.0, ssum = 0.0;
    for (const auto &e : entries)
    {
        const double w = std::pow(10.0, e.power_db / 10.0);
        wsum += w;
        tsum += w * e.delay_ns;
        ssum += w * e.delay_ns * e.delay_ns;
    }
    const double mean = tsum / wsum;
    const double ds = std::sqrt(std::max(0.0, ssum / wsum - mean * mean));
    if (ds <= 0.0)
        throw degenerate_error("emit_cdl: zero-spread profile");
    for (auto &e : entries)
        e.scaled_delay = e.delay_ns / ds;
    return entries;
}

const std::vector<CdlEntry> &cdl_reference_table()
{
    static const std::vector<CdlEntry> table = {
        {0, 0.000, 0.000, -0.0},   {1, 25.67, 0.472, -8.9},  {2, 33.71, 0.545, -14.9},
        {3, 42.64, 1.079, -18.5},  {4, 50.12, 1.239, -20.5}, {5, 60.35, 1.395, -21.6},
        {6, 74.29, 1.972, -22.5},  {7, 90.00, 2.958, -23.3}, {8, 131.37, 3.323, -23.8},
        {9, 201.48, 3.647, -24.3}, {10, 389.58, 3.817, -24.8}};
    return table;
}

CdlReport make_cdl_report(const ModelParameters &params, int n_clusters, double los_excess_db)
{
    CdlReport report;
    report.entries = emit_cdl(params, n_clusters, los_excess_db);
    report.generated_delay_1 = delay_from_index(1, params.delay_index_fit);
    report.reference_delay_1 = cdl_reference_table()[1].delay_ns;
    report.delay_divergence =
        std::fabs(report.generated_delay_1 - report.reference_delay_1) > 0.5;
    return report;
}

} // namespace agchan
