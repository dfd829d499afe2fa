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

#include "cli.hpp"

#include "agchan/clustering.hpp"
#include "agchan/distributions.hpp"
#include "agchan/errors.hpp"
#include "agchan/inter.hpp"
#include "agchan/intra.hpp"
#include "agchan/io.hpp"
#include "agchan/rng.hpp"
#include "agchan/sage.hpp"
#include "agchan/tracking.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>

using nlohmann::json;

namespace agchan
{

namespace
{

// log verbosity from AGCHAN_LOG: quiet | info (default) | debug
int log_level()
{
    const char *v = std::getenv("AGCHAN_LOG");
    if (v == nullptr)
        return 1;
    const std::string s(v);
    if (s == "quiet")
        return 0;
    if (s == "debug")
        return 2;
    return 1;
}

void log_info(const std::string &msg)
{
    if (log_level() >= 1)
        std::cerr << "agchan: " << msg << "\n";
}

void log_debug(const std::string &msg)
{
    if (log_level() >= 2)
        std::cerr << "agchan[debug]: " << msg << "\n";
}

json load_json_doc(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw parse_error(path, "-", "cannot open");
    json doc = json::parse(in, nullptr, false);
    if (doc.is_discarded())
        throw parse_error(path, "-", "invalid JSON");
    return doc;
}

ModelParameters load_params(const RunConfig &cfg)
{
    if (cfg.params_path.empty())
        return ModelParameters{};
    return read_parameters(cfg.params_path);
}

int cmd_estimate(const RunConfig &cfg)
{
    const CirRecord cir = read_cir_record(cfg.input_path);
    EstimatorConfig ec;
    ec.max_paths = cfg.max_paths;
    ec.delay_grid_oversampling = cfg.oversampling;
    ec.max_iterations = cfg.max_iterations;
    ec.convergence_tol = cfg.convergence_tol;
    ec.prune_floor_db = cfg.prune_floor_db;

    SnapshotRecord rec;
    rec.meta = cir.meta;
    for (const auto &snap : cir.snapshots)
    {
        const EstimateResult est = estimate_mpcs(snap.taps, cir.tap_spacing_ns, ec);
        Snapshot s;
        s.index = snap.index;
        s.link_distance_m = snap.link_distance_m;
        s.mpcs = est.mpcs;
        rec.snapshots.push_back(std::move(s));
        log_debug("snapshot " + std::to_string(snap.index) + ": " +
                  std::to_string(est.mpcs.size()) + " paths, residual " +
                  std::to_string(est.residual_energy / std::max(est.initial_energy, 1e-300)));
    }
    write_record(cfg.output_path, rec);
    log_info("estimated " + std::to_string(rec.snapshots.size()) + " snapshots -> " +
             cfg.output_path);
    return exit_code::success;
}

KCriterion parse_criterion(const std::string &name)
{
    if (name == "db")
        return KCriterion::db;
    if (name == "silhouette")
        return KCriterion::silhouette;
    throw std::invalid_argument("unknown criterion: " + name);
}

int cmd_cluster(const RunConfig &cfg)
{
    const SnapshotRecord rec = read_record(cfg.input_path);
    KSelectConfig kc;
    kc.criterion = parse_criterion(cfg.criterion);
    kc.db_select_max = cfg.db_select_max;
    kc.restarts = cfg.restarts;

    ClusteringResult result;
    result.seed = cfg.seed;
    for (const auto &snap : rec.snapshots)
    {
        Snapshot work = snap;
        if (!cfg.keep_los)
        {
            const auto los = find_los_path(work.mpcs, cfg.los_margin_db);
            if (los.has_value())
                work.mpcs.erase(work.mpcs.begin() + static_cast<std::ptrdiff_t>(*los));
        }
        std::set<double> distinct;
        for (const auto &m : work.mpcs)
            distinct.insert(m.delay_ns);
        kc.k_max = std::min(cfg.k_max, static_cast<int>(distinct.size()));
        kc.k_min = std::min(cfg.k_min, kc.k_max);
        const KSweep sweep = sweep_k(work, kc, mix_seed(cfg.seed, static_cast<std::uint64_t>(
                                                                      snap.index)));
        for (const auto &entry : sweep.entries)
            if (entry.k == sweep.best_k)
            {
                ClusterSet best = entry.clusters;
                best.snapshot_index = snap.index;
                result.snapshots.push_back(std::move(best));
                break;
            }
        log_debug("snapshot " + std::to_string(snap.index) + ": K = " +
                  std::to_string(sweep.best_k));
    }
    write_clustering(cfg.output_path, result);
    log_info("clustered " + std::to_string(result.snapshots.size()) + " snapshots -> " +
             cfg.output_path);
    return exit_code::success;
}

int cmd_characterize(const RunConfig &cfg)
{
    const SnapshotRecord rec = read_record(cfg.input_path);
    const ClusteringResult clusters = read_clustering(cfg.clusters_path);

    std::map<int, const Snapshot *> by_index;
    for (const auto &snap : rec.snapshots)
        by_index[snap.index] = &snap;

    json out;
    out["format"] = "agchan-characterization";
    out["seed"] = clusters.seed;
    out["snapshots"] = json::array();
    std::vector<double> offsets_pool;
    std::vector<int> counts;

    for (const auto &cs : clusters.snapshots)
    {
        const auto it = by_index.find(cs.snapshot_index);
        if (it == by_index.end())
            throw parse_error(cfg.clusters_path,
                              "snapshot_index " + std::to_string(cs.snapshot_index),
                              "no such snapshot in the record");
        const Snapshot &snap = *it->second;
        const auto members = cluster_members(cs, snap);
        counts.push_back(cs.k);

        json jsnap;
        jsnap["snapshot_index"] = cs.snapshot_index;
        jsnap["link_distance_m"] = snap.link_distance_m;
        jsnap["clusters"] = json::array();
        for (int c = 1; c <= cs.k; c++)
        {
            const auto &mem = members[static_cast<size_t>(c - 1)];
            json jc;
            jc["cluster"] = c;
            jc["member_count"] = mem.size();
            jc["centroid_delay_ns"] = cs.centroids[static_cast<size_t>(c - 1)];
            double mean_p = 0.0;
            for (const auto &m : mem)
                mean_p += m.power_db();
            jc["mean_power_db"] = mean_p / static_cast<double>(mem.size());
            jc["rms_ds_ns"] = rms_delay_spread(mem);
            if (mem.size() >= 2)
            {
                jc["k_factor_db"] = cluster_k_factor(mem);
                try
                {
                    const ClusterRectangle r = rectangle(mem);
                    jc["decay_db_per_ns"] = r.slope_a;
                    jc["area_db_ns"] = r.area_b;
                    jc["ray_unit_area_db_ns"] = r.ray_unit_area;
                }
                catch (const degenerate_error &)
                {
                    // zero-width cluster: no rectangle statistics
                }
            }
            jsnap["clusters"].push_back(std::move(jc));
        }
        out["snapshots"].push_back(std::move(jsnap));

        for (double d : delay_offsets(cs, snap))
            offsets_pool.push_back(d);
    }
    out["delay_offsets_ns"] = offsets_pool;
    out["cluster_counts"] = counts;
    write_text(cfg.output_path, out.dump(2) + "\n");
    log_info("characterized " + std::to_string(counts.size()) + " snapshots -> " +
             cfg.output_path);
    return exit_code::success;
}

int cmd_track(const RunConfig &cfg)
{
    const SnapshotRecord rec = read_record(cfg.input_path);
    const ClusteringResult clusters = read_clustering(cfg.clusters_path);

    TrackingWeights w;
    if (cfg.weights == "delay")
        w = weights_delay_2d();
    else if (cfg.weights == "power")
        w = weights_power_2d();
    else if (cfg.weights == "3d")
        w = weights_3d();
    else
        throw std::invalid_argument("unknown weights: " + cfg.weights);

    const FeatureScaling scaling = make_feature_scaling(rec);
    const auto features = extract_features(rec, clusters.snapshots, scaling);
    const auto trajectories = track(features, w, cfg.link_threshold);
    write_trajectories(cfg.output_path, trajectories);

    const auto lengths = survival_lengths(trajectories);
    double mean_len = 0.0;
    for (double v : lengths)
        mean_len += v;
    if (!lengths.empty())
        mean_len /= static_cast<double>(lengths.size());
    log_info("tracked " + std::to_string(features.size()) + " clusters into " +
             std::to_string(trajectories.size()) + " trajectories (mean survival " +
             std::to_string(mean_len) + " m) -> " + cfg.output_path);
    return exit_code::success;
}

json fit_to_report(const DistributionFit &fit)
{
    json j;
    j["family"] = family_name(fit.family);
    j["param1"] = fit.param1;
    j["param2"] = fit.param2;
    j["ks_statistic"] = fit.ks_statistic;
    j["ks_pass"] = fit.ks_pass;
    j["n"] = fit.n;
    return j;
}

// one curve-fit attempt per starting point, kept whether or not the
// optimizer settled; the caller picks among them
struct CurveCandidate
{
    DoubleExponentialFit fit;
    bool converged;
};

std::vector<CurveCandidate> fit_curve_candidates(const std::vector<double> &xs,
                                                 const std::vector<double> &ys,
                                                 const std::vector<DoubleExponentialFit> &starts)
{
    std::vector<CurveCandidate> out;
    for (const auto &start : starts)
    {
        try
        {
            out.push_back({fit_double_exponential(xs, ys, start), true});
        }
        catch (const fit_failure &e)
        {
            out.push_back({e.best, false});
        }
    }
    return out;
}

// best usable candidate: converged beats stalled, lower rmse breaks ties;
// returns null when every candidate fails the usability check
const CurveCandidate *pick_curve_fit(const std::vector<CurveCandidate> &cands,
                                     const std::function<bool(const DoubleExponentialFit &)> &ok)
{
    const CurveCandidate *best = nullptr;
    for (const auto &c : cands)
    {
        if (!ok(c.fit))
            continue;
        if (best == nullptr || (c.converged && !best->converged) ||
            (c.converged == best->converged && c.fit.rmse < best->fit.rmse))
            best = &c;
    }
    return best;
}

double curve_rmse(const std::vector<double> &xs, const std::vector<double> &ys,
                  const DoubleExponentialFit &f)
{
    double sse = 0.0;
    for (size_t i = 0; i < xs.size(); i++)
    {
        const double r = f.eval(xs[i]) - ys[i];
        sse += r * r;
    }
    return std::sqrt(sse / static_cast<double>(xs.size()));
}

int cmd_fit(const RunConfig &cfg)
{
    const json doc = load_json_doc(cfg.input_path);
    if (!doc.contains("snapshots") || !doc["snapshots"].is_array())
        throw parse_error(cfg.input_path, "snapshots", "missing or non-array field");

    std::vector<double> idx_x, idx_y, pd_x, pd_y;
    std::vector<double> kf_pool, ds_pool, decay_pool, area_pool, offsets;
    std::vector<int> counts;
    double rays_sum = 0.0;
    std::size_t rays_n = 0;

    for (const auto &jsnap : doc["snapshots"])
    {
        if (!jsnap.contains("clusters") || !jsnap["clusters"].is_array())
            throw parse_error(cfg.input_path, "clusters", "missing or non-array field");
        counts.push_back(static_cast<int>(jsnap["clusters"].size()));
        for (const auto &jc : jsnap["clusters"])
        {
            if (!jc.contains("centroid_delay_ns") || !jc["centroid_delay_ns"].is_number())
                throw parse_error(cfg.input_path, "centroid_delay_ns",
                                  "missing or non-numeric field");
            const double delay = jc["centroid_delay_ns"].get<double>();
            const int rank = jc["cluster"].get<int>();
            idx_x.push_back(static_cast<double>(rank - 1));
            idx_y.push_back(delay);
            if (jc.contains("mean_power_db") && jc["mean_power_db"].is_number())
            {
                pd_x.push_back(delay);
                pd_y.push_back(jc["mean_power_db"].get<double>());
            }
            if (jc.contains("k_factor_db") && jc["k_factor_db"].is_number())
                kf_pool.push_back(jc["k_factor_db"].get<double>());
            if (jc.contains("rms_ds_ns") && jc["rms_ds_ns"].is_number() &&
                jc["rms_ds_ns"].get<double>() > 0.0)
                ds_pool.push_back(jc["rms_ds_ns"].get<double>());
            if (jc.contains("decay_db_per_ns") && jc["decay_db_per_ns"].is_number() &&
                jc["decay_db_per_ns"].get<double>() > 0.0)
                decay_pool.push_back(jc["decay_db_per_ns"].get<double>());
            if (jc.contains("ray_unit_area_db_ns") && jc["ray_unit_area_db_ns"].is_number() &&
                jc["ray_unit_area_db_ns"].get<double>() > 0.0)
                area_pool.push_back(jc["ray_unit_area_db_ns"].get<double>());
            if (jc.contains("member_count") && jc["member_count"].is_number_integer())
            {
                rays_sum += jc["member_count"].get<double>();
                rays_n++;
            }
        }
    }
    if (doc.contains("delay_offsets_ns"))
        for (const auto &v : doc["delay_offsets_ns"])
            offsets.push_back(v.get<double>());

    ModelParameters p;
    json report;
    report["format"] = "agchan-fit-report";

    // delay growth data is strictly positive, so a log-linear seed is usually
    // available on top of the built-in model curve
    std::vector<DoubleExponentialFit> delay_starts;
    DoubleExponentialFit delay_seed{};
    bool have_delay_seed = false;
    try
    {
        delay_seed = log_linear_init(idx_x, idx_y);
        delay_starts.push_back(delay_seed);
        have_delay_seed = true;
    }
    catch (const std::exception &)
    {
        // non-positive or degenerate delays: the model seed alone has to do
    }
    delay_starts.push_back(delay_index_model());

    // scattered per-rank delays can pull the optimizer into a pair of huge
    // nearly-cancelling exponentials whose difference bends down and goes
    // negative just past the observed ranks; synthesis evaluates this curve
    // at whatever rank the count draw produces, so demand a finite, positive,
    // nondecreasing curve well beyond the data before accepting a candidate
    const double max_rank = *std::max_element(idx_x.begin(), idx_x.end());
    auto delay_usable = [max_rank](const DoubleExponentialFit &f) {
        double prev = 0.0;
        for (double x = 0.0; x <= 2.0 * max_rank + 2.0; x += 0.25)
        {
            const double v = f.eval(x);
            if (!std::isfinite(v) || v <= 0.0 || v + 1e-9 < prev)
                return false;
            prev = v;
        }
        return true;
    };

    const auto delay_cands = fit_curve_candidates(idx_x, idx_y, delay_starts);
    const CurveCandidate *delay_pick = pick_curve_fit(delay_cands, delay_usable);
    bool delay_converged = false;
    if (delay_pick != nullptr)
    {
        p.delay_index_fit = delay_pick->fit;
        delay_converged = delay_pick->converged;
    }
    else if (have_delay_seed && delay_usable(delay_seed))
    {
        // every optimized candidate bent unphysically; the plain log-linear
        // curve at least grows monotonically, so report it unconverged
        delay_seed.rmse = curve_rmse(idx_x, idx_y, delay_seed);
        p.delay_index_fit = delay_seed;
    }
    else
    {
        delay_pick = pick_curve_fit(delay_cands, [](const DoubleExponentialFit &) { return true; });
        if (delay_pick == nullptr)
            throw degenerate_error("fit: no usable delay growth curve");
        p.delay_index_fit = delay_pick->fit;
    }

    const auto power_cands = fit_curve_candidates(pd_x, pd_y, {power_delay_model()});
    const CurveCandidate *power_pick =
        pick_curve_fit(power_cands, [](const DoubleExponentialFit &) { return true; });
    if (power_pick == nullptr)
        throw degenerate_error("fit: no usable power decay curve");
    p.power_delay_fit = power_pick->fit;

    report["delay_index_rmse"] = p.delay_index_fit.rmse;
    report["delay_index_converged"] = delay_converged;
    report["power_delay_rmse"] = p.power_delay_fit.rmse;
    report["power_delay_converged"] = power_pick->converged;

    // presence frequency of rank k = share of snapshots holding >= k clusters
    std::map<int, double> presence;
    const int max_count = counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
    for (int k = 1; k <= max_count; k++)
    {
        int hit = 0;
        for (int c : counts)
            if (c >= k)
                hit++;
        presence[k] = static_cast<double>(hit) / static_cast<double>(counts.size());
    }
    p.occurrence = fit_occurrence(presence);

    const DistributionFit count_fit = cluster_count_stats(counts);
    if (cfg.silhouette_count)
        p.cluster_count_silhouette = {count_fit.param1, count_fit.param2};
    else
        p.cluster_count_db = {count_fit.param1, count_fit.param2};
    report["cluster_count"] = fit_to_report(count_fit);

    if (rays_n == 0)
        throw degenerate_error("fit: no cluster member counts in the input");
    const double rays_mean = rays_sum / static_cast<double>(rays_n);
    if (cfg.silhouette_count)
        p.rays_per_cluster_silhouette = rays_mean;
    else
        p.rays_per_cluster_db = rays_mean;
    report["rays_per_cluster_mean"] = rays_mean;

    const DistributionFit area_fit = fit_distribution(area_pool, DistFamily::weibull);
    p.ray_unit_area = {area_fit.param1, area_fit.param2};
    report["ray_unit_area"] = fit_to_report(area_fit);

    const DistributionFit kf_fit = fit_distribution(kf_pool, DistFamily::normal);
    p.cluster_kf = {kf_fit.param1, kf_fit.param2};
    report["cluster_kf"] = fit_to_report(kf_fit);

    const DistributionFit ds_fit = fit_distribution(ds_pool, DistFamily::lognormal);
    p.cluster_rms_ds = {ds_fit.param1, ds_fit.param2};
    report["cluster_rms_ds"] = fit_to_report(ds_fit);

    const DistributionFit decay_fit = fit_distribution(decay_pool, DistFamily::weibull);
    p.intra_decay = {decay_fit.param1, decay_fit.param2};
    report["intra_decay"] = fit_to_report(decay_fit);

    const DistributionFit offset_fit = fit_distribution(offsets, DistFamily::laplace);
    p.delay_offset = {offset_fit.param1, offset_fit.param2};
    report["delay_offset"] = fit_to_report(offset_fit);

    if (!cfg.trajectories_path.empty())
    {
        const auto trajectories = read_trajectories(cfg.trajectories_path);
        const DistributionFit surv = fit_survival(survival_lengths(trajectories));
        p.survival_length = {surv.param1, surv.param2};
        report["survival_length"] = fit_to_report(surv);
    }

    write_parameters(cfg.output_path, p);
    std::cout << report.dump(2) << "\n";
    log_info("fitted model parameters -> " + cfg.output_path);
    return exit_code::success;
}

int cmd_synthesize(const RunConfig &cfg)
{
    const ModelParameters p = load_params(cfg);
    ScenarioConfig sc;
    sc.d_start_m = cfg.d_start_m;
    sc.d_end_m = cfg.d_end_m;
    sc.n_snapshots = cfg.n_snapshots;
    sc.los_present = !cfg.no_los;
    sc.los_excess_db = cfg.los_excess_db;
    sc.rng_seed = cfg.seed;

    SynthesisOptions opts;
    opts.use_silhouette_params = cfg.silhouette_params;
    if (cfg.count_mode == "occurrence")
        opts.count_mode = CountMode::occurrence;
    else if (cfg.count_mode == "normal")
        opts.count_mode = CountMode::normal;
    else
        throw std::invalid_argument("unknown count mode: " + cfg.count_mode);
    opts.truncate_offsets = !cfg.no_truncation;
    opts.max_delay_ns = cfg.max_delay_ns;
    opts.tap_spacing_ns = cfg.tap_spacing_ns;

    const SnapshotRecord rec = synthesize_record(p, sc, opts);
    write_record(cfg.output_path, rec);
    log_info("synthesized " + std::to_string(rec.snapshots.size()) + " snapshots -> " +
             cfg.output_path);

    if (!cfg.cir_output_path.empty())
    {
        CirRecord cir;
        cir.meta = rec.meta;
        cir.tap_spacing_ns = opts.tap_spacing_ns;
        const int n_taps =
            static_cast<int>(std::ceil(opts.max_delay_ns / opts.tap_spacing_ns)) + 1;
        for (const auto &snap : rec.snapshots)
        {
            CirSnapshot cs;
            cs.index = snap.index;
            cs.link_distance_m = snap.link_distance_m;
            cs.taps = assemble_cir(snap.mpcs, std::nullopt, opts.tap_spacing_ns, n_taps);
            cir.snapshots.push_back(std::move(cs));
        }
        write_cir_record(cfg.cir_output_path, cir);
        log_info("rendered raw CIRs -> " + cfg.cir_output_path);
    }
    return exit_code::success;
}

int cmd_cdl(const RunConfig &cfg)
{
    if (cfg.reference_table)
    {
        write_cdl_csv(cfg.output_path, cdl_reference_table());
        log_info("published reference table -> " + cfg.output_path);
        return exit_code::success;
    }
    const ModelParameters p = load_params(cfg);
    const CdlReport report = make_cdl_report(p, cfg.n_clusters, cfg.los_excess_db);
    write_cdl_csv(cfg.output_path, report.entries);

    json j;
    j["generated_delay_1_ns"] = report.generated_delay_1;
    j["reference_delay_1_ns"] = report.reference_delay_1;
    j["delay_divergence"] = report.delay_divergence;
    std::cout << j.dump(2) << "\n";
    log_info("emitted " + std::to_string(report.entries.size()) + " CDL rows -> " +
             cfg.output_path);
    return exit_code::success;
}

int cmd_validate(const RunConfig &cfg)
{
    const SnapshotRecord rec = read_record(cfg.input_path);
    const WholeLinkMetrics metrics = whole_link_metrics(rec);

    json j;
    j["format"] = "agchan-validation";
    j["n_snapshots"] = rec.snapshots.size();
    j["mean_k_factor_db"] = metrics.mean_k_factor_db;
    j["mean_rms_ds_ns"] = metrics.mean_rms_ds_ns;
    j["target_k_factor_db"] = cfg.target_kf_db;
    j["target_rms_ds_ns"] = cfg.target_ds_ns;

    const bool kf_ok = std::fabs(metrics.mean_k_factor_db - cfg.target_kf_db) <= cfg.kf_tol_db;
    const bool ds_ok = std::fabs(metrics.mean_rms_ds_ns - cfg.target_ds_ns) <=
                       cfg.ds_tol_frac * cfg.target_ds_ns;
    j["k_factor_ok"] = kf_ok;
    j["rms_ds_ok"] = ds_ok;
    j["pass"] = kf_ok && ds_ok;

    // distribution shape of the per-snapshot metrics, when enough samples
    try
    {
        j["k_factor_fit"] = fit_to_report(select_best_fit(metrics.k_factor_db));
        j["rms_ds_fit"] = fit_to_report(select_best_fit(metrics.rms_ds_ns));
    }
    catch (const std::exception &)
    {
        // too few snapshots for a fit; metrics alone still validate
    }

    std::cout << j.dump(2) << "\n";
    if (!cfg.output_path.empty())
        write_text(cfg.output_path, j.dump(2) + "\n");
    return (kf_ok && ds_ok) ? exit_code::success : exit_code::validation;
}

} // namespace

void register_cli(CLI::App &app, RunConfig &cfg)
{
    app.require_subcommand(1);
    app.footer("exit codes: 0 success, 2 usage, 3 parse, 4 numeric/degenerate, "
               "5 validation failure\nenvironment: AGCHAN_LOG=quiet|info|debug");

    auto *est = app.add_subcommand("estimate", "Extract multipath components from raw CIRs");
    est->callback([&cfg] { cfg.command = "estimate"; });
    est->add_option("-i,--input", cfg.input_path, "raw CIR record (JSON)")->required();
    est->add_option("-o,--output", cfg.output_path, "snapshot record output (JSON)")->required();
    est->add_option("--max-paths", cfg.max_paths, "path count ceiling");
    est->add_option("--oversampling", cfg.oversampling, "delay grid points per tap");
    est->add_option("--max-iterations", cfg.max_iterations, "refinement sweep ceiling");
    est->add_option("--tol", cfg.convergence_tol, "relative convergence tolerance");
    est->add_option("--prune-floor-db", cfg.prune_floor_db,
                    "drop paths below this level relative to the strongest");

    auto *clu = app.add_subcommand("cluster", "Group each snapshot's components into clusters");
    clu->callback([&cfg] { cfg.command = "cluster"; });
    clu->add_option("-i,--input", cfg.input_path, "snapshot record (JSON)")->required();
    clu->add_option("-o,--output", cfg.output_path, "clustering output (JSON)")->required();
    clu->add_option("--seed", cfg.seed, "seed for the restart initializations");
    clu->add_option("--k-min", cfg.k_min, "smallest cluster count to try");
    clu->add_option("--k-max", cfg.k_max, "largest cluster count to try");
    clu->add_option("--criterion", cfg.criterion, "cluster-count selector: db | silhouette");
    clu->add_flag("--db-max", cfg.db_select_max, "pick the Davies-Bouldin maximizer");
    clu->add_option("--restarts", cfg.restarts, "independent initializations per K");
    clu->add_option("--los-margin-db", cfg.los_margin_db,
                    "dominance margin for line-of-sight exclusion");
    clu->add_flag("--keep-los", cfg.keep_los, "cluster the line-of-sight path too");

    auto *cha = app.add_subcommand("characterize",
                                   "Per-cluster geometry and statistics of a clustered record");
    cha->callback([&cfg] { cfg.command = "characterize"; });
    cha->add_option("-i,--input", cfg.input_path, "snapshot record (JSON)")->required();
    cha->add_option("-c,--clusters", cfg.clusters_path, "clustering document (JSON)")->required();
    cha->add_option("-o,--output", cfg.output_path, "characterization output (JSON)")->required();

    auto *trk = app.add_subcommand("track", "Link clusters across snapshots into trajectories");
    trk->callback([&cfg] { cfg.command = "track"; });
    trk->add_option("-i,--input", cfg.input_path, "snapshot record (JSON)")->required();
    trk->add_option("-c,--clusters", cfg.clusters_path, "clustering document (JSON)")->required();
    trk->add_option("-o,--output", cfg.output_path, "trajectory output (JSON)")->required();
    trk->add_option("--weights", cfg.weights, "feature weights: delay | power | 3d");
    trk->add_option("--link-threshold", cfg.link_threshold, "largest link distance accepted");

    auto *fit = app.add_subcommand("fit", "Fit the stochastic model to a characterization");
    fit->callback([&cfg] { cfg.command = "fit"; });
    fit->add_option("-i,--input", cfg.input_path, "characterization document (JSON)")->required();
    fit->add_option("-o,--output", cfg.output_path, "model parameter output (JSON)")->required();
    fit->add_option("-t,--trajectories", cfg.trajectories_path,
                    "trajectory document for the survival fit (JSON)");
    fit->add_flag("--silhouette-count", cfg.silhouette_count,
                  "store count statistics in the silhouette slot");

    auto *syn = app.add_subcommand("synthesize", "Generate a stochastic snapshot record");
    syn->callback([&cfg] { cfg.command = "synthesize"; });
    syn->add_option("-o,--output", cfg.output_path, "snapshot record output (JSON)")->required();
    syn->add_option("-p,--params", cfg.params_path, "model parameter document (JSON)");
    syn->add_option("--cir-out", cfg.cir_output_path, "also render raw CIRs to this path");
    syn->add_option("--seed", cfg.seed, "master seed, recorded in the output");
    syn->add_option("--d-start", cfg.d_start_m, "first link distance, m");
    syn->add_option("--d-end", cfg.d_end_m, "last link distance, m");
    syn->add_option("--snapshots", cfg.n_snapshots, "snapshot count");
    syn->add_flag("--no-los", cfg.no_los, "omit the line-of-sight component");
    syn->add_option("--los-excess-db", cfg.los_excess_db,
                    "line-of-sight power over the strongest cluster mean");
    syn->add_flag("--silhouette-params", cfg.silhouette_params,
                  "use the silhouette-criterion count/ray parameters");
    syn->add_option("--count-mode", cfg.count_mode,
                    "cluster-count rule: occurrence | normal");
    syn->add_flag("--no-truncation", cfg.no_truncation,
                  "draw delay offsets without the width cut");
    syn->add_option("--max-delay-ns", cfg.max_delay_ns, "generation window, ns");
    syn->add_option("--tap-spacing-ns", cfg.tap_spacing_ns, "CIR tap spacing, ns");

    auto *cdl = app.add_subcommand("cdl", "Emit the clustered-delay-line table as CSV");
    cdl->callback([&cfg] { cfg.command = "cdl"; });
    cdl->add_option("-o,--output", cfg.output_path, "CSV output path")->required();
    cdl->add_option("-p,--params", cfg.params_path, "model parameter document (JSON)");
    cdl->add_option("--clusters", cfg.n_clusters, "cluster row count");
    cdl->add_option("--los-excess-db", cfg.los_excess_db,
                    "line-of-sight excess used for the 0 dB reference");
    cdl->add_flag("--reference", cfg.reference_table,
                  "write the published reference table instead of the model table");

    auto *val = app.add_subcommand("validate", "Whole-link metrics of a record vs. targets");
    val->callback([&cfg] { cfg.command = "validate"; });
    val->add_option("-i,--input", cfg.input_path, "snapshot record (JSON)")->required();
    val->add_option("-o,--output", cfg.output_path, "also write the report to this path");
    val->add_option("--target-ds-ns", cfg.target_ds_ns, "RMS delay spread target, ns");
    val->add_option("--ds-tol", cfg.ds_tol_frac, "relative delay-spread tolerance");
    val->add_option("--target-kf-db", cfg.target_kf_db, "K-factor target, dB");
    val->add_option("--kf-tol-db", cfg.kf_tol_db, "absolute K-factor tolerance, dB");
}

int run_command(const RunConfig &cfg)
{
    if (cfg.command == "estimate")
        return cmd_estimate(cfg);
    if (cfg.command == "cluster")
        return cmd_cluster(cfg);
    if (cfg.command == "characterize")
        return cmd_characterize(cfg);
    if (cfg.command == "track")
        return cmd_track(cfg);
    if (cfg.command == "fit")
        return cmd_fit(cfg);
    if (cfg.command == "synthesize")
        return cmd_synthesize(cfg);
    if (cfg.command == "cdl")
        return cmd_cdl(cfg);
    if (cfg.command == "validate")
        return cmd_validate(cfg);
    std::cerr << "agchan: unknown command\n";
    return exit_code::usage;
}

int handle_error(const std::exception &err)
{
    json j;
    int code = exit_code::numeric;
    if (const auto *pe = dynamic_cast<const parse_error *>(&err))
    {
        j["error"]["type"] = "parse";
        j["error"]["path"] = pe->path();
        j["error"]["field"] = pe->field();
        code = exit_code::parse;
    }
    else if (dynamic_cast<const degenerate_error *>(&err) != nullptr)
        j["error"]["type"] = "degenerate";
    else if (dynamic_cast<const std::domain_error *>(&err) != nullptr)
        j["error"]["type"] = "domain";
    else if (dynamic_cast<const std::invalid_argument *>(&err) != nullptr)
        j["error"]["type"] = "invalid-argument";
    else
        j["error"]["type"] = "numeric";
    j["error"]["message"] = err.what();
    std::cerr << j.dump() << "\n";
    return code;
}

} // namespace agchan
