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

#include "agchan/io.hpp"
#include "agchan/errors.hpp"

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

using nlohmann::json;

namespace agchan
{

// stage-and-rename so readers never observe a half-written document
void write_text(const std::string &path, const std::string &body)
{
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw parse_error(path, "-", "cannot open for writing");
        out << body;
        out.flush();
        if (!out)
            throw parse_error(path, "-", "write failed");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        throw parse_error(path, "-", "rename failed: " + ec.message());
}

namespace
{

json load_json(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw parse_error(path, "-", "cannot open");
    json doc = json::parse(in, nullptr, false);
    if (doc.is_discarded())
        throw parse_error(path, "-", "invalid JSON");
    return doc;
}

// typed field access with path/field diagnostics
double get_num(const json &obj, const std::string &path, const std::string &field)
{
    if (!obj.contains(field) || !obj[field].is_number())
        throw parse_error(path, field, "missing or non-numeric field");
    return obj[field].get<double>();
}

int get_int(const json &obj, const std::string &path, const std::string &field)
{
    if (!obj.contains(field) || !obj[field].is_number_integer())
        throw parse_error(path, field, "missing or non-integer field");
    return obj[field].get<int>();
}

const json &get_array(const json &obj, const std::string &path, const std::string &field)
{
    if (!obj.contains(field) || !obj[field].is_array())
        throw parse_error(path, field, "missing or non-array field");
    return obj[field];
}

const json &get_object(const json &obj, const std::string &path, const std::string &field)
{
    if (!obj.contains(field) || !obj[field].is_object())
        throw parse_error(path, field, "missing or non-object field");
    return obj[field];
}

void check_format(const json &j, const std::string &path, const std::string &tag)
{
    if (!j.contains("format") || !j["format"].is_string() ||
        j["format"].get<std::string>() != tag)
        throw parse_error(path, "format", "expected \"" + tag + "\"");
}

json meta_to_json(const RecordMeta &meta)
{
    json j;
    j["frequency_hz"] = meta.frequency_hz;
    j["bandwidth_hz"] = meta.bandwidth_hz;
    j["max_delay_ns"] = meta.max_delay_ns;
    if (meta.seed.has_value())
        j["seed"] = *meta.seed;
    return j;
}

RecordMeta meta_from_json(const json &j, const std::string &path)
{
    RecordMeta meta;
    meta.frequency_hz = get_num(j, path, "frequency_hz");
    meta.bandwidth_hz = get_num(j, path, "bandwidth_hz");
    meta.max_delay_ns = get_num(j, path, "max_delay_ns");
    if (j.contains("seed"))
    {
        if (!j["seed"].is_number_unsigned())
            throw parse_error(path, "seed", "must be a non-negative integer");
        meta.seed = j["seed"].get<std::uint64_t>();
    }
    return meta;
}

} // namespace

void write_record(const std::string &path, const SnapshotRecord &record)
{
    json j;
    j["format"] = "agchan-record";
    j["meta"] = meta_to_json(record.meta);
    j["snapshots"] = json::array();
    for (const auto &snap : record.snapshots)
    {
        json js;
        js["index"] = snap.index;
        js["link_distance_m"] = snap.link_distance_m;
        js["mpcs"] = json::array();
        for (const auto &m : snap.mpcs)
        {
            json jm;
            jm["path_id"] = m.path_id;
            jm["delay_ns"] = m.delay_ns;
            jm["magnitude"] = m.magnitude;
            jm["phase_rad"] = m.phase_rad;
            js["mpcs"].push_back(std::move(jm));
        }
        j["snapshots"].push_back(std::move(js));
    }
    write_text(path, j.dump(2) + "\n");
}

SnapshotRecord read_record(const std::string &path)
{
    const json j = load_json(path);
    check_format(j, path, "agchan-record");
    SnapshotRecord record;
    record.meta = meta_from_json(get_object(j, path, "meta"), path);
    for (const auto &js : get_array(j, path, "snapshots"))
    {
        Snapshot snap;
        snap.index = get_int(js, path, "index");
        snap.link_distance_m = get_num(js, path, "link_distance_m");
        for (const auto &jm : get_array(js, path, "mpcs"))
        {
            MultipathComponent m;
            m.path_id = get_int(jm, path, "path_id");
            m.delay_ns = get_num(jm, path, "delay_ns");
            m.magnitude = get_num(jm, path, "magnitude");
            m.phase_rad = get_num(jm, path, "phase_rad");
            snap.mpcs.push_back(m);
        }
        record.snapshots.push_back(std::move(snap));
    }
    return record;
}

void write_cir_record(const std::string &path, const CirRecord &record)
{
    json j;
    j["format"] = "agchan-cir";
    j["meta"] = meta_to_json(record.meta);
    j["tap_spacing_ns"] = record.tap_spacing_ns;
    j["snapshots"] = json::array();
    for (const auto &snap : record.snapshots)
    {
        json js;
        js["index"] = snap.index;
        js["link_distance_m"] = snap.link_distance_m;
        json re = json::array(), im = json::array();
        for (const auto &tap : snap.taps)
        {
            re.push_back(tap.real());
            im.push_back(tap.imag());
        }
        js["taps_real"] = std::move(re);
        js["taps_imag"] = std::move(im);
        j["snapshots"].push_back(std::move(js));
    }
    write_text(path, j.dump(2) + "\n");
}

CirRecord read_cir_record(const std::string &path)
{
    const json j = load_json(path);
    check_format(j, path, "agchan-cir");
    CirRecord record;
    record.meta = meta_from_json(get_object(j, path, "meta"), path);
    record.tap_spacing_ns = get_num(j, path, "tap_spacing_ns");
    for (const auto &js : get_array(j, path, "snapshots"))
    {
        CirSnapshot snap;
        snap.index = get_int(js, path, "index");
        snap.link_distance_m = get_num(js, path, "link_distance_m");
        const json &re = get_array(js, path, "taps_real");
        const json &im = get_array(js, path, "taps_imag");
        if (re.size() != im.size())
            throw parse_error(path, "taps_imag", "length differs from taps_real");
        for (size_t t = 0; t < re.size(); t++)
        {
            if (!re[t].is_number() || !im[t].is_number())
                throw parse_error(path, "taps_real", "non-numeric tap");
            snap.taps.emplace_back(re[t].get<double>(), im[t].get<double>());
        }
        record.snapshots.push_back(std::move(snap));
    }
    return record;
}

void write_clustering(const std::string &path, const ClusteringResult &result)
{
    json j;
    j["format"] = "agchan-clusters";
    j["seed"] = result.seed;
    j["snapshots"] = json::array();
    for (const auto &cs : result.snapshots)
    {
        json jc;
        jc["snapshot_index"] = cs.snapshot_index;
        jc["k"] = cs.k;
        jc["objective"] = cs.objective;
        jc["n_iterations"] = cs.n_iterations;
        jc["centroids"] = cs.centroids;
        jc["centroid_powers_db"] = cs.centroid_powers_db;
        jc["assignments"] = json::array();
        for (const auto &[path_id, cluster] : cs.assignments)
        {
            json ja;
            ja["path_id"] = path_id;
            ja["cluster"] = cluster;
            jc["assignments"].push_back(std::move(ja));
        }
        j["snapshots"].push_back(std::move(jc));
    }
    write_text(path, j.dump(2) + "\n");
}

ClusteringResult read_clustering(const std::string &path)
{
    const json j = load_json(path);
    check_format(j, path, "agchan-clusters");
    ClusteringResult out;
    if (!j.contains("seed") || !j["seed"].is_number_unsigned())
        throw parse_error(path, "seed", "missing or non-integer field");
    out.seed = j["seed"].get<std::uint64_t>();
    for (const auto &jc : get_array(j, path, "snapshots"))
    {
        ClusterSet cs;
        cs.snapshot_index = get_int(jc, path, "snapshot_index");
        cs.k = get_int(jc, path, "k");
        cs.objective = get_num(jc, path, "objective");
        cs.n_iterations = get_int(jc, path, "n_iterations");
        for (const auto &c : get_array(jc, path, "centroids"))
        {
            if (!c.is_number())
                throw parse_error(path, "centroids", "non-numeric centroid");
            cs.centroids.push_back(c.get<double>());
        }
        for (const auto &c : get_array(jc, path, "centroid_powers_db"))
        {
            if (!c.is_number())
                throw parse_error(path, "centroid_powers_db", "non-numeric value");
            cs.centroid_powers_db.push_back(c.get<double>());
        }
        for (const auto &ja : get_array(jc, path, "assignments"))
            cs.assignments[get_int(ja, path, "path_id")] = get_int(ja, path, "cluster");
        out.snapshots.push_back(std::move(cs));
    }
    return out;
}

void write_trajectories(const std::string &path, const std::vector<Trajectory> &trajectories)
{
    json j;
    j["format"] = "agchan-trajectories";
    j["trajectories"] = json::array();
    for (const auto &traj : trajectories)
    {
        json jt;
        jt["survival_length_m"] = traj.survival_length_m;
        jt["members"] = json::array();
        for (const auto &f : traj.members)
        {
            json jf;
            jf["snapshot_index"] = f.snapshot_index;
            jf["cluster_id"] = f.cluster_id;
            jf["link_distance_m"] = f.link_distance_m;
            jf["delay_ns"] = f.delay_ns;
            jf["power_db"] = f.power_db;
            jf["norm_distance"] = f.norm_distance;
            jf["norm_power"] = f.norm_power;
            jf["norm_delay"] = f.norm_delay;
            jt["members"].push_back(std::move(jf));
        }
        j["trajectories"].push_back(std::move(jt));
    }
    write_text(path, j.dump(2) + "\n");
}

std::vector<Trajectory> read_trajectories(const std::string &path)
{
    const json j = load_json(path);
    check_format(j, path, "agchan-trajectories");
    std::vector<Trajectory> out;
    for (const auto &jt : get_array(j, path, "trajectories"))
    {
        Trajectory traj;
        traj.survival_length_m = get_num(jt, path, "survival_length_m");
        for (const auto &jf : get_array(jt, path, "members"))
        {
            ClusterFeature f;
            f.snapshot_index = get_int(jf, path, "snapshot_index");
            f.cluster_id = get_int(jf, path, "cluster_id");
            f.link_distance_m = get_num(jf, path, "link_distance_m");
            f.delay_ns = get_num(jf, path, "delay_ns");
            f.power_db = get_num(jf, path, "power_db");
            f.norm_distance = get_num(jf, path, "norm_distance");
            f.norm_power = get_num(jf, path, "norm_power");
            f.norm_delay = get_num(jf, path, "norm_delay");
            traj.members.push_back(f);
        }
        out.push_back(std::move(traj));
    }
    return out;
}

namespace
{

json normal_to_json(const NormalParams &p) { return {{"mean", p.mean}, {"std", p.std}}; }
json weibull_to_json(const WeibullParams &p) { return {{"scale", p.scale}, {"shape", p.shape}}; }
json fit_to_json(const DoubleExponentialFit &f)
{
    return {{"a1", f.a1}, {"b1", f.b1}, {"a2", f.a2}, {"b2", f.b2}, {"rmse", f.rmse}};
}

NormalParams normal_from_json(const json &j, const std::string &path)
{
    return {get_num(j, path, "mean"), get_num(j, path, "std")};
}

WeibullParams weibull_from_json(const json &j, const std::string &path)
{
    return {get_num(j, path, "scale"), get_num(j, path, "shape")};
}

DoubleExponentialFit fit_from_json(const json &j, const std::string &path)
{
    DoubleExponentialFit f;
    f.a1 = get_num(j, path, "a1");
    f.b1 = get_num(j, path, "b1");
    f.a2 = get_num(j, path, "a2");
    f.b2 = get_num(j, path, "b2");
    f.rmse = get_num(j, path, "rmse");
    return f;
}

} // namespace

void write_parameters(const std::string &path, const ModelParameters &params)
{
    json j;
    j["format"] = "agchan-parameters";
    j["cluster_count_db"] = normal_to_json(params.cluster_count_db);
    j["cluster_count_silhouette"] = normal_to_json(params.cluster_count_silhouette);
    j["survival_length_m"] = weibull_to_json(params.survival_length);
    j["occurrence"] = {{"slope", params.occurrence.slope},
                       {"intercept", params.occurrence.intercept},
                       {"knee", params.occurrence.knee}};
    j["rays_per_cluster_db"] = params.rays_per_cluster_db;
    j["rays_per_cluster_silhouette"] = params.rays_per_cluster_silhouette;
    j["ray_unit_area"] = weibull_to_json(params.ray_unit_area);
    j["cluster_kf_db"] = normal_to_json(params.cluster_kf);
    j["cluster_rms_ds"] = {{"mu_ln", params.cluster_rms_ds.mu_ln},
                           {"sigma_ln", params.cluster_rms_ds.sigma_ln}};
    j["intra_decay"] = weibull_to_json(params.intra_decay);
    j["delay_offset"] = {{"location", params.delay_offset.location},
                         {"scale", params.delay_offset.scale}};
    j["delay_index_fit"] = fit_to_json(params.delay_index_fit);
    j["power_delay_fit"] = fit_to_json(params.power_delay_fit);
    write_text(path, j.dump(2) + "\n");
}

ModelParameters read_parameters(const std::string &path)
{
    const json j = load_json(path);
    check_format(j, path, "agchan-parameters");
    ModelParameters p;
    p.cluster_count_db = normal_from_json(get_object(j, path, "cluster_count_db"), path);
    p.cluster_count_silhouette =
        normal_from_json(get_object(j, path, "cluster_count_silhouette"), path);
    p.survival_length = weibull_from_json(get_object(j, path, "survival_length_m"), path);
    const json &jo = get_object(j, path, "occurrence");
    p.occurrence.slope = get_num(jo, path, "slope");
    p.occurrence.intercept = get_num(jo, path, "intercept");
    p.occurrence.knee = get_int(jo, path, "knee");
    p.rays_per_cluster_db = get_num(j, path, "rays_per_cluster_db");
    p.rays_per_cluster_silhouette = get_num(j, path, "rays_per_cluster_silhouette");
    p.ray_unit_area = weibull_from_json(get_object(j, path, "ray_unit_area"), path);
    p.cluster_kf = normal_from_json(get_object(j, path, "cluster_kf_db"), path);
    const json &jr = get_object(j, path, "cluster_rms_ds");
    p.cluster_rms_ds.mu_ln = get_num(jr, path, "mu_ln");
    p.cluster_rms_ds.sigma_ln = get_num(jr, path, "sigma_ln");
    p.intra_decay = weibull_from_json(get_object(j, path, "intra_decay"), path);
    const json &jd = get_object(j, path, "delay_offset");
    p.delay_offset.location = get_num(jd, path, "location");
    p.delay_offset.scale = get_num(jd, path, "scale");
    p.delay_index_fit = fit_from_json(get_object(j, path, "delay_index_fit"), path);
    p.power_delay_fit = fit_from_json(get_object(j, path, "power_delay_fit"), path);
    return p;
}

namespace
{

// shortest-round-trip formatting so CSV reals survive write/read bit-exactly
std::string fmt_double(double v)
{
    char buf[64];
    for (int prec = 1; prec <= 17; prec++)
    {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v)
            return buf;
    }
    return buf;
}

} // namespace

void write_cdl_csv(const std::string &path, const std::vector<CdlEntry> &entries)
{
    std::ostringstream out;
    out << "index,delay_ns,scaled_delay,power_db\n";
    for (const auto &e : entries)
        out << e.index << ',' << fmt_double(e.delay_ns) << ',' << fmt_double(e.scaled_delay) << ','
            << fmt_double(e.power_db) << '\n';
    write_text(path, out.str());
}

std::vector<CdlEntry> read_cdl_csv(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw parse_error(path, "-", "cannot open");
    std::string line;
    if (!std::getline(in, line))
        throw parse_error(path, "header", "empty file");
    if (line.size() && line.back() == '\r')
        line.pop_back();
    if (line != "index,delay_ns,scaled_delay,power_db")
        throw parse_error(path, "header", "expected index,delay_ns,scaled_delay,power_db");

    std::vector<CdlEntry> out;
    int line_no = 1;
    while (std::getline(in, line))
    {
        line_no++;
        if (line.size() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::istringstream row(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(row, cell, ','))
            cells.push_back(cell);
        if (cells.size() != 4)
            throw parse_error(path, "line " + std::to_string(line_no), "expected 4 columns");
        try
        {
            CdlEntry e;
            e.index = std::stoi(cells[0]);
            e.delay_ns = std::stod(cells[1]);
            e.scaled_delay = std::stod(cells[2]);
            e.power_db = std::stod(cells[3]);
            out.push_back(e);
        }
        catch (const std::exception &)
        {
            throw parse_error(path, "line " + std::to_string(line_no), "non-numeric cell");
        }
    }
    return out;
}

} // namespace agchan
