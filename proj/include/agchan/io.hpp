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

#ifndef agchan_io_H
#define agchan_io_H

#include "agchan/clustering.hpp"
#include "agchan/synthesis.hpp"
#include "agchan/tracking.hpp"
#include "agchan/types.hpp"

#include <complex>
#include <string>
#include <vector>

namespace agchan
{

// Complex impulse-response record on a uniform tap grid; the raw-data input
// of the path estimator and the optional raw output of the synthesizer.
struct CirSnapshot
{
    int index = 0;
    double link_distance_m = 0.0;
    std::vector<std::complex<double>> taps;
};

struct CirRecord
{
    RecordMeta meta;
    double tap_spacing_ns = 2.0;
    std::vector<CirSnapshot> snapshots;
};

// All writers are atomic: the document is staged in a sibling temp file and
// renamed over the target. All readers throw parse_error naming the file and
// the offending field. Numeric fields round-trip bit-exactly (shortest
// round-trip float formatting).

void write_record(const std::string &path, const SnapshotRecord &record);
SnapshotRecord read_record(const std::string &path);

void write_cir_record(const std::string &path, const CirRecord &record);
CirRecord read_cir_record(const std::string &path);

// Clustering output with the seed that produced it (restart seeding is
// randomized, so reproducibility needs the seed in the document).
struct ClusteringResult
{
    std::uint64_t seed = 0;
    std::vector<ClusterSet> snapshots;
};

void write_clustering(const std::string &path, const ClusteringResult &result);
ClusteringResult read_clustering(const std::string &path);

void write_trajectories(const std::string &path, const std::vector<Trajectory> &trajectories);
std::vector<Trajectory> read_trajectories(const std::string &path);

void write_parameters(const std::string &path, const ModelParameters &params);
ModelParameters read_parameters(const std::string &path);

// CSV with header "index,delay_ns,scaled_delay,power_db".
void write_cdl_csv(const std::string &path, const std::vector<CdlEntry> &entries);
std::vector<CdlEntry> read_cdl_csv(const std::string &path);

// Atomic plain-text write (temp + rename), shared by all writers.
void write_text(const std::string &path, const std::string &body);

} // namespace agchan

#endif
