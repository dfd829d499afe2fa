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

#ifndef agchan_cli_H
#define agchan_cli_H

#include "agchan/synthesis.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <string>

namespace agchan
{

namespace exit_code
{
constexpr int success = 0;
constexpr int usage = 2;
constexpr int parse = 3;
constexpr int numeric = 4;
constexpr int validation = 5;
} // namespace exit_code

// Everything a command run depends on; filled by the CLI parser. Randomized
// stages record the seed in their output documents.
struct RunConfig
{
    std::string command;

    std::string input_path;
    std::string output_path;
    std::string params_path;       // model parameter document
    std::string clusters_path;     // clustering document (characterize, track)
    std::string trajectories_path; // trajectory document (fit, optional)
    std::string cir_output_path;   // raw-CIR emission (synthesize, optional)
    std::uint64_t seed = 1;

    // estimate
    int max_paths = 50;
    int oversampling = 8;
    int max_iterations = 50;
    double convergence_tol = 1e-4;
    double prune_floor_db = -30.0;

    // cluster
    int k_min = 4;
    int k_max = 10;
    std::string criterion = "db"; // db | silhouette
    bool db_select_max = false;
    int restarts = 10;
    double los_margin_db = 5.0;
    bool keep_los = false;

    // characterize / fit
    bool silhouette_count = false;

    // track
    std::string weights = "3d"; // delay | power | 3d
    double link_threshold = 0.1;

    // synthesize
    double d_start_m = 10.0;
    double d_end_m = 50.0;
    int n_snapshots = 100;
    bool no_los = false;
    double los_excess_db = default_los_excess_db;
    bool silhouette_params = false;
    std::string count_mode = "occurrence"; // occurrence | normal
    bool no_truncation = false;
    double max_delay_ns = 960.0;
    double tap_spacing_ns = 2.0;

    // cdl
    int n_clusters = 10;
    bool reference_table = false;

    // validate
    double target_ds_ns = 68.42;
    double ds_tol_frac = 0.15;
    double target_kf_db = 0.60;
    double kf_tol_db = 1.5;
};

// Registers every subcommand and flag on the app and binds them to cfg.
// The parsed subcommand name lands in cfg.command.
void register_cli(CLI::App &app, RunConfig &cfg);

// Executes cfg.command. Throws module errors; returns an exit code
// (validation failures return exit_code::validation instead of throwing).
int run_command(const RunConfig &cfg);

// Maps a thrown error to the documented exit code and prints a
// machine-readable error record to stderr.
int handle_error(const std::exception &err);

} // namespace agchan

#endif
