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

#ifndef agchan_types_H
#define agchan_types_H

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

namespace agchan
{

// One resolved propagation path. The complex amplitude is stored as
// magnitude + phase; power in dB is derived on demand.
struct MultipathComponent
{
    double delay_ns = 0.0;
    double magnitude = 0.0; // linear field amplitude, >= 0
    double phase_rad = 0.0; // [0, 2*pi)
    int path_id = 0;        // index within the snapshot

    double power_linear() const { return magnitude * magnitude; }
    double power_db() const { return 20.0 * std::log10(magnitude); }
    std::complex<double> amplitude() const { return std::polar(magnitude, phase_rad); }

    static MultipathComponent from_power_db(double delay_ns, double power_db, double phase_rad = 0.0,
                                            int path_id = 0)
    {
        MultipathComponent m;
        m.delay_ns = delay_ns;
        m.magnitude = std::pow(10.0, power_db / 20.0);
        m.phase_rad = phase_rad;
        m.path_id = path_id;
        return m;
    }
};

// Wrap an angle into [0, 2*pi).
double wrap_phase(double phase_rad);

// All MPCs observed at one link distance.
struct Snapshot
{
    int index = 0;
    double link_distance_m = 0.0;
    std::vector<MultipathComponent> mpcs;
};

struct RecordMeta
{
    double frequency_hz = 6.5e9;
    double bandwidth_hz = 5.0e8;
    double max_delay_ns = 550.0;
    std::optional<std::uint64_t> seed; // present when the record was synthesized
};

struct SnapshotRecord
{
    RecordMeta meta;
    std::vector<Snapshot> snapshots;
};

// Per-tap power in dB on a uniform delay grid. Bins that carry no usable
// power are absent rather than -inf sentinels.
struct PowerDelayProfile
{
    double tap_spacing_ns = 2.0;
    std::vector<std::optional<double>> taps_db;
};

// Throws std::invalid_argument if any MPC in the snapshot violates the basic
// contract: finite fields, magnitude >= 0, delay within [0, max_delay_ns].
void validate_snapshot(const Snapshot &snapshot, double max_delay_ns);

} // namespace agchan

#endif
