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

#include "agchan/types.hpp"

#include <stdexcept>
#include <string>

namespace agchan
{

double wrap_phase(double phase_rad)
{
    const double two_pi = 2.0 * 3.141592653589793238462643383279502884;
    double p = std::fmod(phase_rad, two_pi);
    if (p < 0.0)
        p += two_pi;
    return p;
}

void validate_snapshot(const Snapshot &snapshot, double max_delay_ns)
{
    if (snapshot.link_distance_m <= 0.0 || !std::isfinite(snapshot.link_distance_m))
        throw std::invalid_argument("snapshot " + std::to_string(snapshot.index) +
                                    ": link distance must be positive");
    for (const auto &m : snapshot.mpcs)
    {
        if (!std::isfinite(m.delay_ns) || !std::isfinite(m.magnitude) || !std::isfinite(m.phase_rad))
            throw std::invalid_argument("snapshot " + std::to_string(snapshot.index) + ", path " +
                                        std::to_string(m.path_id) + ": non-finite field");
        if (m.magnitude < 0.0)
            throw std::invalid_argument("snapshot " + std::to_string(snapshot.index) + ", path " +
                                        std::to_string(m.path_id) + ": negative magnitude");
        if (m.delay_ns < 0.0 || m.delay_ns > max_delay_ns)
            throw std::invalid_argument("snapshot " + std::to_string(snapshot.index) + ", path " +
                                        std::to_string(m.path_id) + ": delay " +
                                        std::to_string(m.delay_ns) + " ns outside [0, " +
                                        std::to_string(max_delay_ns) + "]");
    }
}

} // namespace agchan
