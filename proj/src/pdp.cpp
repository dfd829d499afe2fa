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

#include "agchan/pdp.hpp"

#include <cmath>
#include <stdexcept>

#include "agchan/errors.hpp"

namespace agchan
{

PowerDelayProfile compute_pdp(const std::vector<std::complex<double>> &cir, double tap_spacing_ns)
{
    if (cir.empty())
        throw std::invalid_argument("compute_pdp: empty CIR");
    if (!(tap_spacing_ns > 0.0))
        throw std::invalid_argument("compute_pdp: tap spacing must be positive");

    PowerDelayProfile pdp;
    pdp.tap_spacing_ns = tap_spacing_ns;
    pdp.taps_db.resize(cir.size());
    for (std::size_t i = 0; i < cir.size(); ++i)
    {
        if (!std::isfinite(cir[i].real()) || !std::isfinite(cir[i].imag()))
            throw std::invalid_argument("compute_pdp: non-finite sample at tap " + std::to_string(i));
        const double p = std::norm(cir[i]);
        if (p > 0.0)
            pdp.taps_db[i] = 10.0 * std::log10(p);
    }
    return pdp;
}

PowerDelayProfile normalize_and_clip(const PowerDelayProfile &pdp, double floor_db)
{
    if (!(floor_db < 0.0))
        throw std::invalid_argument("normalize_and_clip: floor must be negative dB");

    double peak = -std::numeric_limits<double>::infinity();
    for (const auto &t : pdp.taps_db)
        if (t && *t > peak)
            peak = *t;
    if (!std::isfinite(peak))
        throw degenerate_error("normalize_and_clip: profile has no usable taps");

    PowerDelayProfile out;
    out.tap_spacing_ns = pdp.tap_spacing_ns;
    out.taps_db.resize(pdp.taps_db.size());
    for (std::size_t i = 0; i < pdp.taps_db.size(); ++i)
    {
        if (!pdp.taps_db[i])
            continue;
        const double rel = *pdp.taps_db[i] - peak;
        if (rel >= floor_db)
            out.taps_db[i] = rel;
    }
    return out;
}

} // namespace agchan
