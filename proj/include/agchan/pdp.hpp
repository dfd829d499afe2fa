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

#ifndef agchan_pdp_H
#define agchan_pdp_H

#include <complex>
#include <vector>

#include "agchan/types.hpp"

namespace agchan
{

// Per-tap power (squared magnitude) of a complex CIR, in dB. Output length
// equals input length; zero-magnitude taps come out absent. No normalization.
PowerDelayProfile compute_pdp(const std::vector<std::complex<double>> &cir, double tap_spacing_ns = 2.0);

// Shift the profile so its strongest tap sits at 0 dB and drop every tap more
// than -floor_db below it (the sounder's usable dynamic range). Dropped taps
// are absent entries, not sentinels.
PowerDelayProfile normalize_and_clip(const PowerDelayProfile &pdp, double floor_db = -30.0);

} // namespace agchan

#endif
