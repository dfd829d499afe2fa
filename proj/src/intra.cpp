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

#include "agchan/intra.hpp"
#include "agchan/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace agchan
{

ClusterRectangle rectangle(const std::vector<MultipathComponent> &members)
{
    if (members.size() < 2)
        throw std::invalid_argument("rectangle: need at least 2 members");

    ClusterRectangle r;
    r.member_count = static_cast<int>(members.size());
    r.tau_min = r.tau_max = members[0].delay_ns;
    r.p_min = r.p_max = members[0].power_db();
    double mean_tau = 0.0, mean_p = 0.0;
    for (const auto &m : members)
    {
        r.tau_min = std::min(r.tau_min, m.delay_ns);
        r.tau_max = std::max(r.tau_max, m.delay_ns);
        const double p = m.power_db();
        r.p_min = std::min(r.p_min, p);
        r.p_max = std::max(r.p_max, p);
        mean_tau += m.delay_ns;
        mean_p += p;
    }
    mean_tau /= static_cast<double>(members.size());
    mean_p /= static_cast<double>(members.size());

    if (r.tau_max <= r.tau_min)
        throw degenerate_error("rectangle: zero delay width");

    r.slope_a = (r.p_max - r.p_min) / (r.tau_max - r.tau_min);
    r.intercept_b = mean_p + r.slope_a * mean_tau;
    r.area_b = (r.tau_max - r.tau_min) * (r.p_max - r.p_min);
    r.ray_unit_area = r.area_b / static_cast<double>(members.size());

    // least-squares decay rate (sign flipped so it matches slope_a's
    // P = -a*tau + b convention)
    double sxx = 0.0, sxy = 0.0;
    for (const auto &m : members)
    {
        const double dt = m.delay_ns - mean_tau;
        sxx += dt * dt;
        sxy += dt * (m.power_db() - mean_p);
    }
    r.slope_ls = -sxy / sxx;
    return r;
}

double cluster_k_factor(const std::vector<MultipathComponent> &members)
{
    if (members.size() < 2)
        throw std::invalid_argument("cluster_k_factor: need at least 2 members");
    double total = 0.0, strongest = 0.0;
    for (const auto &m : members)
    {
        const double p = m.power_linear();
        total += p;
        strongest = std::max(strongest, p);
    }
    const double rest = total - strongest;
    if (rest <= 0.0)
        throw degenerate_error("cluster_k_factor: no power outside the strongest ray");
    return 10.0 * std::log10(strongest / rest);
}

double mean_delay(const std::vector<MultipathComponent> &members)
{
    if (members.empty())
        throw std::invalid_argument("mean_delay: empty cluster");
    double psum = 0.0, tsum = 0.0;
    for (const auto &m : members)
    {
        const double p = m.power_linear();
        psum += p;
        tsum += p * m.delay_ns;
    }
    if (psum <= 0.0)
        throw degenerate_error("mean_delay: zero total power");
    return tsum / psum;
}

double rms_delay_spread(const std::vector<MultipathComponent> &members)
{
    const double mu = mean_delay(members);
    double psum = 0.0, ssum = 0.0;
    for (const auto &m : members)
    {
        const double p = m.power_linear();
        psum += p;
        ssum += p * m.delay_ns * m.delay_ns;
    }
    const double var = ssum / psum - mu * mu;
    return std::sqrt(std::max(0.0, var));
}

std::vector<double> delay_offsets(const ClusterSet &clusters, const Snapshot &snapshot)
{
    const auto members = cluster_members(clusters, snapshot);
    std::vector<double> pooled;
    for (const auto &cl : members)
    {
        if (cl.size() < 2)
            continue;
        double mean_tau = 0.0;
        for (const auto &m : cl)
            mean_tau += m.delay_ns;
        mean_tau /= static_cast<double>(cl.size());
        for (const auto &m : cl)
            pooled.push_back(m.delay_ns - mean_tau);
    }
    return pooled;
}

} // namespace agchan
