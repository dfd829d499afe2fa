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

#include "agchan/sage.hpp"
#include "agchan/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace agchan
{

namespace
{

// pulse support window, in taps, when correlating (the sinc tail beyond is
// below -43 dB and irrelevant for the search)
constexpr int pulse_window = 48;

// sinc(n - s) for tap n and fractional tap position s, using
// sin(pi*(n - s)) = -(-1)^n * sin(pi*s)
inline double pulse_at(int n, double s, double sin_pi_s)
{
    const double d = static_cast<double>(n) - s;
    if (std::fabs(d) < 1e-9)
        return 1.0;
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    return -sign * sin_pi_s / (M_PI * d);
}

struct path_state
{
    double s = 0.0; // delay in taps
    std::complex<double> amp{0.0, 0.0};
};

// captured energy |<x, p(s)>|^2 / ||p(s)||^2 and the projected amplitude,
// over the truncated pulse support
struct projection
{
    double gain = 0.0;
    std::complex<double> amp{0.0, 0.0};
};

projection project(const std::vector<std::complex<double>> &x, double s)
{
    const int n = static_cast<int>(x.size());
    const int lo = std::max(0, static_cast<int>(std::floor(s)) - pulse_window);
    const int hi = std::min(n - 1, static_cast<int>(std::ceil(s)) + pulse_window);
    const double sin_pi_s = std::sin(M_PI * s);
    std::complex<double> corr{0.0, 0.0};
    double norm = 0.0;
    for (int i = lo; i <= hi; i++)
    {
        const double p = pulse_at(i, s, sin_pi_s);
        corr += x[static_cast<size_t>(i)] * p;
        norm += p * p;
    }
    projection out;
    if (norm <= 0.0)
        return out;
    out.amp = corr / norm;
    out.gain = std::norm(corr) / norm;
    return out;
}

double energy(const std::vector<std::complex<double>> &x)
{
    double e = 0.0;
    for (const auto &v : x)
        e += std::norm(v);
    return e;
}

void add_pulse(std::vector<std::complex<double>> &x, double s, std::complex<double> amp)
{
    const double sin_pi_s = std::sin(M_PI * s);
    for (int i = 0; i < static_cast<int>(x.size()); i++)
        x[static_cast<size_t>(i)] += amp * pulse_at(i, s, sin_pi_s);
}

// best delay on a grid slice [s_lo, s_hi] with the given step, refined by a
// parabolic vertex probe that is only accepted when it improves the gain
double search_delay(const std::vector<std::complex<double>> &x, double s_lo, double s_hi,
                    double step, double s_max)
{
    s_lo = std::max(0.0, s_lo);
    s_hi = std::min(s_max, s_hi);
    double best_s = s_lo, best_gain = -1.0;
    const int steps = static_cast<int>(std::floor((s_hi - s_lo) / step + 0.5));
    for (int i = 0; i <= steps; i++)
    {
        const double s = std::min(s_hi, s_lo + i * step);
        const double g = project(x, s).gain;
        if (g > best_gain)
        {
            best_gain = g;
            best_s = s;
        }
    }

    // parabolic vertex through the best grid point and its neighbours
    const double sm = best_s - step, sp = best_s + step;
    if (sm >= 0.0 && sp <= s_max)
    {
        const double fm = project(x, sm).gain;
        const double fp = project(x, sp).gain;
        const double denom = fp - 2.0 * best_gain + fm;
        if (denom < 0.0)
        {
            double t = -(fp - fm) / (2.0 * denom);
            t = std::max(-1.0, std::min(1.0, t));
            const double sv = best_s + t * step;
            if (project(x, sv).gain > best_gain)
                best_s = sv;
        }
    }
    return best_s;
}

} // namespace

EstimateResult estimate_mpcs(const std::vector<std::complex<double>> &cir,
                             double tap_spacing_ns, const EstimatorConfig &cfg)
{
    if (cir.size() < 2)
        throw std::invalid_argument("estimate_mpcs: need at least 2 taps");
    if (tap_spacing_ns <= 0.0)
        throw std::invalid_argument("estimate_mpcs: tap spacing must be positive");
    if (cfg.max_paths < 1 || cfg.delay_grid_oversampling < 1 || cfg.convergence_tol <= 0.0 ||
        cfg.max_iterations < 0)
        throw std::invalid_argument("estimate_mpcs: bad estimator config");
    for (const auto &v : cir)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("estimate_mpcs: non-finite tap");

    const double total_energy = energy(cir);
    if (total_energy <= 0.0)
        throw degenerate_error("estimate_mpcs: all-zero input");

    const double s_max = static_cast<double>(cir.size() - 1);
    const double step = 1.0 / static_cast<double>(cfg.delay_grid_oversampling);

    // successive cancellation: strongest correlation peak, subtract, repeat
    std::vector<path_state> paths;
    std::vector<std::complex<double>> residual = cir;
    double strongest = 0.0;
    for (int l = 0; l < cfg.max_paths; l++)
    {
        const double s = search_delay(residual, 0.0, s_max, step, s_max);
        const projection pr = project(residual, s);
        if (pr.gain <= 0.0)
            break;
        const double p = std::norm(pr.amp);
        strongest = std::max(strongest, p);
        if (p < strongest * std::pow(10.0, cfg.prune_floor_db / 10.0))
            break;
        paths.push_back({s, pr.amp});
        add_pulse(residual, s, -pr.amp);
        if (energy(residual) < total_energy * 1e-22)
            break;
    }

    // EM sweeps: each path refines against residual + own contribution; an
    // update is only kept when it does not raise the exact residual energy,
    // so the per-sweep energy sequence is non-increasing by construction
    EstimateResult result;
    result.initial_energy = total_energy;
    double prev_residual = energy(residual);
    for (int it = 0; it < cfg.max_iterations && !paths.empty(); it++)
    {
        double max_change = 0.0;
        for (auto &path : paths)
        {
            std::vector<std::complex<double>> own = residual;
            add_pulse(own, path.s, path.amp);

            double s_new = search_delay(own, path.s - 2.0, path.s + 2.0, step, s_max);
            projection cur = project(own, path.s);
            projection cand = project(own, s_new);
            if (cur.gain >= cand.gain)
            {
                s_new = path.s;
                cand = cur;
            }

            std::vector<std::complex<double>> trial = own;
            add_pulse(trial, s_new, -cand.amp);
            const double e_trial = energy(trial);
            if (e_trial > prev_residual)
                continue; // truncated-window projection misled; keep the path

            const double ds = std::fabs(s_new - path.s) / std::max(path.s, 1.0);
            const double da = std::abs(cand.amp - path.amp) /
                              std::max(std::abs(path.amp), 1e-300);
            max_change = std::max(max_change, std::max(ds, da));

            residual = std::move(trial);
            prev_residual = e_trial;
            path.s = s_new;
            path.amp = cand.amp;
        }
        const double res_energy = energy(residual);
        if (!result.residual_history.empty() &&
            res_energy > result.residual_history.back() * (1.0 + 1e-9) + 1e-300)
            throw std::logic_error("estimate_mpcs: residual energy increased");
        prev_residual = res_energy;
        result.residual_history.push_back(res_energy);
        if (max_change < cfg.convergence_tol)
            break;
    }
    result.residual_energy = prev_residual;

    // prune relative to the strongest refined path
    double peak = 0.0;
    for (const auto &p : paths)
        peak = std::max(peak, std::norm(p.amp));
    const double floor_lin = peak * std::pow(10.0, cfg.prune_floor_db / 10.0);
    std::vector<path_state> kept;
    for (const auto &p : paths)
        if (std::norm(p.amp) >= floor_lin && std::norm(p.amp) > 0.0)
            kept.push_back(p);

    std::sort(kept.begin(), kept.end(),
              [](const path_state &a, const path_state &b) { return a.s < b.s; });
    for (size_t i = 0; i < kept.size(); i++)
    {
        MultipathComponent m;
        m.delay_ns = kept[i].s * tap_spacing_ns;
        m.magnitude = std::abs(kept[i].amp);
        m.phase_rad = wrap_phase(std::arg(kept[i].amp));
        m.path_id = static_cast<int>(i);
        result.mpcs.push_back(m);
    }
    return result;
}

std::vector<std::complex<double>> synthesize_cir_from_mpcs(
    const std::vector<MultipathComponent> &mpcs, double tap_spacing_ns, int n_taps)
{
    if (tap_spacing_ns <= 0.0 || n_taps < 1)
        throw std::invalid_argument("synthesize_cir_from_mpcs: bad tap grid");
    std::vector<std::complex<double>> cir(static_cast<size_t>(n_taps), {0.0, 0.0});
    for (const auto &m : mpcs)
    {
        const double s = m.delay_ns / tap_spacing_ns;
        if (s < 0.0 || s >= static_cast<double>(n_taps))
            throw std::invalid_argument("synthesize_cir_from_mpcs: delay outside the tap grid");
        add_pulse(cir, s, m.amplitude());
    }
    return cir;
}

} // namespace agchan
