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

#include "agchan/inter.hpp"
#include "agchan/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <set>

namespace agchan
{

double DoubleExponentialFit::eval(double x) const
{
    return a1 * std::exp(b1 * x) + a2 * std::exp(b2 * x);
}

DoubleExponentialFit delay_index_model()
{
    DoubleExponentialFit f;
    f.a1 = 29.38;
    f.b1 = 0.183;
    f.a2 = 0.0113;
    f.b2 = 1.106;
    return f;
}

DoubleExponentialFit power_delay_model()
{
    DoubleExponentialFit f;
    f.a1 = 100.9;
    f.b1 = -0.07998;
    f.a2 = -23.3;
    f.b2 = 0.00015;
    return f;
}

double delay_from_index(int k, const DoubleExponentialFit &fit)
{
    if (k < 1)
        throw std::invalid_argument("delay_from_index: cluster index starts at 1");
    return fit.eval(static_cast<double>(k - 1));
}

double power_from_delay(double tau_ns, const DoubleExponentialFit &fit, double tau_lo_ns,
                        double tau_hi_ns)
{
    if (tau_ns < tau_lo_ns || tau_ns > tau_hi_ns)
        throw std::domain_error("power_from_delay: delay outside the calibrated window");
    return fit.eval(tau_ns);
}

namespace
{

// solve A x = b for a 4x4 system, partial pivoting; returns false if singular
bool solve4(std::array<std::array<double, 5>, 4> m, std::array<double, 4> &x)
{
    for (int col = 0; col < 4; col++)
    {
        int piv = col;
        for (int r = col + 1; r < 4; r++)
            if (std::fabs(m[r][col]) > std::fabs(m[piv][col]))
                piv = r;
        if (std::fabs(m[piv][col]) < 1e-300)
            return false;
        std::swap(m[col], m[piv]);
        for (int r = 0; r < 4; r++)
        {
            if (r == col)
                continue;
            const double f = m[r][col] / m[col][col];
            for (int c = col; c < 5; c++)
                m[r][c] -= f * m[col][c];
        }
    }
    for (int r = 0; r < 4; r++)
        x[r] = m[r][4] / m[r][r];
    return true;
}

double sse_of(const std::vector<double> &xs, const std::vector<double> &ys,
              const DoubleExponentialFit &f)
{
    double sse = 0.0;
    for (size_t i = 0; i < xs.size(); i++)
    {
        const double r = f.eval(xs[i]) - ys[i];
        if (!std::isfinite(r))
            return std::numeric_limits<double>::infinity();
        sse += r * r;
    }
    return sse;
}

} // namespace

DoubleExponentialFit fit_double_exponential(const std::vector<double> &xs,
                                            const std::vector<double> &ys,
                                            const DoubleExponentialFit &init)
{
    if (xs.size() != ys.size())
        throw std::invalid_argument("fit_double_exponential: size mismatch");
    std::set<double> distinct(xs.begin(), xs.end());
    if (distinct.size() < 6)
        throw std::invalid_argument("fit_double_exponential: need at least 6 distinct x values");
    for (size_t i = 0; i < xs.size(); i++)
        if (!std::isfinite(xs[i]) || !std::isfinite(ys[i]))
            throw std::invalid_argument("fit_double_exponential: non-finite input");

    DoubleExponentialFit cur = init;
    double sse = sse_of(xs, ys, cur);
    const double n = static_cast<double>(xs.size());
    double lambda = 1e-3;
    bool stationary = false;

    for (int it = 0; it < 500 && !stationary && sse > 0.0; it++)
    {
        // normal equations of the damped step
        std::array<std::array<double, 5>, 4> m{};
        for (size_t i = 0; i < xs.size(); i++)
        {
            const double e1 = std::exp(cur.b1 * xs[i]), e2 = std::exp(cur.b2 * xs[i]);
            const std::array<double, 4> j = {e1, cur.a1 * xs[i] * e1, e2, cur.a2 * xs[i] * e2};
            const double r = cur.a1 * e1 + cur.a2 * e2 - ys[i];
            for (int a = 0; a < 4; a++)
            {
                for (int b = 0; b < 4; b++)
                    m[a][b] += j[a] * j[b];
                m[a][4] -= j[a] * r;
            }
        }

        bool accepted = false;
        for (int damp = 0; damp < 60; damp++)
        {
            auto md = m;
            for (int a = 0; a < 4; a++)
                md[a][a] += lambda * std::max(m[a][a], 1e-12);
            std::array<double, 4> step{};
            if (solve4(md, step))
            {
                DoubleExponentialFit trial = cur;
                trial.a1 += step[0];
                trial.b1 += step[1];
                trial.a2 += step[2];
                trial.b2 += step[3];
                const double trial_sse = sse_of(xs, ys, trial);
                if (trial_sse <= sse)
                {
                    const double rel = (sse - trial_sse) / std::max(sse, 1e-300);
                    cur = trial;
                    sse = trial_sse;
                    lambda = std::max(lambda / 3.0, 1e-12);
                    accepted = true;
                    if (rel < 1e-14)
                        stationary = true; // no measurable progress left
                    break;
                }
            }
            lambda *= 4.0;
        }
        if (!accepted)
            stationary = true; // fully damped and still no descent direction
    }

    cur.rmse = std::sqrt(sse / n);
    if (!stationary && sse > 0.0)
        throw fit_failure("fit_double_exponential: did not converge", cur);
    return cur;
}

DoubleExponentialFit log_linear_init(const std::vector<double> &xs, const std::vector<double> &ys)
{
    if (xs.size() != ys.size())
        throw std::invalid_argument("log_linear_init: size mismatch");
    if (xs.size() < 2)
        throw std::invalid_argument("log_linear_init: need at least 2 points");
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < xs.size(); i++)
    {
        if (!std::isfinite(xs[i]) || !(ys[i] > 0.0))
            throw std::invalid_argument("log_linear_init: needs finite x and positive y");
        mx += xs[i];
        my += std::log(ys[i]);
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < xs.size(); i++)
    {
        const double dx = xs[i] - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(ys[i]) - my);
    }
    if (sxx <= 0.0)
        throw degenerate_error("log_linear_init: zero x spread");

    DoubleExponentialFit f;
    f.b1 = sxy / sxx;
    f.a1 = std::exp(my - f.b1 * mx);
    f.a2 = 1e-3 * f.a1;
    f.b2 = f.b1 + 0.5;
    return f;
}

double OccurrenceModel::zero_crossing() const
{
    if (slope >= 0.0)
        return std::numeric_limits<double>::infinity();
    return -intercept / slope;
}

double occurrence_probability(int k, const OccurrenceModel &m)
{
    if (k < 1)
        throw std::invalid_argument("occurrence_probability: cluster index starts at 1");
    if (k <= m.knee)
        return 1.0;
    return std::min(1.0, std::max(0.0, m.slope * static_cast<double>(k) + m.intercept));
}

OccurrenceModel fit_occurrence(const std::map<int, double> &presence_by_index)
{
    if (presence_by_index.empty())
        throw std::invalid_argument("fit_occurrence: empty input");
    int knee = 0, max_index = 0;
    std::vector<double> kx, py;
    for (const auto &[k, p] : presence_by_index)
    {
        if (k < 1)
            throw std::invalid_argument("fit_occurrence: cluster index starts at 1");
        if (p < 0.0 || p > 1.0)
            throw std::invalid_argument("fit_occurrence: presence must be a probability");
        max_index = std::max(max_index, k);
        if (p >= 1.0)
            knee = std::max(knee, k);
        else
        {
            kx.push_back(static_cast<double>(k));
            py.push_back(p);
        }
    }

    OccurrenceModel m;
    if (kx.empty())
    {
        // every index always present: flat model, no descending line
        m.slope = 0.0;
        m.intercept = 1.0;
        m.knee = max_index;
        return m;
    }
    if (kx.size() < 2)
        throw degenerate_error("fit_occurrence: need at least two sub-unity indices");

    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < kx.size(); i++)
    {
        mx += kx[i];
        my += py[i];
    }
    mx /= static_cast<double>(kx.size());
    my /= static_cast<double>(kx.size());
    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < kx.size(); i++)
    {
        sxx += (kx[i] - mx) * (kx[i] - mx);
        sxy += (kx[i] - mx) * (py[i] - my);
    }
    m.slope = sxy / sxx;
    m.intercept = my - m.slope * mx;
    m.knee = knee;
    return m;
}

DistributionFit cluster_count_stats(const std::vector<int> &counts)
{
    if (counts.size() < 8)
        throw std::invalid_argument("cluster_count_stats: need at least 8 snapshots");
    std::vector<double> x(counts.begin(), counts.end());
    const auto [mn, mx] = std::minmax_element(x.begin(), x.end());
    if (*mn == *mx)
    {
        DistributionFit f;
        f.family = DistFamily::normal;
        f.param1 = *mn;
        f.param2 = 0.0;
        f.n = static_cast<int>(x.size());
        f.degenerate = true;
        f.ks_statistic = 1.0;
        f.ks_pass = false;
        return f;
    }
    return fit_distribution(x, DistFamily::normal);
}

} // namespace agchan
