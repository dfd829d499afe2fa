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

#include "agchan/distributions.hpp"
#include "agchan/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace agchan
{

static constexpr double ks_crit_5pct = 1.3581; // asymptotic two-sided 5% factor

std::string family_name(DistFamily family)
{
    switch (family)
    {
    case DistFamily::weibull:
        return "weibull";
    case DistFamily::normal:
        return "normal";
    case DistFamily::lognormal:
        return "lognormal";
    case DistFamily::laplace:
        return "laplace";
    case DistFamily::exponential:
        return "exponential";
    case DistFamily::rayleigh:
        return "rayleigh";
    case DistFamily::rician:
        return "rician";
    }
    throw std::invalid_argument("family_name: unknown family");
}

DistFamily family_from_name(const std::string &name)
{
    if (name == "weibull")
        return DistFamily::weibull;
    if (name == "normal")
        return DistFamily::normal;
    if (name == "lognormal")
        return DistFamily::lognormal;
    if (name == "laplace")
        return DistFamily::laplace;
    if (name == "exponential")
        return DistFamily::exponential;
    if (name == "rayleigh")
        return DistFamily::rayleigh;
    if (name == "rician")
        return DistFamily::rician;
    throw std::invalid_argument("family_from_name: unknown family '" + name + "'");
}

// --- modified Bessel helpers (log scale, needed by the rician family) ------

static double log_bessel_i0(double x)
{
    x = std::fabs(x);
    if (x <= 30.0)
    {
        double term = 1.0, sum = 1.0;
        const double q = 0.25 * x * x;
        for (int k = 1; k < 200; k++)
        {
            term *= q / (static_cast<double>(k) * k);
            sum += term;
            if (term < sum * 1e-17)
                break;
        }
        return std::log(sum);
    }
    const double inv = 1.0 / x;
    const double corr = 1.0 + inv * (0.125 + inv * (0.0703125 + inv * 0.0732421875));
    return x - 0.5 * std::log(2.0 * M_PI * x) + std::log(corr);
}

static double log_bessel_i1(double x)
{
    x = std::fabs(x);
    if (x == 0.0)
        return -std::numeric_limits<double>::infinity();
    if (x <= 30.0)
    {
        double term = 1.0, sum = 1.0;
        const double q = 0.25 * x * x;
        for (int k = 1; k < 200; k++)
        {
            term *= q / (static_cast<double>(k) * (k + 1.0));
            sum += term;
            if (term < sum * 1e-17)
                break;
        }
        return std::log(0.5 * x) + std::log(sum);
    }
    const double inv = 1.0 / x;
    const double corr = 1.0 - inv * (0.375 + inv * (0.1171875 + inv * 0.1025390625));
    return x - 0.5 * std::log(2.0 * M_PI * x) + std::log(corr);
}

// Marcum Q1(a, b) by the double Poisson series, counting up until the outer
// tail is below 1e-15.
static double marcum_q1(double a, double b)
{
    const double la = 0.5 * a * a, lb = 0.5 * b * b;
    if (lb <= 0.0)
        return 1.0;
    if (la > 600.0 || lb > 600.0)
    {
        // far outside the fitting range; a normal tail is plenty here
        const double z = (b - std::sqrt(a * a + 1.0)) / 1.0;
        return 0.5 * std::erfc(z / std::sqrt(2.0));
    }
    double pois_a = std::exp(-la);  // P(A = k)
    double pois_b = std::exp(-lb);  // P(B = k)
    double cdf_b = pois_b;          // P(B <= k)
    double q = 0.0, tail = 1.0 - pois_a;
    for (int k = 0; k < 5000; k++)
    {
        q += pois_a * cdf_b;
        if (tail < 1e-15)
            break;
        pois_a *= la / (k + 1.0);
        tail -= pois_a;
        pois_b *= lb / (k + 1.0);
        cdf_b += pois_b;
    }
    return std::min(1.0, std::max(0.0, q));
}

double dist_cdf(DistFamily family, double param1, double param2, double x)
{
    switch (family)
    {
    case DistFamily::weibull:
        return x <= 0.0 ? 0.0 : 1.0 - std::exp(-std::pow(x / param1, param2));
    case DistFamily::normal:
        return 0.5 * std::erfc(-(x - param1) / (param2 * std::sqrt(2.0)));
    case DistFamily::lognormal:
        return x <= 0.0 ? 0.0 : 0.5 * std::erfc(-(std::log(x) - param1) / (param2 * std::sqrt(2.0)));
    case DistFamily::laplace:
        return x < param1 ? 0.5 * std::exp((x - param1) / param2)
                          : 1.0 - 0.5 * std::exp(-(x - param1) / param2);
    case DistFamily::exponential:
        return x <= 0.0 ? 0.0 : 1.0 - std::exp(-x / param1);
    case DistFamily::rayleigh:
        return x <= 0.0 ? 0.0 : 1.0 - std::exp(-0.5 * x * x / (param1 * param1));
    case DistFamily::rician:
        return x <= 0.0 ? 0.0 : 1.0 - marcum_q1(param1 / param2, x / param2);
    }
    throw std::invalid_argument("dist_cdf: unknown family");
}

double dist_mean(DistFamily family, double param1, double param2)
{
    switch (family)
    {
    case DistFamily::weibull:
        return param1 * std::tgamma(1.0 + 1.0 / param2);
    case DistFamily::normal:
        return param1;
    case DistFamily::lognormal:
        return std::exp(param1 + 0.5 * param2 * param2);
    case DistFamily::laplace:
        return param1;
    case DistFamily::exponential:
        return param1;
    case DistFamily::rayleigh:
        return param1 * std::sqrt(0.5 * M_PI);
    case DistFamily::rician:
    {
        const double t = param1 * param1 / (2.0 * param2 * param2);
        const double l0 = log_bessel_i0(0.5 * t), l1 = log_bessel_i1(0.5 * t);
        const double lag = (1.0 + t) * std::exp(l0 - 0.5 * t) + t * std::exp(l1 - 0.5 * t);
        return param2 * std::sqrt(0.5 * M_PI) * lag;
    }
    }
    throw std::invalid_argument("dist_mean: unknown family");
}

double ks_statistic(const std::vector<double> &samples, const std::function<double(double)> &cdf)
{
    if (samples.empty())
        throw std::invalid_argument("ks_statistic: empty sample");
    std::vector<double> x = samples;
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (size_t i = 0; i < x.size(); i++)
    {
        const double f = cdf(x[i]);
        d = std::max(d, std::max(f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f));
    }
    return d;
}

double ks_critical_value(int n)
{
    if (n < 1)
        throw std::invalid_argument("ks_critical_value: n < 1");
    return ks_crit_5pct / std::sqrt(static_cast<double>(n));
}

// --- per-family maximum-likelihood estimators -------------------------------

static void mean_and_pop_std(const std::vector<double> &x, double &mean, double &sd)
{
    mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
    double ss = 0.0;
    for (double v : x)
        ss += (v - mean) * (v - mean);
    sd = std::sqrt(ss / static_cast<double>(x.size()));
}

static void fit_weibull(const std::vector<double> &x, double &scale, double &shape)
{
    const double n = static_cast<double>(x.size());
    const double xmax = *std::max_element(x.begin(), x.end());
    double mean_ln = 0.0, sd_ln = 0.0;
    std::vector<double> y(x.size()), ln_y(x.size());
    for (size_t i = 0; i < x.size(); i++)
    {
        y[i] = x[i] / xmax;
        ln_y[i] = std::log(y[i]);
    }
    std::vector<double> ln_x(x.size());
    for (size_t i = 0; i < x.size(); i++)
        ln_x[i] = std::log(x[i]);
    mean_and_pop_std(ln_x, mean_ln, sd_ln);

    const double mean_ln_y = mean_ln - std::log(xmax);
    double k = 1.28255 / sd_ln; // moment start from the log-sample spread
    for (int it = 0; it < 200; it++)
    {
        double a = 0.0, b = 0.0, c = 0.0;
        for (size_t i = 0; i < y.size(); i++)
        {
            const double p = std::pow(y[i], k);
            a += p;
            b += p * ln_y[i];
            c += p * ln_y[i] * ln_y[i];
        }
        const double g = b / a - 1.0 / k - mean_ln_y;
        const double gp = (c * a - b * b) / (a * a) + 1.0 / (k * k);
        double step = g / gp;
        while (k - step <= 0.0)
            step *= 0.5;
        k -= step;
        if (std::fabs(step) < 1e-13 * k)
            break;
    }
    double a = 0.0;
    for (size_t i = 0; i < y.size(); i++)
        a += std::pow(y[i], k);
    shape = k;
    scale = xmax * std::pow(a / n, 1.0 / k);
}

static void fit_laplace(std::vector<double> x, double &location, double &scale)
{
    std::sort(x.begin(), x.end());
    const size_t n = x.size();
    location = (n % 2 == 1) ? x[n / 2] : 0.5 * (x[n / 2 - 1] + x[n / 2]);
    double s = 0.0;
    for (double v : x)
        s += std::fabs(v - location);
    scale = s / static_cast<double>(n);
}

static double rician_nll(const std::vector<double> &x, double nu, double sigma)
{
    if (sigma <= 0.0 || nu < 0.0)
        return std::numeric_limits<double>::infinity();
    const double s2 = sigma * sigma;
    double nll = 0.0;
    for (double v : x)
    {
        if (v <= 0.0)
            return std::numeric_limits<double>::infinity();
        nll -= std::log(v / s2) - (v * v + nu * nu) / (2.0 * s2) + log_bessel_i0(v * nu / s2);
    }
    return nll;
}

static void fit_rician(const std::vector<double> &x, double &nu, double &sigma)
{
    double m2 = 0.0;
    for (double v : x)
        m2 += v * v;
    m2 /= static_cast<double>(x.size());

    // coarse scan over candidate power ratios, then Nelder-Mead refinement
    const std::array<double, 10> ratios = {1e-3, 0.01, 0.1, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0};
    double best_nll = std::numeric_limits<double>::infinity();
    double nu0 = 0.0, sg0 = std::sqrt(0.5 * m2);
    for (double r : ratios)
    {
        const double nu_c = std::sqrt(m2 * r / (1.0 + r));
        const double sg_c = std::sqrt(m2 / (2.0 * (1.0 + r)));
        const double f = rician_nll(x, nu_c, sg_c);
        if (f < best_nll)
        {
            best_nll = f;
            nu0 = nu_c;
            sg0 = sg_c;
        }
    }

    std::array<std::array<double, 2>, 3> sim = {{{nu0, sg0}, {nu0 * 1.05 + 0.01 * sg0, sg0}, {nu0, sg0 * 1.05}}};
    std::array<double, 3> fv;
    for (int i = 0; i < 3; i++)
        fv[i] = rician_nll(x, sim[i][0], sim[i][1]);

    for (int it = 0; it < 400; it++)
    {
        std::array<int, 3> ord = {0, 1, 2};
        std::sort(ord.begin(), ord.end(), [&](int a, int b) { return fv[a] < fv[b]; });
        const int lo = ord[0], mid = ord[1], hi = ord[2];
        if (std::fabs(fv[hi] - fv[lo]) < 1e-11 * (std::fabs(fv[lo]) + 1e-11))
            break;
        std::array<double, 2> cen = {0.5 * (sim[lo][0] + sim[mid][0]), 0.5 * (sim[lo][1] + sim[mid][1])};
        auto probe = [&](double t) {
            std::array<double, 2> p = {cen[0] + t * (cen[0] - sim[hi][0]), cen[1] + t * (cen[1] - sim[hi][1])};
            return p;
        };
        auto refl = probe(1.0);
        double fr = rician_nll(x, refl[0], refl[1]);
        if (fr < fv[lo])
        {
            auto exp_p = probe(2.0);
            double fe = rician_nll(x, exp_p[0], exp_p[1]);
            sim[hi] = fe < fr ? exp_p : refl;
            fv[hi] = std::min(fe, fr);
        }
        else if (fr < fv[mid])
        {
            sim[hi] = refl;
            fv[hi] = fr;
        }
        else
        {
            auto con = probe(-0.5);
            double fc = rician_nll(x, con[0], con[1]);
            if (fc < fv[hi])
            {
                sim[hi] = con;
                fv[hi] = fc;
            }
            else
            {
                for (int i : {mid, hi})
                {
                    sim[i][0] = 0.5 * (sim[i][0] + sim[lo][0]);
                    sim[i][1] = 0.5 * (sim[i][1] + sim[lo][1]);
                    fv[i] = rician_nll(x, sim[i][0], sim[i][1]);
                }
            }
        }
    }
    std::array<int, 3> ord = {0, 1, 2};
    std::sort(ord.begin(), ord.end(), [&](int a, int b) { return fv[a] < fv[b]; });
    nu = std::max(0.0, sim[ord[0]][0]);
    sigma = sim[ord[0]][1];
}

DistributionFit fit_distribution(const std::vector<double> &samples, DistFamily family)
{
    if (samples.size() < 8)
        throw std::invalid_argument("fit_distribution: need at least 8 samples");
    for (double v : samples)
        if (!std::isfinite(v))
            throw std::invalid_argument("fit_distribution: non-finite sample");

    const bool positive_only = family == DistFamily::weibull || family == DistFamily::lognormal ||
                               family == DistFamily::exponential || family == DistFamily::rician;
    const bool nonnegative_only = family == DistFamily::rayleigh;
    for (double v : samples)
    {
        if (positive_only && v <= 0.0)
            throw std::invalid_argument("fit_distribution: " + family_name(family) +
                                        " requires strictly positive samples");
        if (nonnegative_only && v < 0.0)
            throw std::invalid_argument("fit_distribution: rayleigh requires non-negative samples");
    }

    const auto [mn, mx] = std::minmax_element(samples.begin(), samples.end());
    if (*mn == *mx)
        throw degenerate_error("fit_distribution: samples have zero spread");

    DistributionFit fit;
    fit.family = family;
    fit.n = static_cast<int>(samples.size());

    switch (family)
    {
    case DistFamily::weibull:
        fit_weibull(samples, fit.param1, fit.param2);
        break;
    case DistFamily::normal:
        mean_and_pop_std(samples, fit.param1, fit.param2);
        break;
    case DistFamily::lognormal:
    {
        std::vector<double> lx(samples.size());
        std::transform(samples.begin(), samples.end(), lx.begin(), [](double v) { return std::log(v); });
        mean_and_pop_std(lx, fit.param1, fit.param2);
        break;
    }
    case DistFamily::laplace:
        fit_laplace(samples, fit.param1, fit.param2);
        break;
    case DistFamily::exponential:
    {
        double sd;
        mean_and_pop_std(samples, fit.param1, sd);
        fit.param2 = 0.0;
        break;
    }
    case DistFamily::rayleigh:
    {
        double ss = 0.0;
        for (double v : samples)
            ss += v * v;
        fit.param1 = std::sqrt(ss / (2.0 * static_cast<double>(samples.size())));
        fit.param2 = 0.0;
        break;
    }
    case DistFamily::rician:
        fit_rician(samples, fit.param1, fit.param2);
        break;
    }

    fit.ks_statistic = ks_statistic(
        samples, [&](double v) { return dist_cdf(fit.family, fit.param1, fit.param2, v); });
    fit.ks_pass = fit.ks_statistic < ks_critical_value(fit.n);
    return fit;
}

DistributionFit select_best_fit(const std::vector<double> &samples)
{
    static const std::array<DistFamily, 7> all = {
        DistFamily::weibull,    DistFamily::normal,   DistFamily::lognormal, DistFamily::laplace,
        DistFamily::exponential, DistFamily::rayleigh, DistFamily::rician};
    bool found = false;
    DistributionFit best;
    for (DistFamily fam : all)
    {
        try
        {
            DistributionFit f = fit_distribution(samples, fam);
            if (!found || f.ks_statistic < best.ks_statistic)
            {
                best = f;
                found = true;
            }
        }
        catch (const std::invalid_argument &)
        {
            // family support does not admit this sample; skip it
        }
    }
    if (!found)
        throw degenerate_error("select_best_fit: no family admits the sample");
    return best;
}

} // namespace agchan
