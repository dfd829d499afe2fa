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

#ifndef agchan_rng_H
#define agchan_rng_H

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <stdexcept>

namespace agchan
{

// splitmix64 step; used to derive independent substream seeds from a master
// seed so that adding draws to one stream never perturbs another.
inline std::uint64_t mix_seed(std::uint64_t state)
{
    std::uint64_t z = state + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) { return mix_seed(mix_seed(a) ^ b); }

// Seedable stream of random variates. All samplers are implemented on top of
// the fixed-algorithm 64-bit Mersenne Twister, so sequences are identical
// across platforms and standard libraries (the std::*_distribution adapters
// make no such promise and are deliberately not used).
class RandomStream
{
  public:
    explicit RandomStream(std::uint64_t seed) : gen_(seed) {}

    // Derive a substream from a master seed and a path of identifiers.
    static RandomStream substream(std::uint64_t master, std::initializer_list<std::uint64_t> path)
    {
        std::uint64_t s = mix_seed(master);
        for (std::uint64_t p : path)
            s = mix_seed(s, p);
        return RandomStream(s);
    }

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    // Uniform integer in [lo, hi], inclusive.
    int uniform_int(int lo, int hi)
    {
        const double u = uniform01();
        return lo + static_cast<int>(u * (static_cast<double>(hi) - lo + 1.0));
    }

    // Box-Muller; consumes exactly two uniforms per variate.
    double normal(double mu, double sigma)
    {
        const double u1 = 1.0 - uniform01(); // (0, 1]
        const double u2 = uniform01();
        return mu + sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * pi() * u2);
    }

    double lognormal(double mu_log, double sigma_log) { return std::exp(normal(mu_log, sigma_log)); }

    double exponential(double mean) { return -mean * std::log(1.0 - uniform01()); }

    double weibull(double scale, double shape)
    {
        return scale * std::pow(-std::log(1.0 - uniform01()), 1.0 / shape);
    }

    double laplace(double location, double scale)
    {
        const double u = uniform01() - 0.5;
        return location - scale * (u < 0 ? -1.0 : 1.0) * std::log(1.0 - 2.0 * std::fabs(u));
    }

    // Inverse-CDF sampling of a Laplace variate conditioned on [lo, hi];
    // exactly one uniform per draw keeps stream accounting simple.
    double laplace_truncated(double location, double scale, double lo, double hi)
    {
        if (!(lo < hi))
            throw std::invalid_argument("laplace_truncated: empty interval");
        const double flo = laplace_cdf(lo, location, scale);
        const double fhi = laplace_cdf(hi, location, scale);
        const double u = flo + uniform01() * (fhi - flo);
        return laplace_quantile(u, location, scale);
    }

    // Knuth's product method; adequate for the small means used here.
    int poisson(double mean)
    {
        if (mean <= 0.0)
            return 0;
        const double limit = std::exp(-mean);
        int k = 0;
        double p = 1.0;
        do
        {
            ++k;
            p *= uniform01();
        } while (p > limit);
        return k - 1;
    }

    // Uniform phase in [0, 2*pi).
    double phase() { return 2.0 * pi() * uniform01(); }

    static constexpr double pi() { return 3.141592653589793238462643383279502884; }

    static double laplace_cdf(double x, double location, double scale)
    {
        const double z = (x - location) / scale;
        return z < 0 ? 0.5 * std::exp(z) : 1.0 - 0.5 * std::exp(-z);
    }

    static double laplace_quantile(double u, double location, double scale)
    {
        return u < 0.5 ? location + scale * std::log(2.0 * u)
                       : location - scale * std::log(2.0 * (1.0 - u));
    }

  private:
    std::mt19937_64 gen_;
};

} // namespace agchan

#endif
