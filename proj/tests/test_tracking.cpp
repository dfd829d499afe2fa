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

#include "agchan/errors.hpp"
#include "agchan/rng.hpp"
#include "agchan/tracking.hpp"

#include <doctest.h>

#include <cmath>

using namespace agchan;

namespace
{

ClusterFeature make_feature(int snap, int cluster, double nd, double np, double nt,
                            double link_m = 0.0, double delay_ns = 0.0)
{
    ClusterFeature f;
    f.snapshot_index = snap;
    f.cluster_id = cluster;
    f.link_distance_m = link_m;
    f.delay_ns = delay_ns;
    f.norm_distance = nd;
    f.norm_power = np;
    f.norm_delay = nt;
    return f;
}

} // namespace

TEST_CASE("weight presets")
{
    const TrackingWeights d2 = weights_delay_2d();
    CHECK(d2.w_d == doctest::Approx(0.05));
    CHECK(d2.w_p == doctest::Approx(0.0));
    CHECK(d2.w_tau == doctest::Approx(0.95));
    const TrackingWeights p2 = weights_power_2d();
    CHECK(p2.w_p == doctest::Approx(0.95));
    CHECK(p2.w_tau == doctest::Approx(0.0));
    const TrackingWeights w3 = weights_3d();
    CHECK(w3.w_d == doctest::Approx(0.05));
    CHECK(w3.w_p == doctest::Approx(0.95));
    CHECK(w3.w_tau == doctest::Approx(0.95));
}

TEST_CASE("weighted distance: hand values and guards")
{
    const ClusterFeature a = make_feature(0, 1, 0.0, 0.5, 0.2);
    const ClusterFeature b = make_feature(1, 1, 0.1, 0.7, 0.5);
    CHECK(weighted_distance(a, b, weights_3d()) ==
          doctest::Approx(std::sqrt(0.05 * 0.01 + 0.95 * 0.04 + 0.95 * 0.09)).epsilon(1e-12));
    CHECK(weighted_distance(a, b, weights_delay_2d()) ==
          doctest::Approx(std::sqrt(0.05 * 0.01 + 0.95 * 0.09)).epsilon(1e-12));
    CHECK(weighted_distance(a, b, weights_power_2d()) ==
          doctest::Approx(std::sqrt(0.05 * 0.01 + 0.95 * 0.04)).epsilon(1e-12));
    CHECK(weighted_distance(a, a, weights_3d()) == 0.0);

    CHECK_THROWS_AS(weighted_distance(a, b, TrackingWeights{-0.1, 0.5, 0.5}),
                    std::invalid_argument);
    CHECK_THROWS_AS(weighted_distance(a, b, TrackingWeights{0.0, 0.0, 0.0}),
                    std::invalid_argument);
    const ClusterFeature bad = make_feature(0, 1, 0.0, 0.5, 1.7);
    CHECK_THROWS_AS(weighted_distance(a, bad, weights_3d()), std::invalid_argument);
}

TEST_CASE("feature scaling and extraction: hand values")
{
    SnapshotRecord rec;
    rec.meta.max_delay_ns = 550.0;
    Snapshot s0;
    s0.index = 0;
    s0.link_distance_m = 10.0;
    s0.mpcs = {MultipathComponent::from_power_db(100.0, -15.0, 0, 0),
               MultipathComponent::from_power_db(120.0, -15.0, 0, 1)};
    Snapshot s1;
    s1.index = 1;
    s1.link_distance_m = 50.0;
    s1.mpcs = {MultipathComponent::from_power_db(275.0, -30.0, 0, 0)};
    rec.snapshots = {s0, s1};

    const FeatureScaling scaling = make_feature_scaling(rec);
    CHECK(scaling.d_min_m == doctest::Approx(10.0));
    CHECK(scaling.d_max_m == doctest::Approx(50.0));
    CHECK(scaling.max_delay_ns == doctest::Approx(550.0));

    ClusterSet c0;
    c0.snapshot_index = 0;
    c0.k = 1;
    c0.assignments = {{0, 1}, {1, 1}};
    c0.centroids = {110.0};
    ClusterSet c1;
    c1.snapshot_index = 1;
    c1.k = 1;
    c1.assignments = {{0, 1}};
    c1.centroids = {275.0};

    const auto feats = extract_features(rec, {c0, c1}, scaling);
    REQUIRE(feats.size() == 2);
    CHECK(feats[0].delay_ns == doctest::Approx(110.0));
    CHECK(feats[0].power_db == doctest::Approx(-15.0));
    CHECK(feats[0].norm_delay == doctest::Approx(0.2));
    CHECK(feats[0].norm_power == doctest::Approx(0.5));
    CHECK(feats[0].norm_distance == doctest::Approx(0.0));
    CHECK(feats[1].norm_delay == doctest::Approx(0.5));
    CHECK(feats[1].norm_power == doctest::Approx(0.0)); // clamped at the floor
    CHECK(feats[1].norm_distance == doctest::Approx(1.0));
}

TEST_CASE("tracking links two planted families into two trajectories")
{
    std::vector<ClusterFeature> feats;
    for (int i = 0; i < 5; i++)
    {
        const double nd = static_cast<double>(i) / 4.0;
        const double d = 10.0 + 10.0 * i;
        feats.push_back(make_feature(i, 1, nd, 0.5, 0.10 + 0.001 * i, d, 55.0 + 0.5 * i));
        feats.push_back(make_feature(i, 2, nd, 0.5, 0.80 - 0.001 * i, d, 440.0));
    }
    const auto trajs = track(feats, weights_3d(), 0.1);
    REQUIRE(trajs.size() == 2);
    for (const auto &t : trajs)
    {
        REQUIRE(t.members.size() == 5);
        for (size_t m = 1; m < t.members.size(); m++)
            CHECK(t.members[m - 1].snapshot_index < t.members[m].snapshot_index);
        CHECK(t.survival_length_m == doctest::Approx(40.0));
        // family purity: cluster ids agree along the whole trajectory
        for (const auto &m : t.members)
            CHECK(m.cluster_id == t.members[0].cluster_id);
    }
    const auto lengths = survival_lengths(trajs);
    REQUIRE(lengths.size() == 2);
    CHECK(lengths[0] == doctest::Approx(40.0));
}

TEST_CASE("zero threshold leaves every cluster a singleton")
{
    std::vector<ClusterFeature> feats;
    for (int i = 0; i < 4; i++)
        feats.push_back(make_feature(i, 1, 0.25 * i, 0.5, 0.3, 10.0 + i, 90.0));
    const auto trajs = track(feats, weights_3d(), 0.0);
    CHECK(trajs.size() == 4);
    for (const auto &t : trajs)
    {
        CHECK(t.members.size() == 1);
        CHECK(t.survival_length_m == 0.0);
    }
    CHECK_THROWS_AS(fit_survival(survival_lengths(trajs)), degenerate_error);
}

TEST_CASE("trajectories take at most one cluster per snapshot")
{
    std::vector<ClusterFeature> feats;
    feats.push_back(make_feature(0, 1, 0.00, 0.5, 0.50));
    feats.push_back(make_feature(1, 1, 0.01, 0.5, 0.50)); // nearest to the seed
    feats.push_back(make_feature(1, 2, 0.01, 0.5, 0.52)); // same snapshot, close too
    const auto trajs = track(feats, weights_3d(), 0.1);
    REQUIRE(trajs.size() == 2);
    CHECK(trajs[0].members.size() == 2);
    CHECK(trajs[1].members.size() == 1);
    CHECK(trajs[1].members[0].cluster_id == 2);
}

TEST_CASE("tracking input guards")
{
    std::vector<ClusterFeature> one_snap = {make_feature(0, 1, 0.0, 0.5, 0.2),
                                            make_feature(0, 2, 0.0, 0.5, 0.6)};
    CHECK_THROWS_AS(track(one_snap, weights_3d(), 0.1), std::invalid_argument);
    std::vector<ClusterFeature> ok = {make_feature(0, 1, 0.0, 0.5, 0.2),
                                      make_feature(1, 1, 0.1, 0.5, 0.2)};
    CHECK_THROWS_AS(track(ok, weights_3d(), -0.5), std::invalid_argument);
}

TEST_CASE("delay-distance slope: exact zero for constant delay")
{
    Trajectory traj;
    traj.members = {make_feature(0, 1, 0, 0.5, 0.2, 10.0, 120.0),
                    make_feature(1, 1, 0, 0.5, 0.2, 20.0, 120.0),
                    make_feature(2, 1, 0, 0.5, 0.2, 30.0, 120.0)};
    CHECK(slope_dd(traj) == 0.0);
}

TEST_CASE("delay-distance slope: ground-reflection geometry oracle")
{
    // antenna at 30 m, reflector plane at 0.5 m; the excess delay of the
    // reflected path over the direct path shrinks as the ground distance D
    // grows from 10 m to 50 m. expected values computed independently from
    // the closed-form path lengths.
    const double c = 0.299792458; // m/ns
    const double ha = 30.0, hg = 0.5;
    auto refl = [&](double D) { return std::hypot(ha + hg, D); };
    auto direct = [&](double D) { return std::hypot(ha - hg, D); };

    Trajectory traj;
    for (int i = 0; i <= 40; i++)
    {
        const double D = 10.0 + static_cast<double>(i);
        traj.members.push_back(
            make_feature(i, 1, 0, 0.5, 0.2, direct(D), (refl(D) - direct(D)) / c));
    }
    const double fitted = slope_dd(traj);
    CHECK(fitted == doctest::Approx(-0.05370413).epsilon(1e-5));

    const double secant =
        ((refl(50.0) - refl(10.0)) / (direct(50.0) - direct(10.0)) - 1.0) / c;
    CHECK(secant == doctest::Approx(-0.05383013).epsilon(1e-5));
    CHECK(std::abs(fitted - secant) / std::abs(secant) < 0.05);
}

TEST_CASE("delay-distance slope guards")
{
    Trajectory short_traj;
    short_traj.members = {make_feature(0, 1, 0, 0.5, 0.2, 10.0, 120.0)};
    CHECK_THROWS_AS(slope_dd(short_traj), std::invalid_argument);

    Trajectory flat;
    flat.members = {make_feature(0, 1, 0, 0.5, 0.2, 10.0, 120.0),
                    make_feature(1, 1, 0, 0.5, 0.2, 10.0, 130.0)};
    CHECK_THROWS_AS(slope_dd(flat), degenerate_error);
}

TEST_CASE("survival fit recovers a planted weibull")
{
    RandomStream r(17);
    std::vector<double> lengths;
    for (int i = 0; i < 5000; i++)
        lengths.push_back(r.weibull(7.11, 1.47));
    lengths.push_back(0.0); // singleton entries are screened out
    const DistributionFit fit = fit_survival(lengths);
    CHECK(fit.family == DistFamily::weibull);
    CHECK(fit.param1 == doctest::Approx(7.11).epsilon(0.05));
    CHECK(fit.param2 == doctest::Approx(1.47).epsilon(0.05));
    CHECK(fit.n == 5000);

    CHECK_THROWS_AS(survival_lengths({}), std::invalid_argument);
}
