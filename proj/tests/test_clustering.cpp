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

#include "agchan/clustering.hpp"
#include "agchan/errors.hpp"
#include "agchan/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace agchan;

namespace
{

Snapshot make_snapshot(const std::vector<double> &delays, const std::vector<double> &powers_db)
{
    Snapshot s;
    s.index = 0;
    s.link_distance_m = 25.0;
    for (size_t i = 0; i < delays.size(); i++)
        s.mpcs.push_back(MultipathComponent::from_power_db(delays[i], powers_db[i], 0.0,
                                                           static_cast<int>(i)));
    return s;
}

// two well-separated equal-power pairs: {0, 20} and {80, 100} ns
Snapshot two_pair_snapshot()
{
    return make_snapshot({0.0, 20.0, 80.0, 100.0}, {-10.0, -10.0, -10.0, -10.0});
}

} // namespace

TEST_CASE("delay stats: population spread over the snapshot")
{
    const DelayStats st = delay_stats({0.0, 100.0, 200.0});
    CHECK(st.delta_tau_max == doctest::Approx(200.0));
    CHECK(st.tau_std == doctest::Approx(std::sqrt(20000.0 / 3.0)));
    CHECK_THROWS_AS(delay_stats({5.0, 5.0, 5.0}), degenerate_error);
}

TEST_CASE("delay-domain distance: hand-computed value")
{
    const DelayStats st = delay_stats({0.0, 100.0, 200.0});
    // (|0-100| / 200) * (std / 200) = 0.5 * 81.6497 / 200
    CHECK(mcd_delay(0.0, 100.0, st) == doctest::Approx(0.2041241452).epsilon(1e-9));
    CHECK(mcd_delay(100.0, 0.0, st) == mcd_delay(0.0, 100.0, st));
    CHECK(mcd_delay(50.0, 50.0, st) == 0.0);
}

TEST_CASE("power-weighted clustering recovers two planted groups")
{
    const Snapshot snap = two_pair_snapshot();
    const ClusterSet cs = kpm_cluster(snap, 2, 1);
    CHECK(cs.k == 2);
    // labels ascend with centroid delay
    CHECK(cs.assignments.at(0) == 1);
    CHECK(cs.assignments.at(1) == 1);
    CHECK(cs.assignments.at(2) == 2);
    CHECK(cs.assignments.at(3) == 2);
    CHECK(cs.centroids[0] == doctest::Approx(10.0));
    CHECK(cs.centroids[1] == doctest::Approx(90.0));
    CHECK(cs.centroids[0] < cs.centroids[1]);
}

TEST_CASE("clustering is deterministic in the seed")
{
    const Snapshot snap = two_pair_snapshot();
    const ClusterSet a = kpm_cluster(snap, 2, 99);
    const ClusterSet b = kpm_cluster(snap, 2, 99);
    CHECK(a.assignments == b.assignments);
    CHECK(a.objective == b.objective);
}

TEST_CASE("centroids are linear-power weighted means")
{
    // powers 0 dB (w=1) at 0 ns and -10 dB (w=0.1) at 100 ns, one cluster
    const Snapshot snap = make_snapshot({0.0, 100.0}, {0.0, -10.0});
    const ClusterSet cs = kpm_cluster(snap, 1, 5);
    CHECK(cs.centroids[0] == doctest::Approx(100.0 * 0.1 / 1.1));
}

TEST_CASE("cluster-count guards")
{
    const Snapshot snap = two_pair_snapshot();
    CHECK_THROWS_AS(kpm_cluster(snap, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(kpm_cluster(snap, 5, 1), std::invalid_argument); // k > n
    const Snapshot dup = make_snapshot({10.0, 10.0, 10.0}, {-5.0, -5.0, -5.0});
    CHECK_THROWS_AS(kpm_cluster(dup, 2, 1), degenerate_error); // < 2 distinct delays
}

TEST_CASE("plain k-means can split delay-contiguous groups that the "
          "power-weighted variant keeps contiguous")
{
    // delays {10, 11, 13, 14}, powers {0, -28, -27, -1}: in the (delay, power)
    // plane the optimal unweighted 2-means splits by power level, interleaving
    // the delay axis; the delay-domain variant stays contiguous in delay.
    const Snapshot snap = make_snapshot({10.0, 11.0, 13.0, 14.0}, {0.0, -28.0, -27.0, -1.0});

    const ClusterSet kpm = kpm_cluster(snap, 2, 1);
    CHECK(kpm.assignments.at(0) == kpm.assignments.at(1));
    CHECK(kpm.assignments.at(2) == kpm.assignments.at(3));
    CHECK(kpm.assignments.at(0) != kpm.assignments.at(2));

    const ClusterSet km = km_cluster(snap, 2, 1);
    CHECK(km.assignments.at(0) == km.assignments.at(3));
    CHECK(km.assignments.at(1) == km.assignments.at(2));
    CHECK(km.assignments.at(0) != km.assignments.at(1));
}

TEST_CASE("davies-bouldin index: hand-computed two-cluster value")
{
    // clusters {0, 20} and {80, 100}, equal powers. compactness 10c each,
    // separation 80c, so DB = (10c + 10c) / 80c = 0.25 with the delay scale
    // factor c cancelling.
    const Snapshot snap = two_pair_snapshot();
    const ClusterSet cs = kpm_cluster(snap, 2, 1);
    CHECK(db_index(snap, cs) == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("silhouette index: hand-computed two-cluster value")
{
    // members at 0: s = 7/9; at 20: s = 5/7; symmetric on the other side
    const Snapshot snap = two_pair_snapshot();
    const ClusterSet cs = kpm_cluster(snap, 2, 1);
    CHECK(silhouette_index(snap, cs) == doctest::Approx(47.0 / 63.0).epsilon(1e-9));
}

TEST_CASE("validity indices require at least two clusters")
{
    const Snapshot snap = two_pair_snapshot();
    const ClusterSet one = kpm_cluster(snap, 1, 1);
    CHECK_THROWS_AS(db_index(snap, one), std::invalid_argument);
    CHECK_THROWS_AS(silhouette_index(snap, one), std::invalid_argument);
}

TEST_CASE("k sweep selects the planted cluster count under both criteria")
{
    // four tight groups of five, far apart
    std::vector<double> delays, powers;
    RandomStream r(7);
    for (double center : {40.0, 120.0, 200.0, 280.0})
        for (int i = 0; i < 5; i++)
        {
            delays.push_back(center + r.uniform(-2.0, 2.0));
            powers.push_back(-10.0 + r.uniform(-1.0, 1.0));
        }
    const Snapshot snap = make_snapshot(delays, powers);

    KSelectConfig cfg;
    cfg.k_min = 2;
    cfg.k_max = 8;
    cfg.criterion = KCriterion::db;
    CHECK(optimal_k(snap, cfg, 3) == 4);

    cfg.criterion = KCriterion::silhouette;
    CHECK(optimal_k(snap, cfg, 3) == 4);

    const KSweep sweep = sweep_k(snap, cfg, 3);
    CHECK(sweep.entries.size() == 7);
    for (const auto &e : sweep.entries)
    {
        CHECK(e.clusters.k == e.k);
        CHECK(std::isfinite(e.db));
        CHECK(std::isfinite(e.silhouette));
    }
}

TEST_CASE("silhouette of structureless data stays near zero")
{
    RandomStream r(21);
    std::vector<double> delays, powers;
    for (int i = 0; i < 60; i++)
    {
        delays.push_back(r.uniform(0.0, 500.0));
        powers.push_back(-15.0 + r.uniform(-5.0, 5.0));
    }
    const Snapshot snap = make_snapshot(delays, powers);
    const ClusterSet cs = kpm_cluster(snap, 5, 9);
    const double sil = silhouette_index(snap, cs);
    CHECK(sil > -0.2);
    CHECK(sil < 0.75); // well below the separated-cluster regime (~1)
}

TEST_CASE("line-of-sight detection needs the dominance margin")
{
    std::vector<MultipathComponent> mpcs;
    mpcs.push_back(MultipathComponent::from_power_db(50.0, -3.0, 0, 0));
    mpcs.push_back(MultipathComponent::from_power_db(80.0, -12.0, 0, 1));
    mpcs.push_back(MultipathComponent::from_power_db(120.0, -15.0, 0, 2));
    const auto hit = find_los_path(mpcs, 5.0);
    REQUIRE(hit.has_value());
    CHECK(*hit == 0);

    mpcs[1] = MultipathComponent::from_power_db(80.0, -4.0, 0, 1); // within 5 dB
    CHECK_FALSE(find_los_path(mpcs, 5.0).has_value());

    CHECK_FALSE(find_los_path({mpcs[0]}, 5.0).has_value()); // < 2 components
}

TEST_CASE("cluster membership resolves path ids")
{
    const Snapshot snap = two_pair_snapshot();
    const ClusterSet cs = kpm_cluster(snap, 2, 1);
    const auto members = cluster_members(cs, snap);
    REQUIRE(members.size() == 2);
    CHECK(members[0].size() == 2);
    CHECK(members[1].size() == 2);
    std::set<int> first_ids;
    for (const auto &m : members[0])
        first_ids.insert(m.path_id);
    CHECK(first_ids == std::set<int>{0, 1});

    ClusterSet broken = cs;
    broken.assignments[77] = 1; // no such path in the snapshot
    CHECK_THROWS_AS(cluster_members(broken, snap), std::invalid_argument);
}

TEST_CASE("clustering never throws the monotonicity assertion on random data")
{
    // the objective-descent check is a hard internal assertion; exercise it
    // over many random snapshots and cluster counts
    for (std::uint64_t trial = 0; trial < 30; trial++)
    {
        RandomStream r(1000 + trial);
        std::vector<double> delays, powers;
        const int n = 10 + static_cast<int>(r.uniform01() * 40);
        for (int i = 0; i < n; i++)
        {
            delays.push_back(r.uniform(0.0, 500.0));
            powers.push_back(-25.0 + r.uniform(0.0, 20.0));
        }
        const Snapshot snap = make_snapshot(delays, powers);
        for (int k = 2; k <= 6; k++)
            CHECK_NOTHROW(kpm_cluster(snap, k, trial));
    }
}
