// Copyright 2026 The Effortnet Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>
#include <random>

#include "effortnet/design.hpp"
#include "effortnet/welfare.hpp"
#include "test_support.hpp"

using namespace effortnet;
using namespace testsupport;

TEST_CASE("xi fixed point") {
  SUBCASE("beta = 2 against an independent scan") {
    const auto oracle =
        scan_roots([](double x) { return x - 1.0 + std::exp(-2.0 * x) / 2.0; }, 0.0, 1.0);
    REQUIRE(oracle.size() == 1);
    const auto r = xi(2.0);
    CHECK(r.value == doctest::Approx(oracle[0]).epsilon(1e-10));
    CHECK(r.value == doctest::Approx(0.9207028).epsilon(1e-6));
    CHECK_FALSE(r.near_degenerate);
  }
  SUBCASE("residual stays below 1e-12 across the domain") {
    for (double beta : {1.001, 1.1, 1.5, 2.0, 3.0, 7.5, 20.0, 50.0}) {
      const double v = xi(beta).value;
      CHECK(std::fabs(v - 1.0 + std::exp(-beta * v) / beta) <= 1e-12);
    }
  }
  SUBCASE("large beta pushes xi to one") { CHECK(xi(50.0).value > 0.999); }
  SUBCASE("domain edge") {
    CHECK_THROWS_AS((void)xi(1.0), Error);
    CHECK_THROWS_AS((void)xi(0.5), Error);
    const auto r = xi(1.0 + 1e-9);
    CHECK(r.near_degenerate);
    CHECK(r.value >= 0.0);
  }
}

TEST_CASE("balanced PoA bound") {
  SUBCASE("good communication means no anarchy") {
    for (double beta : {0.0, 0.3, 0.5, 1.0}) {
      const auto rep = poa_bound_balanced(6, 1, beta);
      CHECK(rep.bound == 1.0);
      CHECK(rep.phi_sequence.empty());
    }
  }
  SUBCASE("FLAT with d = 6 at beta = 2") {
    const auto rep = poa_bound_balanced(6, 1, 2.0);
    const double x = xi(2.0).value;
    const double arm1 = (1.0 + std::log(12.0)) / 2.0;
    const double arm2 = 12.0 + (1.0 - 12.0) * x;
    CHECK(arm1 == doctest::Approx(1.74245).epsilon(1e-4));
    REQUIRE(rep.phi_sequence.size() == 1);
    CHECK(rep.phi_sequence[0] == doctest::Approx(std::max(arm1, arm2)).epsilon(1e-12));
    CHECK(rep.bound == doctest::Approx(6.0 / std::max(arm1, arm2)).epsilon(1e-12));
    CHECK(rep.bound == doctest::Approx(3.2047).epsilon(1e-4));
    CHECK_FALSE(rep.clamped);
  }
  SUBCASE("degenerate line is clamped at one") {
    const auto rep = poa_bound_balanced(1, 1, 2.0);
    CHECK(rep.clamped);
    CHECK(rep.bound == 1.0);
    REQUIRE(rep.phi_sequence.size() == 1);
    CHECK(rep.phi_sequence[0] == doctest::Approx(1.0793).epsilon(1e-3));
  }
  SUBCASE("nested sequence for depth two") {
    const auto rep = poa_bound_balanced(2, 2, 2.0);
    REQUIRE(rep.phi_sequence.size() == 2);
    const double x = rep.xi;
    const double t1 = std::max((1.0 + std::log(4.0)) / 2.0, 4.0 + (1.0 - 4.0) * x);
    const double m = 2.0 * t1;
    const double t2 = std::max((1.0 + std::log(2.0 * m)) / 2.0, 2.0 * m + (1.0 - 2.0 * m) * x);
    CHECK(rep.phi_sequence[0] == doctest::Approx(t1).epsilon(1e-12));
    CHECK(rep.phi_sequence[1] == doctest::Approx(t2).epsilon(1e-12));
    CHECK(rep.bound == doctest::Approx(4.0 / t2).epsilon(1e-12));
  }
  SUBCASE("domain errors") {
    CHECK_THROWS_AS((void)poa_bound_balanced(0, 1, 2.0), Error);
    CHECK_THROWS_AS((void)poa_bound_balanced(2, 0, 2.0), Error);
    CHECK_THROWS_AS((void)poa_bound_balanced(2, 1, -1.0), Error);
  }
}

TEST_CASE("optimal effort") {
  SUBCASE("FLAT above the threshold: root rests, leaves work") {
    const auto net = flat_tree(5);
    const auto model = ProductivityModel::ep(EpParams::validated(std::log(4.0), 0.0));
    const auto best = optimal_effort(net, model);
    CHECK(best.method == OptimalMethod::ClosedFormBalanced);
    CHECK(best.x[1] == 0.0);
    for (int i = 2; i <= 5; ++i) CHECK(best.x[i] == 1.0);
    CHECK(best.so == doctest::Approx(4.0).epsilon(1e-12));
  }
  SUBCASE("FLAT below the threshold: everyone works") {
    const auto net = flat_tree(5);  // d = 4, threshold -ln(3/4) ~ 0.2877
    const auto model = ProductivityModel::ep(EpParams::validated(0.1, 0.0));
    const auto best = optimal_effort(net, model);
    CHECK(best.method == OptimalMethod::ClosedFormFlat);
    for (int i = 1; i <= 5; ++i) CHECK(best.x[i] == 1.0);
  }
  SUBCASE("balanced depth-2 closed form matches exact vertex enumeration") {
    const auto net = balanced_tree(2, 2);
    const auto model = ProductivityModel::ep(EpParams::validated(0.8, 0.0));
    const auto best = optimal_effort(net, model);
    CHECK(best.method == OptimalMethod::ClosedFormBalanced);  // 0.8 >= ln 2
    const auto [ox, oso] = vertex_optimum(net, model);
    CHECK(best.so == doctest::Approx(oso).epsilon(1e-6));
    // Random interior restarts never beat the vertex optimum.
    std::mt19937_64 rng(3);
    for (int k = 0; k < 100000; ++k) {
      const auto x = random_profile(rng, net.node_count());
      CHECK(social_output(net, model, x) <= oso + 1e-9);
    }
  }
  SUBCASE("balanced depth-2 search below the threshold matches vertex enumeration") {
    const auto net = balanced_tree(2, 2);
    const auto model = ProductivityModel::ep(EpParams::validated(0.5, 0.0));
    const auto best = optimal_effort(net, model);
    CHECK(best.method == OptimalMethod::BruteForce);  // 0.5 < ln 2: no closed form
    const auto [ox, oso] = vertex_optimum(net, model);
    CHECK(best.so == doctest::Approx(oso).epsilon(1e-6));
    CHECK(best.x[1] == doctest::Approx(0.0));  // root still rests here
  }
  SUBCASE("deep balanced trees can prefer a resting root below the flat threshold") {
    const auto net = balanced_tree(3, 2);
    const auto model = ProductivityModel::ep(EpParams::validated(0.3, 0.0));
    const auto best = optimal_effort(net, model);
    const auto [ox, oso] = vertex_optimum(net, model);
    CHECK(best.so == doctest::Approx(oso).epsilon(1e-9));
    CHECK(best.x[1] == doctest::Approx(0.0));  // root rests although beta < ln(3/2)
    CHECK(best.x[2] == doctest::Approx(1.0));
  }
  SUBCASE("every optimum puts unit effort on the leaves") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 12; ++trial) {
      const int n = 2 + static_cast<int>(rng() % 8);
      const auto tree = random_tree(rng, n, trial % 2 == 0);
      const auto model = trial % 3 == 0
                             ? ProductivityModel::linear()
                             : ProductivityModel::ep(EpParams::validated(2.5 * uniform01(rng), 0.0));
      const auto best = optimal_effort(tree, model);
      for (int i = 1; i <= n; ++i)
        if (tree.is_leaf(i)) CHECK(best.x[i] == 1.0);
    }
  }
  SUBCASE("closed form and forced brute force agree just past the threshold") {
    for (const auto& [d, D] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {3, 1}}) {
      const auto net = balanced_tree(d, D);
      const double beta = -std::log1p(-1.0 / d) + 1e-3;
      const auto model = ProductivityModel::ep(EpParams::validated(beta, 0.0));
      const auto closed = optimal_effort(net, model);
      CHECK(closed.method == OptimalMethod::ClosedFormBalanced);
      const auto brute = optimal_effort(net, model, {101, 3, true});
      CHECK(brute.method == OptimalMethod::BruteForce);
      CHECK(std::fabs(closed.so - brute.so) <= 1e-4);
    }
  }
  SUBCASE("size cap for non-balanced search") {
    std::mt19937_64 rng(11);
    const auto tree = random_tree(rng, 13);
    if (!tree.balanced_shape()) {
      CHECK_THROWS_AS((void)optimal_effort(tree, ProductivityModel::linear()), Error);
    }
  }
  SUBCASE("single node") {
    const auto net = NetworkTopology::validate(1, {}, GraphKind::Hierarchy);
    const auto best = optimal_effort(net, ProductivityModel::ep(EpParams::validated(2.0, 0.0)));
    CHECK(best.x[1] == 1.0);
    CHECK(best.so == doctest::Approx(1.0));
  }
}

TEST_CASE("price of anarchy") {
  SUBCASE("FLAT with no sharing at beta = ln(n-1)") {
    for (int n : {5, 7}) {
      const auto net = flat_tree(n);
      const auto model = ProductivityModel::ep(EpParams::validated(std::log(n - 1.0), 0.0));
      const auto rep = poa(net, model, DirectPayoff(0.0), RewardScheme::zero(n));
      CHECK(rep.poa == doctest::Approx((n - 1.0) / 2.0).epsilon(1e-12));
      CHECK(rep.so_equilibrium == doctest::Approx(2.0).epsilon(1e-12));
      CHECK_FALSE(rep.multiplicity_note);
      CHECK_FALSE(rep.degenerate);
    }
  }
  SUBCASE("a supporting scheme at beta <= 1 removes all anarchy") {
    for (const auto& [d, D] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {3, 1}}) {
      const auto net = balanced_tree(d, D);
      const auto params = EpParams::validated(0.8, 0.0);
      const auto model = ProductivityModel::ep(params);
      const auto best = optimal_effort(net, model);
      const auto st = check_stability(net, params, best.x);
      REQUIRE(st.stable);
      const auto rep = poa(net, model, DirectPayoff(0.0), st.H);
      CHECK(rep.poa == doctest::Approx(1.0).epsilon(1e-6));
    }
  }
  SUBCASE("optimal never loses to an equilibrium") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 30; ++trial) {
      const int n = 2 + static_cast<int>(rng() % 9);
      const auto tree = random_tree(rng, n, trial % 2 == 0);
      const auto model =
          ProductivityModel::ep(EpParams::validated(2.5 * uniform01(rng), 0.4 * uniform01(rng)));
      const auto H = random_scheme(rng, tree, 1.0);
      const auto rep = poa(tree, model, DirectPayoff(model.ep_params().b), H);
      CHECK(rep.poa >= 1.0 - 1e-6);
    }
  }
  SUBCASE("multiplicity is propagated to the report") {
    const auto net = flat_tree(3);
    RewardScheme H(3);
    H.set(net, 1, 2, 0.25);
    H.set(net, 1, 3, 0.25);
    const auto model = ProductivityModel::ep(EpParams::validated(2.0, 0.0));
    const auto rep = poa(net, model, DirectPayoff(0.0), H);
    CHECK(rep.multiplicity_note);
  }
}

TEST_CASE("FLAT bound is numerically tight") {
  // For a flat tree the designed equilibrium value equals the linear arm of
  // phi exactly, so bound and measured PoA coincide up to solver noise.
  const auto net = flat_tree(7);
  for (double beta : {1.5, 2.0, 3.0, 4.0}) {
    const auto params = EpParams::validated(beta, 0.0);
    const auto res = design_reward_scheme(net, params);
    REQUIRE(res.guarantee == DesignGuarantee::BalancedBounded);
    const auto model = ProductivityModel::ep(params);
    const double so_opt = optimal_effort(net, model).so;
    const double measured = so_opt / res.achieved_so;
    CHECK(measured <= res.bound + 1e-6);
    CHECK((res.bound - measured) / measured < 0.05);
  }
}
