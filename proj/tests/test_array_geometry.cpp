// SPDX-License-Identifier: Apache-2.0
//
// nfedof: effective spatial degrees of freedom of near-field LoS MIMO links
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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nfedof/array_geometry.hpp"
#include "oracles.hpp"

using namespace nfedof;

TEST_CASE("element positions of small arrays") {
  auto one = element_positions(ArrayConfig::ula(1, 0.005));
  REQUIRE(one.size() == 1);
  CHECK(one[0].x == 0.0);
  CHECK(one[0].y == 0.0);

  auto two = element_positions(ArrayConfig::ula(2, 0.005));
  REQUIRE(two.size() == 2);
  CHECK(two[0].x == doctest::Approx(-0.0025));
  CHECK(two[1].x == doctest::Approx(0.0025));
  CHECK(two[0].y == 0.0);
}

TEST_CASE("rotated array matches a rotation matrix applied to centred offsets") {
  // Orientation must stay inside (-90, 90) degrees; use a steep 80 degrees.
  const double phi = 80.0 * std::numbers::pi / 180.0;
  auto pts = element_positions(ArrayConfig::ula(3, 1.0, phi));
  const double base[3] = {-1.0, 0.0, 1.0};
  for (int i = 0; i < 3; ++i) {
    CHECK(pts[i].x == doctest::Approx(std::cos(phi) * base[i]));
    CHECK(pts[i].y == doctest::Approx(std::sin(phi) * base[i]));
  }
  CHECK(std::hypot(pts[1].x - pts[0].x, pts[1].y - pts[0].y) == doctest::Approx(1.0));
  CHECK(std::hypot(pts[2].x - pts[1].x, pts[2].y - pts[1].y) == doctest::Approx(1.0));
}

TEST_CASE("invalid configurations are rejected") {
  CHECK_THROWS_AS(ArrayConfig::ula(0, 0.01), std::invalid_argument);
  CHECK_THROWS_AS(ArrayConfig::ula(4, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ArrayConfig::ula(4, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(ArrayConfig::with_subarrays({{4, 0.1}, {4, 0.0}}, 0.005), std::invalid_argument);
  CHECK_THROWS_AS(ArrayConfig::with_subarrays({{0, 0.0}}, 0.005), std::invalid_argument);
  CHECK_THROWS_AS(LinkGeometry(0.0), std::invalid_argument);
  CHECK_THROWS_AS(LinkGeometry(1.0, std::numbers::pi / 2), std::invalid_argument);
}

TEST_CASE("aperture convention") {
  CHECK(ArrayConfig::ula(8, 0.005).aperture() == doctest::Approx(0.04));
  CHECK(ArrayConfig::ula(8, 0.005).with_nominal_aperture(0.05).aperture() == 0.05);
  auto grouped = ArrayConfig::with_subarrays({{4, -0.1}, {4, 0.1}}, 0.005);
  CHECK(grouped.num_elements() == 8);
  CHECK(grouped.aperture() == doctest::Approx(0.2 + 0.02));
}

TEST_CASE("single subarray layout equals the plain ULA") {
  for (int m : {1, 2, 5, 16}) {
    auto plain = element_positions(ArrayConfig::ula(m, 0.0042, 0.3));
    auto grouped = element_positions(ArrayConfig::with_subarrays({{m, 0.0}}, 0.0042, 0.3));
    REQUIRE(plain.size() == grouped.size());
    for (std::size_t i = 0; i < plain.size(); ++i) {
      CHECK(plain[i].x == grouped[i].x);
      CHECK(plain[i].y == grouped[i].y);
    }
  }
}

TEST_CASE("exact distance: trivial cases") {
  auto tx = ArrayConfig::ula(5, 0.01);
  auto rx = ArrayConfig::ula(3, 0.02);
  LinkGeometry g(2.0, 0.4, -0.2);
  CHECK(pairwise_distance_exact(g, tx, rx, 2, 1) == doctest::Approx(2.0));

  LinkGeometry broadside(2.0);
  const double xt = tx.axis_offset(4), xn = rx.axis_offset(0);
  CHECK(pairwise_distance_exact(broadside, tx, rx, 4, 0) == doctest::Approx(std::sqrt(4.0 + (xt - xn) * (xt - xn))));
  CHECK_THROWS_AS(pairwise_distance_exact(g, tx, rx, 5, 0), std::out_of_range);
}

TEST_CASE("exact distance agrees with coordinate geometry of the placed arrays") {
  auto tx = ArrayConfig::ula(8, 0.005);
  auto rx = ArrayConfig::ula(8, 0.005);
  LinkGeometry g(10.0);
  auto pt = element_positions(tx);
  auto pr = element_positions(rx);
  for (int m = 0; m < 8; ++m)
    for (int n = 0; n < 8; ++n) {
      const double brute = std::hypot(pt[m].x - pr[n].x, pt[m].y - (pr[n].y - 10.0));
      CHECK(pairwise_distance_exact(g, tx, rx, m, n) == doctest::Approx(brute).epsilon(1e-14));
    }

  // Same check with tilted arrays: positions rotated by each orientation.
  LinkGeometry tilted(3.0, 0.3, -0.5);
  auto pt2 = element_positions(tx.with_orientation(0.3));
  auto pr2 = element_positions(rx.with_orientation(-0.5));
  for (int m = 0; m < 8; ++m)
    for (int n = 0; n < 8; ++n) {
      const double brute = std::hypot(pt2[m].x - pr2[n].x, pt2[m].y - (pr2[n].y - 3.0));
      CHECK(pairwise_distance_exact(tilted, tx, rx, m, n) == doctest::Approx(brute).epsilon(1e-14));
    }
}

TEST_CASE("exact distance is symmetric under swapping the arrays") {
  auto a = ArrayConfig::ula(6, 0.01);
  auto b = ArrayConfig::ula(4, 0.015);
  // Swapping ends of the link mirrors the frame, which negates both orientations.
  LinkGeometry fwd(1.5, 0.2, 0.35);
  LinkGeometry back(1.5, -0.35, -0.2);
  for (int m = 0; m < 6; ++m)
    for (int n = 0; n < 4; ++n)
      CHECK(pairwise_distance_exact(fwd, a, b, m, n) == doctest::Approx(pairwise_distance_exact(back, b, a, n, m)));
}

TEST_CASE("Fresnel distance") {
  auto tx = ArrayConfig::ula(7, 0.01);
  auto rx = ArrayConfig::ula(1, 0.01);
  LinkGeometry g(3.0);
  CHECK(pairwise_distance_fresnel(g, tx, rx, 3, 0) == 3.0);
  const double x = tx.axis_offset(6);
  CHECK(pairwise_distance_fresnel(g, tx, rx, 6, 0) == doctest::Approx(3.0 + x * x / 6.0));
}

TEST_CASE("Fresnel distance converges to the exact one far away") {
  auto tx = ArrayConfig::ula(8, 0.005);
  auto rx = ArrayConfig::ula(8, 0.005);
  const double r = 100.0 * (tx.aperture() + rx.aperture());
  LinkGeometry g(r, 0.2, -0.1);
  for (int m = 0; m < 8; ++m)
    for (int n = 0; n < 8; ++n)
      CHECK(std::abs(pairwise_distance_exact(g, tx, rx, m, n) - pairwise_distance_fresnel(g, tx, rx, m, n)) < 1e-6 * r);
}

TEST_CASE("property: distance bounds and monotone Fresnel error") {
  auto gen = oracle::rng(7);
  std::uniform_int_distribution<int> count(1, 12);
  std::uniform_real_distribution<double> spacing(0.001, 0.05), angle(-1.2, 1.2), logr(-1.0, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    auto tx = ArrayConfig::ula(count(gen), spacing(gen));
    auto rx = ArrayConfig::ula(count(gen), spacing(gen));
    LinkGeometry g(std::pow(10.0, logr(gen)), angle(gen), angle(gen));
    const double half_span = 0.5 * (tx.aperture() + rx.aperture());
    for (int m = 0; m < tx.num_elements(); ++m)
      for (int n = 0; n < rx.num_elements(); ++n) {
        const double d = pairwise_distance_exact(g, tx, rx, m, n);
        CHECK(d >= g.range() - half_span - 1e-12);
        CHECK(d <= g.range() + half_span + 1e-12);
      }
  }

  auto tx = ArrayConfig::ula(16, 0.005);
  auto rx = ArrayConfig::ula(4, 0.005);
  double previous = INFINITY;
  for (double r = 0.2; r < 2000.0; r *= 1.25) {
    LinkGeometry g(r);
    const double err = std::abs(pairwise_distance_exact(g, tx, rx, 15, 0) - pairwise_distance_fresnel(g, tx, rx, 15, 0));
    CHECK(err <= previous);
    previous = err;
  }
}

TEST_CASE("intersection test") {
  auto a = ArrayConfig::ula(4, 0.1);
  CHECK_FALSE(arrays_intersect(LinkGeometry(0.01), a, a));
  CHECK(arrays_intersect(LinkGeometry(0.1, 1.2, -1.2), a, a));
}
