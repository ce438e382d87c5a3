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

#include <json.hpp>

#include "nfedof/range_metrics.hpp"
#include "oracles.hpp"

using namespace nfedof;

namespace {
ApertureLink fixture_link(double phi_t = 0.0) {
  ApertureLink link;
  link.tx_aperture_m = 0.02;
  link.rx_aperture_m = 0.30;
  link.tx_orientation_rad = phi_t;
  link.tx_elements = 4;
  link.rx_elements = 12;
  return link;
}
const Carrier kFixture = Carrier::from_wavelength(0.0075);
}  // namespace

TEST_CASE("beamwidth and cross range") {
  const auto lam = Carrier::from_wavelength(0.01);
  auto b = beamwidth_and_crossrange(0.01, 0.0, lam, 5.0);
  CHECK(b.beamwidth_rad == doctest::Approx(1.0));
  CHECK(b.cross_range_m == doctest::Approx(5.0));
  CHECK(beamwidth_and_crossrange(0.01, 0.0, lam, 10.0).cross_range_m == doctest::Approx(2 * b.cross_range_m));

  // Aperture giving a 3 degree beam.
  const double three_deg = 3.0 * std::numbers::pi / 180;
  const double dt = lam.wavelength() / three_deg;
  CHECK(beamwidth_and_crossrange(dt, 0.0, lam, 10.0).cross_range_m == doctest::Approx(0.52).epsilon(0.01));
  CHECK(beamwidth_and_crossrange(dt, 0.0, lam, 1000.0).cross_range_m == doctest::Approx(52.0).epsilon(0.01));
  CHECK_THROWS_AS(beamwidth_and_crossrange(dt, std::numbers::pi / 2, lam, 10.0), std::domain_error);
  CHECK_THROWS_AS(beamwidth_and_crossrange(dt, 0.0, lam, 0.0), std::invalid_argument);
}

TEST_CASE("continuous edof and range scales at the printed fixture") {
  auto link = fixture_link();
  CHECK(edof1(link, kFixture, 0.8) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(emrd(link, kFixture) == doctest::Approx(0.80).epsilon(1e-12));
  CHECK(msmd_half_wavelength(link) == doctest::Approx(0.15).epsilon(1e-12));
  CHECK(rescaled_distance(link, kFixture, 2) == doctest::Approx(0.40).epsilon(1e-12));
  CHECK(rescaled_distance(link, kFixture, 1) == doctest::Approx(emrd(link, kFixture)));
  CHECK(rescaled_distance(link, kFixture, link.v_max()) == doctest::Approx(msmd(link, kFixture)));
  CHECK(edof1(fixture_link(std::numbers::pi / 3), kFixture, 0.8) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(rescaled_distance(link, kFixture, 0), std::invalid_argument);

  ApertureLink unit;
  unit.tx_aperture_m = unit.rx_aperture_m = 0.0075;
  CHECK(edof1(unit, kFixture, 0.0075) == doctest::Approx(1.0));
  CHECK(emrd(unit, kFixture) == doctest::Approx(0.0075));
  CHECK(msmd(unit, kFixture) == doctest::Approx(emrd(unit, kFixture)));
}

TEST_CASE("maximum multiplexing distance: general and half-wavelength forms agree") {
  const auto c = Carrier::from_wavelength(0.0103);
  auto tx = ArrayConfig::ula(16, c.half_wavelength());
  auto rx = ArrayConfig::ula(4, c.half_wavelength());
  auto link = ApertureLink::from(tx, rx, LinkGeometry(1.0));
  CHECK(link.v_max() == 16);
  CHECK(msmd(link, c) == doctest::Approx(msmd_half_wavelength(link)).epsilon(1e-12));
  CHECK(msmd(link, c) == doctest::Approx(0.5 * rx.aperture()).epsilon(1e-12));
}

TEST_CASE("Rayleigh distance and focusing limit") {
  auto r = rayleigh_and_focus_limit(1.0, Carrier::from_wavelength(2.0), 0.4);
  CHECK(r.rayleigh_m == doctest::Approx(1.0));
  CHECK(r.focus_limit_m == doctest::Approx(std::cos(0.4) * std::cos(0.4) / 7));
  const auto k29 = Carrier::from_frequency(29e9);
  const double dt = ArrayConfig::ula(256, k29.half_wavelength()).aperture();
  auto big = rayleigh_and_focus_limit(dt, k29, 0.0);
  CHECK(big.rayleigh_m == doctest::Approx(338.74).epsilon(1e-3));
  CHECK(std::abs(big.rayleigh_m - 336.0) / 336.0 < 0.02);
  CHECK(big.focus_limit_m == doctest::Approx(big.rayleigh_m / 7));
}

TEST_CASE("property: algebraic identities and dimensional scaling") {
  auto gen = oracle::rng(31);
  std::uniform_real_distribution<double> ap(0.005, 2.0), ang(-1.4, 1.4), lam(0.001, 0.1), rr(0.1, 100.0), sc(0.1, 10.0);
  std::uniform_int_distribution<int> el(1, 64);
  for (int trial = 0; trial < 200; ++trial) {
    ApertureLink link;
    link.tx_aperture_m = ap(gen);
    link.rx_aperture_m = ap(gen);
    link.tx_orientation_rad = ang(gen);
    link.rx_orientation_rad = ang(gen);
    link.tx_elements = el(gen);
    link.rx_elements = el(gen);
    const auto c = Carrier::from_wavelength(lam(gen));
    const double r = rr(gen);
    const double e = emrd(link, c);
    CHECK(edof1(link, c, e) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(edof1(link, c, r) * r == doctest::Approx(e).epsilon(1e-12));
    CHECK(msmd(link, c) * link.v_max() == doctest::Approx(e).epsilon(1e-12));
    CHECK(msmd(link, c) <= e * (1 + 1e-12));

    const double s = sc(gen);
    ApertureLink scaled = link;
    scaled.tx_aperture_m *= s;
    scaled.rx_aperture_m *= s;
    const auto cs = Carrier::from_wavelength(c.wavelength() * s);
    CHECK(edof1(scaled, cs, r * s) == doctest::Approx(edof1(link, c, r)).epsilon(1e-12));
    CHECK(emrd(scaled, cs) == doctest::Approx(s * e).epsilon(1e-12));
    CHECK(msmd(scaled, cs) == doctest::Approx(s * msmd(link, c)).epsilon(1e-12));
    CHECK(beamwidth_and_crossrange(scaled.tx_aperture_m, link.tx_orientation_rad, cs, r * s).cross_range_m ==
          doctest::Approx(s * beamwidth_and_crossrange(link.tx_aperture_m, link.tx_orientation_rad, c, r).cross_range_m)
              .epsilon(1e-12));
  }
}

TEST_CASE("endfire is rejected") {
  auto link = fixture_link();
  link.rx_orientation_rad = std::numbers::pi / 2;
  CHECK_THROWS_AS(edof1(link, kFixture, 1.0), std::domain_error);
  CHECK_THROWS_AS(emrd(link, kFixture), std::domain_error);
  CHECK_THROWS_AS(msmd(link, kFixture), std::domain_error);
}

TEST_CASE("range metrics report") {
  auto link = fixture_link();
  auto rep = range_metrics(link, kFixture, 0.8, 0.0, 2);
  CHECK(rep.emrd_m == doctest::Approx(rep.edof1 * rep.range_m));
  CHECK(rep.focus_limit_m < rep.rayleigh_m);
  CHECK(rep.v_max == 12);
  CHECK(rep.min_elements == 4);
  CHECK(rep.rescaled_m == doctest::Approx(0.40));
  auto j = nlohmann::json::parse(range_metrics_json(rep));
  CHECK(j["emrd_m"].get<double>() == doctest::Approx(0.8));
  const auto text = range_metrics_text(rep);
  CHECK(text.find("emrd_m") != std::string::npos);
  CHECK(std::count(text.begin(), text.end(), '\n') >= 10);
}
