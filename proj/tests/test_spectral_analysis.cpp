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

#include "nfedof/spectral_analysis.hpp"
#include "oracles.hpp"

using namespace nfedof;

namespace {
const Carrier k29 = Carrier::from_frequency(29e9);

// Plain double loop over receive elements, uncentred indices, Fresnel distances.
std::complex<double> brute_column_product(double r, int n_rx, double d, double lambda, double phi_t, double phi_r, int k,
                                          int l) {
  auto dist = [&](int m, int n) {
    const double across = m * d * std::cos(phi_t) - n * d * std::cos(phi_r);
    return r + m * d * std::sin(phi_t) - n * d * std::sin(phi_r) + across * across / (2 * r);
  };
  std::complex<double> acc = 0.0;
  for (int n = 0; n < n_rx; ++n) acc += std::polar(1.0, 2 * std::numbers::pi / lambda * (dist(k, n) - dist(l, n)));
  return acc;
}
}  // namespace

TEST_CASE("eigen spectrum basics") {
  Eigen::MatrixXcd one(1, 1);
  one(0, 0) = std::polar(1.0, 0.3);
  auto s = eigen_spectrum(one);
  REQUIRE(s.eigenvalues.size() == 1);
  CHECK(s.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(s.trace == doctest::Approx(1.0));
  CHECK_THROWS_AS(eigen_spectrum(Eigen::MatrixXcd(0, 0)), std::invalid_argument);
}

TEST_CASE("eigen spectrum agrees with SVD on random matrices") {
  auto gen = oracle::rng(11);
  std::normal_distribution<double> n01;
  std::uniform_int_distribution<int> dim(1, 9);
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::MatrixXcd h(dim(gen), dim(gen));
    for (Eigen::Index i = 0; i < h.size(); ++i) h.data()[i] = {n01(gen), n01(gen)};
    auto s = eigen_spectrum(h);
    auto sv = oracle::squared_singular_values(h);
    REQUIRE(s.eigenvalues.size() == sv.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < sv.size(); ++i) {
      CHECK(s.eigenvalues[i] == doctest::Approx(sv[i]).epsilon(1e-9).scale(sv[0]));
      if (i) CHECK(s.eigenvalues[i] <= s.eigenvalues[i - 1]);
      sum += s.eigenvalues[i];
    }
    CHECK(std::abs(sum - s.trace) <= 1e-10 * s.trace);
  }
}

TEST_CASE("far-field channel: one dominant eigenvalue") {
  auto tx = ArrayConfig::ula(16, k29.half_wavelength());
  auto rx = ArrayConfig::ula(4, k29.half_wavelength());
  auto s = eigen_spectrum(build_channel(LinkGeometry(500.0), tx, rx, k29));
  CHECK(s.eigenvalues[0] / 64.0 > 0.99);
  CHECK(s.eigenvalues[1] / 64.0 < 0.01);
  CHECK(spectral_edof(s) == 1);
}

TEST_CASE("spectral edof counting") {
  EigenSpectrum s;
  s.eigenvalues = {4, 4, 4, 0};
  CHECK(spectral_edof(s, 0.5) == 3);
  CHECK(spectral_edof(s, 1.0) == 3);
  s.eigenvalues = {0, 0};
  CHECK(spectral_edof(s) == 1);
  CHECK_THROWS_AS(spectral_edof(s, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(spectral_edof(EigenSpectrum{}), std::invalid_argument);
}

TEST_CASE("flat spectrum at the maximum multiplexing distance") {
  const double d = k29.half_wavelength();
  for (auto [m, n] : {std::pair{16, 4}, std::pair{32, 8}, std::pair{12, 4}}) {
    auto tx = ArrayConfig::ula(m, d);
    auto rx = ArrayConfig::ula(n, d);
    const double r = 0.5 * rx.aperture();  // D_r / 2
    auto s = eigen_spectrum(build_channel(LinkGeometry(r), tx, rx, k29, PhaseModel::fresnel));
    CHECK(spectral_edof(s, 0.5) == n);
    CHECK(s.eigenvalues.front() / s.eigenvalues.back() < 1.05);
    auto sv = oracle::squared_singular_values(build_channel(LinkGeometry(r), tx, rx, k29, PhaseModel::fresnel).entries);
    CHECK(sv.front() / sv.back() < 1.05);
  }
}

TEST_CASE("property: spectral edof is invariant under complex scaling") {
  auto gen = oracle::rng(12);
  std::uniform_real_distribution<double> range(0.02, 2.0), mag(1e-3, 1e3), phase(-3.0, 3.0);
  auto tx = ArrayConfig::ula(12, k29.half_wavelength());
  auto rx = ArrayConfig::ula(6, k29.half_wavelength());
  for (int trial = 0; trial < 100; ++trial) {
    auto h = build_channel(LinkGeometry(range(gen)), tx, rx, k29);
    const auto c = std::polar(mag(gen), phase(gen));
    Eigen::MatrixXcd scaled = h.entries * c;
    CHECK(spectral_edof(eigen_spectrum(h.entries)) == spectral_edof(eigen_spectrum(scaled)));
  }
}

TEST_CASE("equal-eigenvalue capacity") {
  CHECK(equal_eigen_capacity(1, CapacityParams::from_composite_snr(1.0)) == doctest::Approx(1.0));
  CHECK(equal_eigen_capacity(2, CapacityParams::from_composite_snr(4.0)) == doctest::Approx(2.0));
  CHECK(equal_eigen_capacity(3, CapacityParams::from_composite_snr(900.0)) == doctest::Approx(19.974634448255383));
  CHECK_THROWS_AS(equal_eigen_capacity(0, CapacityParams::from_composite_snr(1.0)), std::invalid_argument);

  auto p = CapacityParams::from_powers(2.0, 0.5, 4, 3);
  CHECK(p.composite_snr() == doctest::Approx(48.0));
  // Uniform power over EDoF equal eigenvalues MN/EDoF.
  for (int edof = 1; edof <= 4; ++edof) {
    std::vector<double> mu(edof, 12.0 / edof);
    CHECK(uniform_power_capacity(mu, 2.0, 0.5) == doctest::Approx(equal_eigen_capacity(edof, p)).epsilon(1e-12));
  }
  for (double rho : {1.0, 10.0, 1e3}) CHECK(equal_eigen_capacity(1, CapacityParams::from_composite_snr(rho)) == doctest::Approx(std::log2(1 + rho)));
}

TEST_CASE("column inner product: direct sum, closed form and brute force agree") {
  const double lambda = k29.wavelength();
  const double d = k29.half_wavelength();
  auto tx = ArrayConfig::ula(8, d);
  auto rx = ArrayConfig::ula(4, d);
  const double msmd = 4 * d * d / lambda;
  for (double phi : {0.0, 0.5}) {
    for (double r : {2 * msmd, 3.3 * msmd, 0.7}) {
      LinkGeometry g(r, phi, -0.2);
      for (auto [k, l] : {std::pair{1, 0}, std::pair{5, 2}, std::pair{0, 7}}) {
        const auto direct = column_inner_product(g, tx, rx, k29, k, l);
        const auto closed = column_inner_product_closed_form(g, tx, rx, k29, k, l);
        const auto brute = brute_column_product(r, 4, d, lambda, phi, -0.2, k, l);
        CHECK(std::abs(direct - brute) < 1e-10);
        CHECK(std::abs(direct - closed) < 1e-8 * 4);
        const double u = d * d * std::cos(phi) * std::cos(-0.2) * (k - l) / (lambda * r);
        CHECK(std::abs(direct) == doctest::Approx(std::abs(std::sin(std::numbers::pi * 4 * u) / std::sin(std::numbers::pi * u))));
      }
    }
  }
}

TEST_CASE("column inner product: limits") {
  const double d = k29.half_wavelength();
  auto tx = ArrayConfig::ula(6, d);
  auto rx = ArrayConfig::ula(5, d);
  CHECK(std::abs(column_inner_product(LinkGeometry(1e9), tx, rx, k29, 0, 3)) == doctest::Approx(5.0));
  CHECK(std::abs(column_inner_product_closed_form(LinkGeometry(1e9), tx, rx, k29, 0, 3)) == doctest::Approx(5.0));
  LinkGeometry g(1.0);
  LinkGeometry at_zero(orthogonality_distance(g, tx, rx, k29));
  CHECK(std::abs(column_inner_product(at_zero, tx, rx, k29, 1, 0)) < 1e-8 * 5);
  CHECK_THROWS_AS(column_inner_product(g, tx, rx, k29, 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(column_inner_product(g, tx, rx, k29, 0, 6), std::out_of_range);
}

TEST_CASE("all small separations vanish together at the orthogonality distance") {
  const double d = k29.half_wavelength();
  auto tx = ArrayConfig::ula(12, d);
  auto rx = ArrayConfig::ula(4, d);
  LinkGeometry g(orthogonality_distance(LinkGeometry(1.0), tx, rx, k29));
  for (int delta : {1, 2, 3, 5, 6, 7}) CHECK(std::abs(column_inner_product(g, tx, rx, k29, delta, 0)) < 1e-8 * 4);
  CHECK(std::abs(column_inner_product(g, tx, rx, k29, 4, 0)) == doctest::Approx(4.0));
}

TEST_CASE("spectrum record json") {
  EigenSpectrum s;
  s.eigenvalues = {3.0, 1.0};
  s.trace = 4.0;
  auto j = nlohmann::json::parse(spectrum_record_json(s, 2, 5.5));
  CHECK(j["eigenvalues"].size() == 2);
  CHECK(j["edof"] == 2);
  CHECK(j["capacity_bits"] == 5.5);
}
