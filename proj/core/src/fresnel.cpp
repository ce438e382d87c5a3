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

#include "nfedof/fresnel.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace nfedof {

namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxIter = 200;
constexpr double kSeriesLimit = 1.5;

// C(x) = sum_k (-1)^k (pi/2)^{2k} x^{4k+1} / ((2k)! (4k+1))
// S(x) = sum_k (-1)^k (pi/2)^{2k+1} x^{4k+3} / ((2k+1)! (4k+3))
FresnelPair series(double x) {
  const double t = 0.5 * std::numbers::pi * x * x;
  double term = x;  // (pi x^2/2)^j x / j!
  double c = 0.0, s = 0.0;
  for (int j = 0; j < kMaxIter; ++j) {
    const double contrib = term / (2 * j + 1);
    switch (j % 4) {
      case 0: c += contrib; break;
      case 1: s += contrib; break;
      case 2: c -= contrib; break;
      default: s -= contrib; break;
    }
    term *= t / (j + 1);
    if (term < kEps * (std::abs(c) + std::abs(s))) break;
  }
  return {c, s};
}

FresnelPair continued_fraction(double x) {
  using cplx = std::complex<double>;
  constexpr double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  const double pix2 = std::numbers::pi * x * x;
  cplx b(1.0, -pix2);
  cplx cc = 1.0 / tiny;
  cplx d = 1.0 / b;
  cplx h = d;
  int n = -1;
  for (int k = 2; k <= kMaxIter; ++k) {
    n += 2;
    const double a = -static_cast<double>(n) * (n + 1);
    b += 4.0;
    d = 1.0 / (a * d + b);
    cc = b + a / cc;
    const cplx del = cc * d;
    h *= del;
    if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < kEps) break;
  }
  h *= cplx(x, -x);
  const cplx cs = cplx(0.5, 0.5) * (1.0 - cplx(std::cos(0.5 * pix2), std::sin(0.5 * pix2)) * h);
  return {cs.real(), cs.imag()};
}

}  // namespace

FresnelPair fresnel_cs(double x) {
  if (!std::isfinite(x)) throw std::domain_error("Fresnel integral argument must be finite");
  const double ax = std::abs(x);
  if (ax == 0.0) return {0.0, 0.0};
  // |C - 1/2|, |S - 1/2| <= 1/(pi x) < 4e-9 here, and pi x^2 would lose all phase digits.
  if (ax > 1e8) return x > 0 ? FresnelPair{0.5, 0.5} : FresnelPair{-0.5, -0.5};
  FresnelPair out = ax <= kSeriesLimit ? series(ax) : continued_fraction(ax);
  if (x < 0) {
    out.c_value = -out.c_value;
    out.s_value = -out.s_value;
  }
  return out;
}

}  // namespace nfedof
