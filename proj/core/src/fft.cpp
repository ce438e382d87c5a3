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

#include "fft.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <utility>

namespace nfedof::detail {

namespace {

using cplx = std::complex<double>;

void radix2(std::vector<cplx>& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    // Twiddles computed directly rather than by recurrence to keep ~1e-16 accuracy.
    std::vector<cplx> w(half);
    for (std::size_t k = 0; k < half; ++k)
      w[k] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(len));
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const cplx u = a[i + k];
        const cplx v = a[i + k + half] * w[k];
        a[i + k] = u + v;
        a[i + k + half] = u - v;
      }
    }
  }
}

std::vector<cplx> direct(const std::vector<cplx>& x) {
  const std::size_t n = x.size();
  std::vector<cplx> out(n);
  for (std::size_t m = 0; m < n; ++m) {
    cplx acc{0.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t idx = (k * m) % n;
      acc += x[k] * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(idx) / static_cast<double>(n));
    }
    out[m] = acc;
  }
  return out;
}

}  // namespace

std::vector<cplx> forward_dft(std::vector<cplx> x) {
  if (x.size() <= 1) return x;
  if (!std::has_single_bit(x.size())) return direct(x);
  radix2(x);
  return x;
}

}  // namespace nfedof::detail
