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

#pragma once

#include <complex>
#include <vector>

namespace nfedof::detail {

// Forward transform X[m] = sum_k x[k] exp(-j 2 pi k m / n). Radix-2 when n
// is a power of two, direct O(n^2) evaluation otherwise.
std::vector<std::complex<double>> forward_dft(std::vector<std::complex<double>> x);

}  // namespace nfedof::detail
