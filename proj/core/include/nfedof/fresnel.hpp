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

namespace nfedof {

/// Fresnel integrals C(x) = int_0^x cos(pi t^2 / 2) dt and
/// S(x) = int_0^x sin(pi t^2 / 2) dt.
struct FresnelPair {
  double c_value = 0.0;
  double s_value = 0.0;
};

/// Accurate to better than 1e-14 absolute for finite x. Power series for
/// |x| <= 1.5; beyond that the continued fraction of erfc on the complex
/// diagonal, evaluated with the modified Lentz method.
FresnelPair fresnel_cs(double x);

}  // namespace nfedof
