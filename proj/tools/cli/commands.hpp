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

#include <ostream>
#include <string>
#include <vector>

namespace nfedof::cli {

enum ExitCode : int {
  kOk = 0,
  kUsageError = 1,  // bad flags or configuration
  kDataError = 2,   // unreadable or inconsistent input data, failed writes
};

/// Runs the command line given without the program name. Regular output goes
/// to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses a range token: metres ("0.35"), or a multiple of the transmit
/// aperture ("2Dt") or of its Rayleigh distance ("RD", "0.25RD").
double parse_range_token(const std::string& token, double tx_aperture_m, double rayleigh_m);

}  // namespace nfedof::cli
