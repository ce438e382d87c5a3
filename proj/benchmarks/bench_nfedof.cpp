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

#include <benchmark/benchmark.h>

#include "nfedof/beamspace.hpp"
#include "nfedof/channel_model.hpp"
#include "nfedof/fresnel.hpp"
#include "nfedof/measurement_pipeline.hpp"
#include "nfedof/scenario.hpp"
#include "nfedof/spectral_analysis.hpp"

namespace {

const nfedof::Carrier k29 = nfedof::Carrier::from_frequency(29e9);

void BM_GainProfile(benchmark::State& state, nfedof::GainEvaluator evaluator) {
  const int m = static_cast<int>(state.range(0));
  auto cfg = nfedof::ArrayConfig::ula(m, k29.half_wavelength());
  auto cb = nfedof::DftCodebook::uniform_sine(m);
  const double r = 2 * cfg.aperture();
  for (auto _ : state) benchmark::DoNotOptimize(nfedof::gain_profile(cfg, k29, 0.3, r, cb, evaluator));
}
BENCHMARK_CAPTURE(BM_GainProfile, direct, nfedof::GainEvaluator::direct)->RangeMultiplier(4)->Range(16, 1024);
BENCHMARK_CAPTURE(BM_GainProfile, fresnel, nfedof::GainEvaluator::fresnel)->RangeMultiplier(4)->Range(16, 1024);

void BM_FftSpectrum(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  auto cfg = nfedof::ArrayConfig::ula(m, k29.half_wavelength());
  auto v = nfedof::nf_response(cfg, k29, 0.3, 2 * cfg.aperture());
  for (auto _ : state) benchmark::DoNotOptimize(nfedof::fft_spectrum(v));
}
BENCHMARK(BM_FftSpectrum)->RangeMultiplier(4)->Range(16, 4096);

void BM_FresnelCS(benchmark::State& state) {
  double x = -10.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(nfedof::fresnel_cs(x));
    x = x > 10.0 ? -10.0 : x + 0.013;
  }
}
BENCHMARK(BM_FresnelCS);

void BM_EigenSpectrum(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto tx = nfedof::ArrayConfig::ula(4 * n, k29.half_wavelength());
  auto rx = nfedof::ArrayConfig::ula(n, k29.half_wavelength());
  auto h = nfedof::build_channel(nfedof::LinkGeometry(0.5), tx, rx, k29);
  for (auto _ : state) benchmark::DoNotOptimize(nfedof::eigen_spectrum(h));
}
BENCHMARK(BM_EigenSpectrum)->RangeMultiplier(2)->Range(4, 64);

void BM_TestbedPipeline(benchmark::State& state) {
  auto s = nfedof::testbed_scenario(0.35);
  for (auto _ : state) {
    auto m = nfedof::synth_rssi(s.link, s.tx, s.rx, s.carrier, s.tx_codebook, s.rx_codebook, s.phase_bits);
    benchmark::DoNotOptimize(nfedof::estimate_edof(m));
  }
}
BENCHMARK(BM_TestbedPipeline);

}  // namespace

BENCHMARK_MAIN();
