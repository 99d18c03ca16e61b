// SPDX-License-Identifier: Apache-2.0
//
// elaachan - near-field channel synthesis, estimation and reconstruction
// for extremely large antenna arrays
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

#ifndef ELAA_SYNTH_HPP
#define ELAA_SYNTH_HPP

#include <cstdint>
#include <string>

#include "elaa/channel.hpp"
#include "elaa/geometry.hpp"

namespace elaa
{

/// Wavefront / stationarity assumption used when assembling a channel:
/// FF forces the plane-wave manifold and ignores per-path distances,
/// NF_STATIONARY uses spherical wavefronts with all-one visibility,
/// NF_SNS additionally applies each path's SnS vector.
enum class SynthesisMode
{
    FF,
    NF_STATIONARY,
    NF_SNS,
};

SynthesisMode parse_synthesis_mode(const std::string &name); // "ff" | "nf-stationary" | "nf-sns"
std::string to_string(SynthesisMode mode);

/// Visibility-region arc: `width` contiguous elements (circular) centered at
/// `center_index`, held at `plateau_level` with raised-cosine ramps of
/// `taper_len` elements at both ends, zero elsewhere.
struct VrSpec
{
    std::size_t center_index = 0;
    std::size_t width = 0;
    std::size_t taper_len = 0;
    double plateau_level = 1.0;
};

/// Generate the SnS vector for a single visibility arc on an m-element array.
SnsVector make_vr_arc(std::size_t m, const VrSpec &spec);

/// Assemble the channel tensor H(m, n) = sum_l S_{m,l} A_{m,l}(f_n) g_l
/// exp(-j 2 pi f_n tau_l) for the given mode. Throws on delay aliasing
/// (delay >= 1/f_step) and on SnS/geometry length mismatch.
ChannelTensor synthesize_cfr(const ArrayGeometry &geom, const FrequencyGrid &grid,
                             const std::vector<PathParams> &paths, SynthesisMode mode);

/// Add circularly-symmetric complex white Gaussian noise so that total signal
/// energy over total noise energy equals 10^(snr_db/10) in expectation.
/// Deterministic for a fixed (seed, dimensions) pair: element m draws from an
/// mt19937_64 substream keyed by splitmix64(seed, m), mapped through
/// Box-Muller. Throws std::invalid_argument on a zero-energy tensor.
ChannelTensor add_noise(const ChannelTensor &tensor, double snr_db, std::uint64_t seed);

} // namespace elaa

#endif
