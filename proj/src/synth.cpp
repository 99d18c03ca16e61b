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

#include "elaa/synth.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

#include "elaa/manifold.hpp"
#include "phasor.hpp"
#include "rng.hpp"

namespace elaa
{

namespace
{
constexpr double pi = 3.141592653589793238462643383279502884;
}

SynthesisMode parse_synthesis_mode(const std::string &name)
{
    std::string lower;
    for (char c : name)
        lower.push_back(char(std::tolower(static_cast<unsigned char>(c))));
    if (lower == "ff")
        return SynthesisMode::FF;
    if (lower == "nf-stationary")
        return SynthesisMode::NF_STATIONARY;
    if (lower == "nf-sns")
        return SynthesisMode::NF_SNS;
    throw std::invalid_argument("unknown synthesis mode '" + name +
                                "' (expected ff, nf-stationary or nf-sns)");
}

std::string to_string(SynthesisMode mode)
{
    switch (mode)
    {
    case SynthesisMode::FF:
        return "ff";
    case SynthesisMode::NF_STATIONARY:
        return "nf-stationary";
    default:
        return "nf-sns";
    }
}

SnsVector make_vr_arc(std::size_t m, const VrSpec &spec)
{
    if (m == 0)
        throw std::invalid_argument("make_vr_arc: empty array");
    if (spec.width > m)
        throw std::invalid_argument("make_vr_arc: width exceeds the array size");
    if (spec.taper_len * 2 > spec.width)
        throw std::invalid_argument("make_vr_arc: taper longer than half the arc");
    if (spec.center_index >= m)
        throw std::invalid_argument("make_vr_arc: center index out of range");
    if (!(spec.plateau_level > 0.0) || !(spec.plateau_level <= 1.0))
        throw std::invalid_argument("make_vr_arc: plateau level must lie in (0, 1]");

    SnsVector sns;
    sns.values.assign(m, 0.0);

    const auto width = spec.width;
    const auto taper = spec.taper_len;
    // Arc start so that center_index sits at arc offset (width-1)/2.
    const long long start = (long long)spec.center_index - (long long)((width - 1) / 2);
    for (std::size_t j = 0; j < width; ++j)
    {
        double ramp = 1.0;
        const std::size_t edge = std::min(j, width - 1 - j);
        if (edge < taper)
            ramp = 0.5 * (1.0 - std::cos(pi * double(edge + 1) / double(taper + 1)));
        const long long idx = ((start + (long long)j) % (long long)m + (long long)m) % (long long)m;
        sns.values[std::size_t(idx)] = spec.plateau_level * ramp;
    }
    return sns;
}

ChannelTensor synthesize_cfr(const ArrayGeometry &geom, const FrequencyGrid &grid,
                             const std::vector<PathParams> &paths, SynthesisMode mode)
{
    geom.validate();
    grid.validate();

    const std::size_t m_elements = geom.size();
    const std::size_t n_freq = grid.n_freq;
    ChannelTensor tensor(m_elements, grid);

    for (const auto &path : paths)
    {
        path.validate(m_elements);
        if (!(path.delay_s < grid.max_delay()))
            throw std::invalid_argument("synthesize_cfr: path delay aliases (delay >= 1/f_step)");

        const SteeringVectors sv =
            mode == SynthesisMode::FF
                ? farfield_steering(geom, path.azimuth_deg, path.elevation_deg)
                : path_steering(geom, path.azimuth_deg, path.elevation_deg, path.distance_m);

        const bool use_sns = mode == SynthesisMode::NF_SNS;
        for (std::size_t m = 0; m < m_elements; ++m)
        {
            const double s = use_sns ? path.sns.at(m) : 1.0;
            if (s == 0.0)
                continue;
            const cdouble scale = (s * sv.amplitude[m]) * path.gain;
            detail::add_phase_ramp(tensor.row(m), n_freq, grid, sv.delay_s[m] + path.delay_s,
                                   scale);
        }
    }
    return tensor;
}

ChannelTensor add_noise(const ChannelTensor &tensor, double snr_db, std::uint64_t seed)
{
    if (!std::isfinite(snr_db))
        throw std::invalid_argument("add_noise: snr must be finite");
    const double signal_energy = tensor.energy();
    if (!(signal_energy > 0.0))
        throw std::invalid_argument("add_noise: zero-energy tensor, SNR undefined");

    const std::size_t m_elements = tensor.m_elements;
    const std::size_t n_freq = tensor.n_freq();
    const double per_sample_var =
        signal_energy / (double(m_elements) * double(n_freq)) * std::pow(10.0, -snr_db / 10.0);
    const double sigma = std::sqrt(per_sample_var);

    ChannelTensor out = tensor;
    for (std::size_t m = 0; m < m_elements; ++m)
    {
        detail::GaussianStream stream(detail::substream_seed(seed, m));
        cdouble *row = out.row(m);
        for (std::size_t n = 0; n < n_freq; ++n)
            row[n] += sigma * stream.next_complex();
    }
    return out;
}

} // namespace elaa
