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

#include "elaa/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace elaa
{

void FrequencyGrid::validate() const
{
    if (n_freq < 1)
        throw std::invalid_argument("FrequencyGrid: n_freq must be at least 1");
    if (!(f_step_hz > 0.0) || !std::isfinite(f_step_hz))
        throw std::invalid_argument("FrequencyGrid: f_step must be positive");
    if (!(f_start_hz > 0.0) || !std::isfinite(f_start_hz))
        throw std::invalid_argument("FrequencyGrid: all frequencies must be positive");
}

void SnsVector::validate() const
{
    for (double v : values)
        if (!(v >= 0.0) || !(v <= 1.0))
            throw std::invalid_argument("SnsVector: entries must lie in [0, 1]");
}

void PathParams::validate(std::size_t n_elements) const
{
    if (!std::isfinite(azimuth_deg) || azimuth_deg < -180.0 || azimuth_deg >= 180.0)
        throw std::invalid_argument("PathParams: azimuth must lie in [-180, 180)");
    if (!std::isfinite(elevation_deg) || elevation_deg < -90.0 || elevation_deg > 90.0)
        throw std::invalid_argument("PathParams: elevation must lie in [-90, 90]");
    if (!(distance_m > 0.0))
        throw std::invalid_argument("PathParams: distance must be positive or far_field");
    if (!(delay_s >= 0.0) || !std::isfinite(delay_s))
        throw std::invalid_argument("PathParams: delay must be non-negative");
    if (!std::isfinite(gain.real()) || !std::isfinite(gain.imag()))
        throw std::invalid_argument("PathParams: gain must be finite");
    if (!sns.is_all_ones() && sns.size() != n_elements)
        throw std::invalid_argument("PathParams: SnS length does not match the array");
    sns.validate();
}

double ChannelTensor::energy() const
{
    double e = 0.0;
    for (const auto &v : data)
        e += std::norm(v);
    return e;
}

} // namespace elaa
