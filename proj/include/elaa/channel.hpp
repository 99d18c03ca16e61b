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

#ifndef ELAA_CHANNEL_HPP
#define ELAA_CHANNEL_HPP

#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

namespace elaa
{

using cdouble = std::complex<double>;

inline constexpr double speed_of_light = 299792458.0;

/// Sentinel distance selecting the plane-wavefront (far-field) manifold for a
/// path; every finite positive distance selects the spherical-wave manifold.
inline constexpr double far_field = std::numeric_limits<double>::infinity();

inline bool is_far_field(double distance_m) { return !(distance_m < far_field); }

/// Uniform frequency sampling: f_n = f_start + n * f_step, n = 0 .. n_freq-1.
struct FrequencyGrid
{
    double f_start_hz = 0.0;
    double f_step_hz = 0.0;
    std::size_t n_freq = 0;

    double frequency(std::size_t n) const { return f_start_hz + double(n) * f_step_hz; }
    double span() const { return double(n_freq - 1) * f_step_hz; }

    /// Unambiguous delay range 1 / f_step in seconds.
    double max_delay() const { return 1.0 / f_step_hz; }

    /// Throws std::invalid_argument unless all frequencies are positive,
    /// f_step > 0 and n_freq >= 1.
    void validate() const;
};

/// Per-element path visibility and power variation, entries in [0, 1].
/// An empty vector is shorthand for the all-one (fully stationary) vector.
struct SnsVector
{
    std::vector<double> values;

    bool is_all_ones() const { return values.empty(); }
    std::size_t size() const { return values.size(); }
    double at(std::size_t m) const { return values.empty() ? 1.0 : values[m]; }

    /// Throws std::invalid_argument when any entry lies outside [0, 1].
    void validate() const;
};

/// One propagation path. Angles follow the array coordinate convention
/// (azimuth from +x toward +y, elevation upward from the horizontal plane);
/// `distance_m` is measured from the array reference to the last-bounce
/// scatterer and may be the `far_field` sentinel; `delay_s` and `gain` are
/// defined at the reference point.
struct PathParams
{
    double azimuth_deg = 0.0;
    double elevation_deg = 0.0;
    double distance_m = far_field;
    double delay_s = 0.0;
    cdouble gain{1.0, 0.0};
    SnsVector sns; // empty = all ones

    void validate(std::size_t n_elements) const;
};

/// M x N complex channel frequency response (elements x frequencies),
/// element-major storage.
struct ChannelTensor
{
    std::size_t m_elements = 0;
    FrequencyGrid grid;
    std::vector<cdouble> data;

    ChannelTensor() = default;
    ChannelTensor(std::size_t m, const FrequencyGrid &g)
        : m_elements(m), grid(g), data(m * g.n_freq, cdouble{0.0, 0.0})
    {
    }

    std::size_t n_freq() const { return grid.n_freq; }
    cdouble &at(std::size_t m, std::size_t n) { return data[m * grid.n_freq + n]; }
    const cdouble &at(std::size_t m, std::size_t n) const { return data[m * grid.n_freq + n]; }
    cdouble *row(std::size_t m) { return data.data() + m * grid.n_freq; }
    const cdouble *row(std::size_t m) const { return data.data() + m * grid.n_freq; }

    /// Total energy: squared Frobenius norm over all elements and frequencies.
    double energy() const;
};

} // namespace elaa

#endif
