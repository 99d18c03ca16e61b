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

#include "elaa/manifold.hpp"

#include <cmath>
#include <stdexcept>

#include "phasor.hpp"

namespace elaa
{

SteeringVectors nearfield_steering(const ArrayGeometry &geom, double azimuth_deg,
                                   double elevation_deg, double distance_m)
{
    geom.validate();
    if (!(distance_m > 0.0) || !std::isfinite(distance_m))
        throw std::invalid_argument("nearfield_steering: distance must be finite and positive");
    if (!(distance_m > geom.max_radius()))
        throw std::invalid_argument(
            "nearfield_steering: source must lie strictly outside the array");

    const Vec3 src = source_point(azimuth_deg, elevation_deg, distance_m, geom.reference);
    const Vec3 &ref = geom.reference;
    const double d_ref = norm(src - ref);

    SteeringVectors sv;
    sv.delay_s.reserve(geom.size());
    sv.amplitude.reserve(geom.size());
    for (const auto &p : geom.positions)
    {
        const double d_m = norm(src - p);
        // d_m - d_ref without cancellation:
        //   ||s-p||^2 - ||s-r||^2 = (2s - p - r) . (r - p)
        const Vec3 sum = (src - p) + (src - ref);
        const double excess = dot(sum, ref - p) / (d_m + d_ref);
        sv.delay_s.push_back(excess / speed_of_light);
        sv.amplitude.push_back(d_ref / d_m);
    }
    return sv;
}

SteeringVectors farfield_steering(const ArrayGeometry &geom, double azimuth_deg,
                                  double elevation_deg)
{
    geom.validate();
    const Vec3 u = direction_vector(azimuth_deg, elevation_deg);

    SteeringVectors sv;
    sv.delay_s.reserve(geom.size());
    sv.amplitude.assign(geom.size(), 1.0);
    for (const auto &p : geom.positions)
        sv.delay_s.push_back(-dot(p - geom.reference, u) / speed_of_light);
    return sv;
}

SteeringVectors path_steering(const ArrayGeometry &geom, double azimuth_deg,
                              double elevation_deg, double distance_m)
{
    if (is_far_field(distance_m))
        return farfield_steering(geom, azimuth_deg, elevation_deg);
    return nearfield_steering(geom, azimuth_deg, elevation_deg, distance_m);
}

namespace
{

ManifoldMatrix steering_to_manifold(const SteeringVectors &sv, std::size_t m_elements,
                                    const FrequencyGrid &grid)
{
    ManifoldMatrix out;
    out.m_elements = m_elements;
    out.grid = grid;
    out.entries.resize(m_elements * grid.n_freq);
    for (std::size_t m = 0; m < m_elements; ++m)
    {
        cdouble *row = out.entries.data() + m * grid.n_freq;
        detail::PhasorSweep sweep(grid, sv.delay_s[m]);
        for (std::size_t n = 0; n < grid.n_freq; ++n, sweep.advance())
            row[n] = sv.amplitude[m] * sweep.value();
    }
    return out;
}

} // namespace

ManifoldMatrix nearfield_manifold(const ArrayGeometry &geom, const FrequencyGrid &grid,
                                  double azimuth_deg, double elevation_deg, double distance_m)
{
    grid.validate();
    return steering_to_manifold(nearfield_steering(geom, azimuth_deg, elevation_deg, distance_m),
                                geom.size(), grid);
}

ManifoldMatrix farfield_manifold(const ArrayGeometry &geom, const FrequencyGrid &grid,
                                 double azimuth_deg, double elevation_deg)
{
    grid.validate();
    return steering_to_manifold(farfield_steering(geom, azimuth_deg, elevation_deg), geom.size(),
                                grid);
}

double fraunhofer_distance(double aperture_m, double frequency_hz)
{
    if (!(aperture_m >= 0.0) || !std::isfinite(aperture_m))
        throw std::invalid_argument("fraunhofer_distance: aperture must be non-negative");
    if (!(frequency_hz > 0.0) || !std::isfinite(frequency_hz))
        throw std::invalid_argument("fraunhofer_distance: frequency must be positive");
    return 2.0 * aperture_m * aperture_m * frequency_hz / speed_of_light;
}

} // namespace elaa
