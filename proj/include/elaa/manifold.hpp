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

#ifndef ELAA_MANIFOLD_HPP
#define ELAA_MANIFOLD_HPP

#include "elaa/channel.hpp"
#include "elaa/geometry.hpp"

namespace elaa
{

/// M x N complex array manifold (elements x frequencies).
struct ManifoldMatrix
{
    std::size_t m_elements = 0;
    FrequencyGrid grid;
    std::vector<cdouble> entries;

    cdouble &at(std::size_t m, std::size_t n) { return entries[m * grid.n_freq + n]; }
    const cdouble &at(std::size_t m, std::size_t n) const { return entries[m * grid.n_freq + n]; }
};

/// Frequency-independent steering description of one wavefront: per element
/// the excess delay relative to the reference point and the spreading-loss
/// amplitude. A manifold entry is amplitude[m] * exp(-j 2 pi f delay_s[m]).
///
/// The spherical wavefront carries amplitude d_ref / d_m (unity at the
/// reference); the plane wavefront has unit amplitude and excess delay
/// -(p_m - reference) . u / c.
struct SteeringVectors
{
    std::vector<double> delay_s;
    std::vector<double> amplitude;
};

/// Spherical-wave steering toward (azimuth, elevation, distance). The excess
/// delays are evaluated with a cancellation-free difference so they stay
/// accurate for distances many orders of magnitude beyond the aperture.
/// Throws std::invalid_argument when the source does not lie strictly outside
/// the array (distance ambiguity).
SteeringVectors nearfield_steering(const ArrayGeometry &geom, double azimuth_deg,
                                   double elevation_deg, double distance_m);

/// Plane-wave steering from direction (azimuth, elevation).
SteeringVectors farfield_steering(const ArrayGeometry &geom, double azimuth_deg,
                                  double elevation_deg);

/// Steering dispatch on the far_field sentinel.
SteeringVectors path_steering(const ArrayGeometry &geom, double azimuth_deg,
                              double elevation_deg, double distance_m);

/// Spherical-wave manifold: entry (m, n) = (d/d_m) exp(-j 2 pi f_n (d_m - d)/c)
/// with d_m the element-to-source distance and d the reference-to-source
/// distance. Unity at the reference point.
ManifoldMatrix nearfield_manifold(const ArrayGeometry &geom, const FrequencyGrid &grid,
                                  double azimuth_deg, double elevation_deg, double distance_m);

/// Plane-wavefront manifold: entry (m, n) = exp(+j 2 pi f_n (p_m - r) . u / c),
/// unit magnitude everywhere.
ManifoldMatrix farfield_manifold(const ArrayGeometry &geom, const FrequencyGrid &grid,
                                 double azimuth_deg, double elevation_deg);

/// Far-field boundary 2 D^2 f / c for an aperture of D meters at f Hz.
double fraunhofer_distance(double aperture_m, double frequency_hz);

} // namespace elaa

#endif
