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

#ifndef ELAA_GEOMETRY_HPP
#define ELAA_GEOMETRY_HPP

#include <cstddef>
#include <vector>

namespace elaa
{

struct Vec3
{
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

Vec3 operator+(const Vec3 &a, const Vec3 &b);
Vec3 operator-(const Vec3 &a, const Vec3 &b);
Vec3 operator*(double s, const Vec3 &v);
double dot(const Vec3 &a, const Vec3 &b);
double norm(const Vec3 &v);

/// Ordered element positions plus the reference point all angles, distances
/// and delays relate to. Element order is significant and stable.
struct ArrayGeometry
{
    std::vector<Vec3> positions;
    Vec3 reference{0.0, 0.0, 0.0};

    // Set when adjacent elements wrap around (full rings); controls whether
    // per-element smoothing treats index 0 and index M-1 as neighbours.
    bool closed_ring = false;

    std::size_t size() const { return positions.size(); }

    /// Largest element distance from the reference point in meters.
    double max_radius() const;

    /// Throws std::invalid_argument when empty or any coordinate is non-finite.
    void validate() const;
};

/// Uniform circular array in the horizontal plane: element m sits at
/// angle 2*pi*m/M on a circle of `radius` meters, reference at the circle
/// center, both at `height` meters.
ArrayGeometry build_uca(std::size_t n_elements, double radius, double height);

/// Point at `distance` meters from `reference` in the direction given by
/// azimuth (from +x toward +y) and elevation (from the horizontal plane up),
/// both in degrees.
Vec3 source_point(double azimuth_deg, double elevation_deg, double distance,
                  const Vec3 &reference = Vec3{});

/// Unit direction vector for (azimuth, elevation) in degrees.
Vec3 direction_vector(double azimuth_deg, double elevation_deg);

} // namespace elaa

#endif
