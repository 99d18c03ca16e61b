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

#include "elaa/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace elaa
{

namespace
{
constexpr double pi = 3.141592653589793238462643383279502884;
constexpr double deg2rad = pi / 180.0;
} // namespace

Vec3 operator+(const Vec3 &a, const Vec3 &b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
Vec3 operator-(const Vec3 &a, const Vec3 &b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
Vec3 operator*(double s, const Vec3 &v) { return {s * v.x, s * v.y, s * v.z}; }
double dot(const Vec3 &a, const Vec3 &b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
double norm(const Vec3 &v) { return std::sqrt(dot(v, v)); }

double ArrayGeometry::max_radius() const
{
    double r = 0.0;
    for (const auto &p : positions)
        r = std::max(r, norm(p - reference));
    return r;
}

void ArrayGeometry::validate() const
{
    if (positions.empty())
        throw std::invalid_argument("ArrayGeometry needs at least one element");
    auto finite = [](const Vec3 &v) {
        return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
    };
    if (!finite(reference))
        throw std::invalid_argument("ArrayGeometry reference is not finite");
    for (const auto &p : positions)
        if (!finite(p))
            throw std::invalid_argument("ArrayGeometry element position is not finite");
}

ArrayGeometry build_uca(std::size_t n_elements, double radius, double height)
{
    if (n_elements == 0)
        throw std::invalid_argument("build_uca: at least one element required");
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw std::invalid_argument("build_uca: radius must be positive");
    if (!std::isfinite(height))
        throw std::invalid_argument("build_uca: height must be finite");

    ArrayGeometry geom;
    geom.reference = {0.0, 0.0, height};
    geom.positions.reserve(n_elements);
    for (std::size_t m = 0; m < n_elements; ++m)
    {
        double angle = 2.0 * pi * double(m) / double(n_elements);
        geom.positions.push_back(
            {radius * std::cos(angle), radius * std::sin(angle), height});
    }
    geom.closed_ring = true;
    return geom;
}

Vec3 direction_vector(double azimuth_deg, double elevation_deg)
{
    double az = azimuth_deg * deg2rad;
    double el = elevation_deg * deg2rad;
    return {std::cos(el) * std::cos(az), std::cos(el) * std::sin(az), std::sin(el)};
}

Vec3 source_point(double azimuth_deg, double elevation_deg, double distance,
                  const Vec3 &reference)
{
    if (!(distance > 0.0) || !std::isfinite(distance))
        throw std::invalid_argument("source_point: distance must be finite and positive");
    return reference + distance * direction_vector(azimuth_deg, elevation_deg);
}

} // namespace elaa
