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

#ifndef ELAA_RNG_HPP
#define ELAA_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace elaa::detail
{

// Frozen noise generator. mt19937_64 is bit-exact across platforms by the
// standard; the Gaussian mapping is done by hand (Box-Muller) because
// std::normal_distribution output is implementation-defined. Substreams are
// derived with splitmix64 so per-element generation is order-independent.

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream)
{
    return splitmix64(splitmix64(seed) ^ splitmix64(stream + 1));
}

class GaussianStream
{
  public:
    explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

    // Standard circularly-symmetric complex normal: real and imaginary parts
    // are independent N(0, 1/2), unit variance overall.
    std::complex<double> next_complex()
    {
        double u1 = next_unit_open();
        double u2 = next_unit_open();
        double r = std::sqrt(-std::log(u1)); // sqrt(2 * (1/2) * -ln u)
        double angle = two_pi * u2;
        return {r * std::cos(angle), r * std::sin(angle)};
    }

  private:
    static constexpr double two_pi = 6.283185307179586476925286766559;

    // Uniform in (0, 1): top 53 bits offset by half an ulp, never 0 or 1.
    double next_unit_open()
    {
        return (double(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    std::mt19937_64 engine_;
};

} // namespace elaa::detail

#endif
