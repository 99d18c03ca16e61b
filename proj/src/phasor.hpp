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

#ifndef ELAA_PHASOR_HPP
#define ELAA_PHASOR_HPP

#include <cmath>
#include <complex>
#include <cstddef>

#include "elaa/channel.hpp"

namespace elaa::detail
{

// Uniform-grid phasor e^{-j 2 pi f_n t}, f_n = f_start + n f_step, advanced by
// one complex multiply per frequency. Drift over a few thousand steps stays
// near 1e-13, and a zero delay yields exactly (1, 0) at every step.
class PhasorSweep
{
  public:
    PhasorSweep(const FrequencyGrid &grid, double delay_s)
        : value_(std::polar(1.0, -2.0 * pi * grid.f_start_hz * delay_s)),
          step_(std::polar(1.0, -2.0 * pi * grid.f_step_hz * delay_s))
    {
    }

    cdouble value() const { return value_; }
    void advance() { value_ *= step_; }

  private:
    static constexpr double pi = 3.141592653589793238462643383279502884;
    cdouble value_;
    cdouble step_;
};

// row[n] += scale * e^{-j 2 pi f_n t}
inline void add_phase_ramp(cdouble *row, std::size_t n_freq, const FrequencyGrid &grid,
                           double delay_s, cdouble scale)
{
    PhasorSweep sweep(grid, delay_s);
    for (std::size_t n = 0; n < n_freq; ++n, sweep.advance())
        row[n] += scale * sweep.value();
}

// sum_n conj(e^{-j 2 pi f_n t}) y[n] = sum_n e^{+j 2 pi f_n t} y[n]
inline cdouble correlate_phase_ramp(const cdouble *y, std::size_t n_freq,
                                    const FrequencyGrid &grid, double delay_s)
{
    PhasorSweep sweep(grid, delay_s);
    cdouble acc{0.0, 0.0};
    for (std::size_t n = 0; n < n_freq; ++n, sweep.advance())
        acc += std::conj(sweep.value()) * y[n];
    return acc;
}

} // namespace elaa::detail

#endif
