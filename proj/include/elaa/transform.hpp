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

#ifndef ELAA_TRANSFORM_HPP
#define ELAA_TRANSFORM_HPP

#include <optional>
#include <string>

#include "elaa/channel.hpp"

namespace elaa
{

enum class Window
{
    rect,
    hann,
    hamming,
};

Window parse_window(const std::string &name);
std::string to_string(Window window);

/// M x K complex impulse responses (elements x delay bins),
/// K = n_freq * zero_pad_factor and delay bin k maps to k * delay_step_s.
struct CirTensor
{
    std::size_t m_elements = 0;
    std::size_t n_bins = 0;
    double delay_step_s = 0.0;
    Window window = Window::rect;
    std::size_t zero_pad_factor = 1;
    std::vector<cdouble> data;

    cdouble &at(std::size_t m, std::size_t k) { return data[m * n_bins + k]; }
    const cdouble &at(std::size_t m, std::size_t k) const { return data[m * n_bins + k]; }
    const cdouble *row(std::size_t m) const { return data.data() + m * n_bins; }
};

/// Dense real matrix, row-major (rows follow the element order).
struct RealMatrix
{
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    double &at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    const double &at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

/// Windowed inverse discrete Fourier transform of each element's CFR:
/// h_m[k] = (1/sum_n w_n) sum_n w_n H_m(f_n) exp(+j 2 pi n k / K).
/// The delay axis is one-sided [0, 1/f_step) with no fftshift.
CirTensor cfr_to_cir(const ChannelTensor &tensor, Window window = Window::hann,
                     std::size_t zero_pad_factor = 4);

/// 10 log10 |h|^2 per delay bin for one element, or for the element-averaged
/// power when `element` is empty.
std::vector<double> power_delay_profile(const CirTensor &cir,
                                        std::optional<std::size_t> element);

/// 20 log10 |h| normalized so the global peak is 0 dB, clipped below at
/// floor_db (which must be negative). Rows follow the element order.
RealMatrix cir_heatmap(const CirTensor &cir, double floor_db = -30.0);

} // namespace elaa

#endif
