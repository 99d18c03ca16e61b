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

#include "elaa/transform.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include "fft.hpp"

namespace elaa
{

namespace
{
constexpr double pi = 3.141592653589793238462643383279502884;
}

Window parse_window(const std::string &name)
{
    std::string lower;
    for (char c : name)
        lower.push_back(char(std::tolower(static_cast<unsigned char>(c))));
    if (lower == "rect")
        return Window::rect;
    if (lower == "hann")
        return Window::hann;
    if (lower == "hamming")
        return Window::hamming;
    throw std::invalid_argument("unknown window '" + name +
                                "' (expected rect, hann or hamming)");
}

std::string to_string(Window window)
{
    switch (window)
    {
    case Window::rect:
        return "rect";
    case Window::hann:
        return "hann";
    default:
        return "hamming";
    }
}

namespace
{

std::vector<double> window_taps(Window window, std::size_t n)
{
    std::vector<double> w(n, 1.0);
    switch (window)
    {
    case Window::rect:
        break;
    case Window::hann:
        for (std::size_t i = 0; i < n; ++i)
            w[i] = 0.5 * (1.0 - std::cos(2.0 * pi * double(i) / double(n - 1)));
        break;
    case Window::hamming:
        for (std::size_t i = 0; i < n; ++i)
            w[i] = 0.54 - 0.46 * std::cos(2.0 * pi * double(i) / double(n - 1));
        break;
    }
    return w;
}

} // namespace

CirTensor cfr_to_cir(const ChannelTensor &tensor, Window window, std::size_t zero_pad_factor)
{
    tensor.grid.validate();
    if (tensor.n_freq() < 2)
        throw std::invalid_argument("cfr_to_cir: at least two frequency points required");
    if (zero_pad_factor == 0)
        throw std::invalid_argument("cfr_to_cir: zero_pad_factor must be at least 1");

    const std::size_t n_freq = tensor.n_freq();
    const std::size_t n_bins = n_freq * zero_pad_factor;
    const std::vector<double> taps = window_taps(window, n_freq);
    double tap_sum = 0.0;
    for (double t : taps)
        tap_sum += t;

    CirTensor cir;
    cir.m_elements = tensor.m_elements;
    cir.n_bins = n_bins;
    cir.delay_step_s = 1.0 / (double(n_bins) * tensor.grid.f_step_hz);
    cir.window = window;
    cir.zero_pad_factor = zero_pad_factor;
    cir.data.resize(tensor.m_elements * n_bins);

    std::vector<cdouble> windowed(n_freq);
    for (std::size_t m = 0; m < tensor.m_elements; ++m)
    {
        const cdouble *in = tensor.row(m);
        for (std::size_t n = 0; n < n_freq; ++n)
            windowed[n] = taps[n] * in[n];
        cdouble *out = cir.data.data() + m * n_bins;
        detail::idft_unnormalized(windowed.data(), n_freq, out, n_bins);
        for (std::size_t k = 0; k < n_bins; ++k)
            out[k] /= tap_sum;
    }
    return cir;
}

std::vector<double> power_delay_profile(const CirTensor &cir, std::optional<std::size_t> element)
{
    if (element && *element >= cir.m_elements)
        throw std::invalid_argument("power_delay_profile: element index out of range");

    std::vector<double> power(cir.n_bins, 0.0);
    if (element)
    {
        const cdouble *row = cir.row(*element);
        for (std::size_t k = 0; k < cir.n_bins; ++k)
            power[k] = std::norm(row[k]);
    }
    else
    {
        for (std::size_t m = 0; m < cir.m_elements; ++m)
        {
            const cdouble *row = cir.row(m);
            for (std::size_t k = 0; k < cir.n_bins; ++k)
                power[k] += std::norm(row[k]);
        }
        for (auto &p : power)
            p /= double(cir.m_elements);
    }

    std::vector<double> db(cir.n_bins);
    for (std::size_t k = 0; k < cir.n_bins; ++k)
        db[k] = 10.0 * std::log10(power[k]);
    return db;
}

RealMatrix cir_heatmap(const CirTensor &cir, double floor_db)
{
    if (!(floor_db < 0.0))
        throw std::invalid_argument("cir_heatmap: floor must be negative (relative to peak)");

    double peak = 0.0;
    for (const auto &v : cir.data)
        peak = std::max(peak, std::abs(v));
    if (!(peak > 0.0))
        throw std::invalid_argument("cir_heatmap: all-zero impulse response");

    RealMatrix map;
    map.rows = cir.m_elements;
    map.cols = cir.n_bins;
    map.data.resize(cir.data.size());
    for (std::size_t i = 0; i < cir.data.size(); ++i)
    {
        const double db = 20.0 * std::log10(std::abs(cir.data[i]) / peak);
        map.data[i] = std::max(db, floor_db);
    }
    return map;
}

} // namespace elaa
