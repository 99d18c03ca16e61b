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

#ifndef ELAA_FFT_HPP
#define ELAA_FFT_HPP

#include <cstddef>

#include "elaa/channel.hpp"

namespace elaa::detail
{

// Unnormalized inverse DFT out[k] = sum_n in[n] e^{+j 2 pi n k / K},
// zero-padding the input up to K. Backed by FFTW with deterministic
// (FFTW_ESTIMATE) planning; plan creation is serialized internally.
void idft_unnormalized(const cdouble *in, std::size_t n_in, cdouble *out, std::size_t n_out);

} // namespace elaa::detail

#endif
