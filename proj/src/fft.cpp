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

#include "fft.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_map>
#include <vector>

#include <fftw3.h>

namespace elaa::detail
{

namespace
{

// FFTW planning is not thread-safe and repeated planning is not free, so keep
// one backward plan per size behind a mutex. Plans are created with
// FFTW_ESTIMATE | FFTW_UNALIGNED: deterministic algorithm choice, usable on
// any buffer.
class PlanCache
{
  public:
    static PlanCache &instance()
    {
        static PlanCache cache;
        return cache;
    }

    void execute(cdouble *buffer, std::size_t size)
    {
        fftw_plan plan = nullptr;
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto it = plans_.find(size);
            if (it == plans_.end())
            {
                plan = fftw_plan_dft_1d(int(size), reinterpret_cast<fftw_complex *>(buffer),
                                        reinterpret_cast<fftw_complex *>(buffer), FFTW_BACKWARD,
                                        FFTW_ESTIMATE | FFTW_UNALIGNED);
                plans_.emplace(size, plan);
            }
            else
            {
                plan = it->second;
            }
        }
        fftw_execute_dft(plan, reinterpret_cast<fftw_complex *>(buffer),
                         reinterpret_cast<fftw_complex *>(buffer));
    }

  private:
    PlanCache() = default;
    ~PlanCache()
    {
        for (auto &[size, plan] : plans_)
            fftw_destroy_plan(plan);
    }

    std::mutex mutex_;
    std::unordered_map<std::size_t, fftw_plan> plans_;
};

} // namespace

void idft_unnormalized(const cdouble *in, std::size_t n_in, cdouble *out, std::size_t n_out)
{
    std::copy(in, in + std::min(n_in, n_out), out);
    std::fill(out + std::min(n_in, n_out), out + n_out, cdouble{0.0, 0.0});
    PlanCache::instance().execute(out, n_out);
}

} // namespace elaa::detail
