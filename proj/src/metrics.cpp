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

#include "elaa/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace elaa
{

MatchGates default_match_gates(const FrequencyGrid &grid)
{
    grid.validate();
    MatchGates gates;
    gates.delay_s = 1.0 / (double(grid.n_freq) * grid.f_step_hz);
    return gates;
}

namespace
{

double wrap_degrees(double deg)
{
    while (deg > 180.0)
        deg -= 360.0;
    while (deg <= -180.0)
        deg += 360.0;
    return deg;
}

double pair_distance(const PathParams &a, const PathParams &b, const MatchGates &gates)
{
    const double daz = wrap_degrees(a.azimuth_deg - b.azimuth_deg) / gates.azimuth_deg;
    const double del = (a.elevation_deg - b.elevation_deg) / gates.elevation_deg;
    const double dtau = (a.delay_s - b.delay_s) / gates.delay_s;

    double dlog;
    const bool a_ff = is_far_field(a.distance_m);
    const bool b_ff = is_far_field(b.distance_m);
    if (a_ff && b_ff)
        dlog = 0.0;
    else if (a_ff != b_ff)
        return std::numeric_limits<double>::infinity();
    else
        dlog = std::log10(a.distance_m / b.distance_m) / gates.log10_distance;

    return std::sqrt(daz * daz + del * del + dtau * dtau + dlog * dlog);
}

} // namespace

PathMatching match_paths(const std::vector<PathParams> &estimates,
                         const std::vector<PathParams> &truths, const MatchGates &gates)
{
    if (!(gates.azimuth_deg > 0.0) || !(gates.elevation_deg > 0.0) || !(gates.delay_s > 0.0) ||
        !(gates.log10_distance > 0.0))
        throw std::invalid_argument("match_paths: gates must be positive");

    struct Entry
    {
        double distance;
        std::size_t est;
        std::size_t truth;
    };
    std::vector<Entry> entries;
    for (std::size_t i = 0; i < estimates.size(); ++i)
        for (std::size_t j = 0; j < truths.size(); ++j)
        {
            const double d = pair_distance(estimates[i], truths[j], gates);
            if (d <= 1.0)
                entries.push_back({d, i, j});
        }

    std::sort(entries.begin(), entries.end(), [](const Entry &a, const Entry &b) {
        if (a.distance != b.distance)
            return a.distance < b.distance;
        if (a.est != b.est)
            return a.est < b.est;
        return a.truth < b.truth;
    });

    PathMatching matching;
    std::vector<bool> est_used(estimates.size(), false);
    std::vector<bool> truth_used(truths.size(), false);
    for (const auto &e : entries)
    {
        if (est_used[e.est] || truth_used[e.truth])
            continue;
        est_used[e.est] = true;
        truth_used[e.truth] = true;
        matching.pairs.push_back({e.est, e.truth, e.distance});
    }
    for (std::size_t i = 0; i < estimates.size(); ++i)
        if (!est_used[i])
            matching.unmatched_estimates.push_back(i);
    for (std::size_t j = 0; j < truths.size(); ++j)
        if (!truth_used[j])
            matching.unmatched_truths.push_back(j);
    return matching;
}

double nmse_db(const ChannelTensor &candidate, const ChannelTensor &reference)
{
    if (candidate.m_elements != reference.m_elements ||
        candidate.n_freq() != reference.n_freq())
        throw std::invalid_argument("nmse_db: dimension mismatch");
    const double ref_energy = reference.energy();
    if (!(ref_energy > 0.0))
        throw std::invalid_argument("nmse_db: zero reference");

    double err = 0.0;
    for (std::size_t i = 0; i < reference.data.size(); ++i)
        err += std::norm(candidate.data[i] - reference.data[i]);
    const double db = 10.0 * std::log10(err / ref_energy);
    return std::max(db, -300.0);
}

double vr_jaccard(const SnsVector &a, const SnsVector &b, double support_threshold)
{
    if (a.size() != b.size())
        throw std::invalid_argument("vr_jaccard: length mismatch");

    std::size_t both = 0, either = 0;
    for (std::size_t m = 0; m < a.size(); ++m)
    {
        const bool in_a = a.values[m] > support_threshold;
        const bool in_b = b.values[m] > support_threshold;
        both += in_a && in_b;
        either += in_a || in_b;
    }
    return either == 0 ? 1.0 : double(both) / double(either);
}

} // namespace elaa
