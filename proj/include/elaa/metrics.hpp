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

#ifndef ELAA_METRICS_HPP
#define ELAA_METRICS_HPP

#include "elaa/channel.hpp"

namespace elaa
{

/// Per-axis normalizers for path association. A pair matches when the
/// normalized Euclidean distance over {azimuth, elevation, delay,
/// log10-distance} is at most 1.
struct MatchGates
{
    double azimuth_deg = 1.0;
    double elevation_deg = 5.0;
    double delay_s = 1e-9;
    double log10_distance = 0.3;
};

/// Gates with the delay axis set to one native delay bin of `grid`.
MatchGates default_match_gates(const FrequencyGrid &grid);

struct MatchedPair
{
    std::size_t estimate_index = 0;
    std::size_t truth_index = 0;
    double distance = 0.0;
};

struct PathMatching
{
    std::vector<MatchedPair> pairs;
    std::vector<std::size_t> unmatched_estimates;
    std::vector<std::size_t> unmatched_truths;
};

/// Greedy one-to-one minimum-distance assignment, ties broken by the lowest
/// (estimate, truth) index pair. Pairs with distance > 1 are rejected.
PathMatching match_paths(const std::vector<PathParams> &estimates,
                         const std::vector<PathParams> &truths, const MatchGates &gates);

/// 10 log10(||candidate - reference||_F^2 / ||reference||_F^2), floored at
/// -300 dB. Throws std::invalid_argument on dimension mismatch or a zero
/// reference.
double nmse_db(const ChannelTensor &candidate, const ChannelTensor &reference);

/// Support overlap |A and B| / |A or B| with support = entries strictly above
/// `support_threshold`; 1 when both supports are empty.
double vr_jaccard(const SnsVector &a, const SnsVector &b, double support_threshold = 0.1);

} // namespace elaa

#endif
