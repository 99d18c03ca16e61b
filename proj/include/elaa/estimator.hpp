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

#ifndef ELAA_ESTIMATOR_HPP
#define ELAA_ESTIMATOR_HPP

#include "elaa/channel.hpp"
#include "elaa/geometry.hpp"

namespace elaa
{

/// Search grid for the coarse beamformer scan. Azimuth cells cover the full
/// circle at `azimuth_step_deg`; elevation and distance axes are explicit
/// lists. Distances may end with the far_field sentinel; all finite entries
/// must exceed the array radius. Delay is scanned at the native resolution
/// 1 / (n_freq * f_step).
struct ScanGrid
{
    double azimuth_step_deg = 2.0;
    std::vector<double> elevations_deg{-30.0, -15.0, 0.0, 15.0, 30.0};
    std::vector<double> distances_m;

    std::size_t n_azimuth() const;
    double azimuth(std::size_t i) const;

    void validate(const ArrayGeometry &geom) const;
};

/// Default grid: 2 deg azimuth, elevations {-30,-15,0,15,30}, 10 log-spaced
/// distances from 2x the array radius to 2x the Fraunhofer distance at the
/// top frequency, plus the far-field sentinel.
ScanGrid default_scan_grid(const ArrayGeometry &geom, const FrequencyGrid &grid);

struct EstimatorConfig
{
    double dynamic_range_db = 30.0;
    std::size_t max_paths = 100;
    double azimuth_tol_deg = 0.01;
    double elevation_tol_deg = 0.01;
    double distance_rel_tol = 1e-3;  // relative tolerance on distance
    double delay_tol_bins = 1e-3;    // in units of one native delay bin
    std::size_t max_refine_iterations = 20;
    double sns_threshold = 0.1;
    std::size_t sns_smooth_window = 5;
    std::size_t sage_cycles = 1;

    void validate() const;
};

/// One coarse-scan detection: the 4-D cell it came from and the focused
/// beamformer power at the peak.
struct CoarseCandidate
{
    std::size_t azimuth_index = 0;
    std::size_t elevation_index = 0;
    std::size_t distance_index = 0;
    std::size_t delay_bin = 0;
    double azimuth_deg = 0.0;
    double elevation_deg = 0.0;
    double distance_m = far_field;
    double delay_s = 0.0;
    double power = 0.0;
};

/// Refined path with bookkeeping: the residual-energy drop its subtraction
/// produced (filled by estimate_paths) and the coarse cell it grew from.
struct PathEstimate
{
    PathParams params;
    double power_db = 0.0;
    double residual_drop_db = 0.0;
    CoarseCandidate provenance;
    bool converged = true;
};

/// Near-field-focused Bartlett scan: for every (azimuth, elevation, distance)
/// cell computes the focused delay spectrum
///   P(cell, tau_k) = | 1/(M N) sum_m sum_n conj(A_mn) Y_mn e^{+j 2 pi f_n tau_k} |^2
/// and returns the local maxima that pass the noise-adaptive detection
/// threshold, ranked by descending power.
std::vector<CoarseCandidate> coarse_scan(const ChannelTensor &tensor,
                                         const ArrayGeometry &geom, const ScanGrid &grid);

/// Coordinate-wise maximum-likelihood refinement of one candidate: cyclic
/// golden-section searches over azimuth, elevation, log-distance and delay
/// inside the seed cell +/- one cell, with closed-form gain and per-element
/// SnS re-estimation after every cycle. The matched-filter objective is
/// non-decreasing across cycles; a path that exhausts
/// cfg.max_refine_iterations is returned flagged unconverged.
PathEstimate refine_path(const ChannelTensor &residual, const CoarseCandidate &seed,
                         const ArrayGeometry &geom, const ScanGrid &grid,
                         const EstimatorConfig &cfg);

/// Per-element least-squares visibility: s_m = |<g_m, y_m>| / ||g_m||^2
/// clamped to [0,1] with g the parameterized path signal on element m,
/// then moving-average smoothed (circular on closed rings) and thresholded.
/// Throws std::invalid_argument for a zero-gain path.
SnsVector estimate_sns_vector(const ChannelTensor &residual, const PathParams &path,
                              const ArrayGeometry &geom, const EstimatorConfig &cfg);

/// Full coarse-to-refine loop with successive interference cancellation:
/// scan the residual, refine the strongest candidate, estimate its SnS
/// vector, subtract its reconstruction, and repeat until the next candidate
/// falls more than cfg.dynamic_range_db below the strongest extracted path
/// (or max_paths is hit), followed by cfg.sage_cycles re-estimation sweeps.
/// Returns paths sorted by descending power. Never throws on noise-only
/// input.
std::vector<PathEstimate> estimate_paths(const ChannelTensor &tensor, const ArrayGeometry &geom,
                                         const ScanGrid &grid, const EstimatorConfig &cfg);

} // namespace elaa

#endif
