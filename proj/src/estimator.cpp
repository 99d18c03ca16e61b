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

#include "elaa/estimator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "elaa/manifold.hpp"
#include "fft.hpp"
#include "phasor.hpp"

namespace elaa
{

namespace
{

constexpr double neg_inf_db = -1e30;

double to_db(double power) { return power > 0.0 ? 10.0 * std::log10(power) : neg_inf_db; }

} // namespace

// ------------------------------------------------------------------- ScanGrid

std::size_t ScanGrid::n_azimuth() const
{
    return std::size_t(std::max(1.0, std::round(360.0 / azimuth_step_deg)));
}

double ScanGrid::azimuth(std::size_t i) const
{
    return -180.0 + double(i) * azimuth_step_deg;
}

void ScanGrid::validate(const ArrayGeometry &geom) const
{
    if (!(azimuth_step_deg > 0.0) || azimuth_step_deg > 360.0)
        throw std::invalid_argument("ScanGrid: azimuth step must lie in (0, 360]");
    if (elevations_deg.empty())
        throw std::invalid_argument("ScanGrid: elevation list must not be empty");
    for (double el : elevations_deg)
        if (!(el >= -90.0) || !(el <= 90.0))
            throw std::invalid_argument("ScanGrid: elevations must lie in [-90, 90]");
    if (distances_m.empty())
        throw std::invalid_argument("ScanGrid: distance list must not be empty");
    const double radius = geom.max_radius();
    for (std::size_t k = 0; k < distances_m.size(); ++k)
    {
        const double d = distances_m[k];
        if (!(d > radius))
            throw std::invalid_argument("ScanGrid: distances must exceed the array radius");
        if (k > 0 && !(d > distances_m[k - 1]))
            throw std::invalid_argument("ScanGrid: distances must be strictly increasing");
        if (is_far_field(d) && k + 1 != distances_m.size())
            throw std::invalid_argument("ScanGrid: far-field sentinel must come last");
    }
}

ScanGrid default_scan_grid(const ArrayGeometry &geom, const FrequencyGrid &grid)
{
    geom.validate();
    grid.validate();

    ScanGrid scan;
    const double radius = geom.max_radius();
    double d_lo = 2.0 * radius;
    double d_hi = 2.0 * fraunhofer_distance(2.0 * radius, grid.frequency(grid.n_freq - 1));
    if (!(d_lo > 0.0) || !(d_hi > d_lo))
    {
        // Degenerate apertures (e.g. a single element) get a generic decade span.
        d_lo = std::max(1.0, 2.0 * radius);
        d_hi = 100.0 * d_lo;
    }
    const std::size_t n_dist = 10;
    scan.distances_m.reserve(n_dist + 1);
    const double log_lo = std::log10(d_lo);
    const double log_hi = std::log10(d_hi);
    for (std::size_t k = 0; k < n_dist; ++k)
        scan.distances_m.push_back(
            std::pow(10.0, log_lo + (log_hi - log_lo) * double(k) / double(n_dist - 1)));
    scan.distances_m.push_back(far_field);
    return scan;
}

void EstimatorConfig::validate() const
{
    if (!(dynamic_range_db > 0.0))
        throw std::invalid_argument("EstimatorConfig: dynamic range must be positive");
    if (max_paths == 0)
        throw std::invalid_argument("EstimatorConfig: max_paths must be positive");
    if (!(azimuth_tol_deg > 0.0) || !(elevation_tol_deg > 0.0) || !(distance_rel_tol > 0.0) ||
        !(delay_tol_bins > 0.0))
        throw std::invalid_argument("EstimatorConfig: tolerances must be positive");
    if (max_refine_iterations == 0)
        throw std::invalid_argument("EstimatorConfig: max_refine_iterations must be positive");
    if (!(sns_threshold >= 0.0) || !(sns_threshold < 1.0))
        throw std::invalid_argument("EstimatorConfig: sns_threshold must lie in [0, 1)");
    if (sns_smooth_window == 0)
        throw std::invalid_argument("EstimatorConfig: sns_smooth_window must be positive");
}

// ------------------------------------------------------- matched-filter pieces

namespace
{

// Per-element correlations of the unit-gain path signal with the residual:
//   inner[m] = sum_n e^{+j 2 pi f_n (delay_m + tau)} Y[m][n]
// The concentrated (gain-eliminated) objective and the closed-form gain are
//   J = |sum_m s_m amp_m inner_m|^2 / (N sum_m s_m^2 amp_m^2),  gain = num/den.
struct MatchedFilter
{
    const ChannelTensor &residual;
    const ArrayGeometry &geom;

    struct Fit
    {
        double objective = 0.0;
        cdouble gain{0.0, 0.0};
    };

    Fit fit(const SteeringVectors &sv, double delay_s, const std::vector<double> &sns) const
    {
        const std::size_t m_elements = residual.m_elements;
        const std::size_t n_freq = residual.n_freq();
        cdouble num{0.0, 0.0};
        double den = 0.0;
        for (std::size_t m = 0; m < m_elements; ++m)
        {
            const double s = sns[m];
            if (s == 0.0)
                continue;
            const cdouble inner = detail::correlate_phase_ramp(
                residual.row(m), n_freq, residual.grid, sv.delay_s[m] + delay_s);
            const double w = s * sv.amplitude[m];
            num += w * inner;
            den += w * w;
        }
        den *= double(n_freq);
        Fit out;
        if (den > 0.0)
        {
            out.objective = std::norm(num) / den;
            out.gain = num / den;
        }
        return out;
    }
};

// Deterministic 1-D maximizer: uniform presampling to isolate the main lobe,
// then golden-section inside the winning gap. Ties go to the smaller value.
struct LineMax
{
    double x = 0.0;
    double value = neg_inf_db;
};

LineMax maximize_line(const std::function<double(double)> &f, double lo, double hi, double tol,
                      std::size_t presamples)
{
    LineMax best;
    if (!(hi > lo))
    {
        best.x = lo;
        best.value = f(lo);
        return best;
    }

    presamples = std::max<std::size_t>(presamples, 3);
    const double spacing = (hi - lo) / double(presamples - 1);
    for (std::size_t i = 0; i < presamples; ++i)
    {
        const double x = lo + spacing * double(i);
        const double v = f(x);
        if (v > best.value)
        {
            best.x = x;
            best.value = v;
        }
    }

    double a = std::max(lo, best.x - spacing);
    double b = std::min(hi, best.x + spacing);
    constexpr double inv_phi = 0.6180339887498948482;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    std::size_t guard = 0;
    while (b - a > tol && guard++ < 200)
    {
        if (f1 >= f2)
        {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
        else
        {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
        if (f1 > best.value)
        {
            best.x = x1;
            best.value = f1;
        }
        if (f2 > best.value)
        {
            best.x = x2;
            best.value = f2;
        }
    }
    return best;
}

double wrap_azimuth(double az)
{
    while (az >= 180.0)
        az -= 360.0;
    while (az < -180.0)
        az += 360.0;
    return az;
}

std::size_t floor_mod(long long a, std::size_t m)
{
    const long long mm = (long long)m;
    return std::size_t(((a % mm) + mm) % mm);
}

} // namespace

// ----------------------------------------------------------------- coarse scan

std::vector<CoarseCandidate> coarse_scan(const ChannelTensor &tensor, const ArrayGeometry &geom,
                                         const ScanGrid &grid)
{
    geom.validate();
    grid.validate(geom);
    tensor.grid.validate();
    if (tensor.m_elements != geom.size())
        throw std::invalid_argument("coarse_scan: tensor/geometry element mismatch");

    const std::size_t m_elements = tensor.m_elements;
    const std::size_t n_freq = tensor.n_freq();
    const std::size_t n_az = grid.n_azimuth();
    const std::size_t n_el = grid.elevations_deg.size();
    const std::size_t n_dist = grid.distances_m.size();
    const double norm_factor = 1.0 / (double(m_elements) * double(n_freq));

    struct RawCandidate
    {
        std::size_t az, el, dist, bin;
        double power;
    };
    std::vector<RawCandidate> raw;
    std::vector<double> cell_medians;
    cell_medians.reserve(n_az * n_el * n_dist);

    std::vector<cdouble> beamformed(n_freq);
    std::vector<cdouble> spectrum_c(n_freq);
    std::vector<double> spectrum(n_freq);
    std::vector<double> scratch(n_freq);

    for (std::size_t ie = 0; ie < n_el; ++ie)
    {
        for (std::size_t id = 0; id < n_dist; ++id)
        {
            for (std::size_t ia = 0; ia < n_az; ++ia)
            {
                const SteeringVectors sv = path_steering(
                    geom, grid.azimuth(ia), grid.elevations_deg[ie], grid.distances_m[id]);

                std::fill(beamformed.begin(), beamformed.end(), cdouble{0.0, 0.0});
                for (std::size_t m = 0; m < m_elements; ++m)
                {
                    const cdouble *row = tensor.row(m);
                    const double amp = sv.amplitude[m];
                    detail::PhasorSweep sweep(tensor.grid, sv.delay_s[m]);
                    for (std::size_t n = 0; n < n_freq; ++n, sweep.advance())
                        beamformed[n] += amp * std::conj(sweep.value()) * row[n];
                }

                detail::idft_unnormalized(beamformed.data(), n_freq, spectrum_c.data(), n_freq);
                for (std::size_t k = 0; k < n_freq; ++k)
                    spectrum[k] = std::norm(norm_factor * spectrum_c[k]);

                scratch = spectrum;
                auto mid = scratch.begin() + (long)(n_freq / 2);
                std::nth_element(scratch.begin(), mid, scratch.end());
                const double median = *mid;
                cell_medians.push_back(median);

                // Local maxima (circular delay axis) at least 10 dB above the
                // cell median.
                const double local_threshold = 10.0 * median;
                for (std::size_t k = 0; k < n_freq; ++k)
                {
                    const double p = spectrum[k];
                    if (!(p > 0.0) || p < local_threshold)
                        continue;
                    const double prev = spectrum[(k + n_freq - 1) % n_freq];
                    const double next = spectrum[(k + 1) % n_freq];
                    if (p >= prev && p >= next)
                        raw.push_back({ia, ie, id, k, p});
                }
            }
        }
    }

    // Noise-adaptive global floor: treat the per-cell medians as exponential
    // noise medians, convert to a mean level and keep only peaks no plain
    // noise bin would reach (Bonferroni over every bin scanned, alpha = 1%).
    double noise_level = 0.0;
    if (!cell_medians.empty())
    {
        auto mid = cell_medians.begin() + (long)(cell_medians.size() / 2);
        std::nth_element(cell_medians.begin(), mid, cell_medians.end());
        noise_level = *mid / std::log(2.0);
    }
    const double total_bins = double(n_az * n_el * n_dist) * double(n_freq);
    const double global_threshold = noise_level * std::log(total_bins / 0.01);

    std::vector<RawCandidate> kept;
    for (const auto &c : raw)
        if (c.power >= global_threshold)
            kept.push_back(c);

    // Non-maximum suppression across adjacent cells (azimuth and delay wrap).
    auto tuple_of = [](const RawCandidate &c) {
        return std::array<std::size_t, 4>{c.az, c.el, c.dist, c.bin};
    };
    auto circ_close = [](std::size_t i, std::size_t j, std::size_t n) {
        const std::size_t d = i > j ? i - j : j - i;
        return d <= 1 || (n > 2 && d == n - 1);
    };
    auto lin_close = [](std::size_t i, std::size_t j) {
        return (i > j ? i - j : j - i) <= 1;
    };

    std::vector<CoarseCandidate> out;
    for (const auto &c : kept)
    {
        bool suppressed = false;
        for (const auto &o : kept)
        {
            if (&o == &c)
                continue;
            if (!circ_close(c.az, o.az, n_az) || !lin_close(c.el, o.el) ||
                !lin_close(c.dist, o.dist) || !circ_close(c.bin, o.bin, n_freq))
                continue;
            if (o.power > c.power || (o.power == c.power && tuple_of(o) < tuple_of(c)))
            {
                suppressed = true;
                break;
            }
        }
        if (suppressed)
            continue;
        CoarseCandidate cand;
        cand.azimuth_index = c.az;
        cand.elevation_index = c.el;
        cand.distance_index = c.dist;
        cand.delay_bin = c.bin;
        cand.azimuth_deg = grid.azimuth(c.az);
        cand.elevation_deg = grid.elevations_deg[c.el];
        cand.distance_m = grid.distances_m[c.dist];
        cand.delay_s = double(c.bin) / (double(n_freq) * tensor.grid.f_step_hz);
        cand.power = c.power;
        out.push_back(cand);
    }

    std::sort(out.begin(), out.end(), [](const CoarseCandidate &a, const CoarseCandidate &b) {
        if (a.power != b.power)
            return a.power > b.power;
        return std::array<std::size_t, 4>{a.azimuth_index, a.elevation_index, a.distance_index,
                                          a.delay_bin} <
               std::array<std::size_t, 4>{b.azimuth_index, b.elevation_index, b.distance_index,
                                          b.delay_bin};
    });
    return out;
}

// ------------------------------------------------------------------ refinement

namespace
{

struct RefineAxes
{
    double az_lo, az_hi;
    double el_lo, el_hi;
    bool search_elevation;
    double logd_lo, logd_hi;
    bool search_distance;
    bool compare_far_field;
    double tau_lo, tau_hi;
};

RefineAxes make_axes(const CoarseCandidate &seed, const ArrayGeometry &geom,
                     const ScanGrid &scan, const FrequencyGrid &grid)
{
    RefineAxes ax{};

    ax.az_lo = seed.azimuth_deg - scan.azimuth_step_deg;
    ax.az_hi = seed.azimuth_deg + scan.azimuth_step_deg;

    const auto &els = scan.elevations_deg;
    ax.search_elevation = els.size() > 1;
    if (ax.search_elevation)
    {
        const std::size_t j = seed.elevation_index;
        const double step_lo = j > 0 ? els[j] - els[j - 1] : els[j + 1] - els[j];
        const double step_hi = j + 1 < els.size() ? els[j + 1] - els[j] : els[j] - els[j - 1];
        ax.el_lo = std::max(-90.0, els[j] - step_lo);
        ax.el_hi = std::min(90.0, els[j] + step_hi);
    }
    else
    {
        ax.el_lo = ax.el_hi = els.front();
    }

    // Distance bracket on a log axis, one cell either side of the seed; the
    // far-field sentinel is treated as the cell past the largest finite
    // distance and triggers an explicit plane-wave comparison.
    std::size_t n_finite = scan.distances_m.size();
    const bool has_sentinel = is_far_field(scan.distances_m.back());
    if (has_sentinel)
        --n_finite;

    ax.search_distance = n_finite > 0;
    if (ax.search_distance)
    {
        std::size_t k = std::min(seed.distance_index, n_finite - 1);
        const double radius_floor = std::max(geom.max_radius() * (1.0 + 1e-9), 1e-9);
        auto ratio = [&](std::size_t a, std::size_t b) {
            return scan.distances_m[a] / scan.distances_m[b];
        };
        double lo, hi;
        if (n_finite == 1)
        {
            lo = std::max(scan.distances_m[0] / 2.0, radius_floor);
            hi = scan.distances_m[0] * 2.0;
        }
        else
        {
            lo = k > 0 ? scan.distances_m[k - 1]
                       : std::max(scan.distances_m[0] / ratio(1, 0), radius_floor);
            hi = k + 1 < n_finite ? scan.distances_m[k + 1]
                                  : scan.distances_m[n_finite - 1] * ratio(n_finite - 1, n_finite - 2);
        }
        ax.logd_lo = std::log10(lo);
        ax.logd_hi = std::log10(hi);
        ax.compare_far_field =
            has_sentinel && (seed.distance_index + 2 >= scan.distances_m.size());
    }
    else
    {
        ax.compare_far_field = true;
    }

    const double bin = 1.0 / (double(grid.n_freq) * grid.f_step_hz);
    ax.tau_lo = std::max(0.0, seed.delay_s - bin);
    ax.tau_hi = std::min(grid.max_delay() * (1.0 - 1e-12), seed.delay_s + bin);
    return ax;
}

} // namespace

SnsVector estimate_sns_vector(const ChannelTensor &residual, const PathParams &path,
                              const ArrayGeometry &geom, const EstimatorConfig &cfg)
{
    geom.validate();
    cfg.validate();
    if (residual.m_elements != geom.size())
        throw std::invalid_argument("estimate_sns_vector: tensor/geometry element mismatch");
    if (!(std::abs(path.gain) > 0.0))
        throw std::invalid_argument("estimate_sns_vector: zero-gain path");

    const std::size_t m_elements = residual.m_elements;
    const std::size_t n_freq = residual.n_freq();
    const SteeringVectors sv =
        path_steering(geom, path.azimuth_deg, path.elevation_deg, path.distance_m);

    // s_m = |<g_m, y_m>| / ||g_m||^2 with g_m the parameterized path signal.
    std::vector<double> rawv(m_elements);
    for (std::size_t m = 0; m < m_elements; ++m)
    {
        const cdouble inner = detail::correlate_phase_ramp(residual.row(m), n_freq, residual.grid,
                                                           sv.delay_s[m] + path.delay_s);
        const cdouble c = inner / (path.gain * sv.amplitude[m] * double(n_freq));
        rawv[m] = std::clamp(std::abs(c), 0.0, 1.0);
    }

    // Moving average over the element axis, circular on closed rings.
    SnsVector sns;
    sns.values.assign(m_elements, 0.0);
    const long long w = (long long)cfg.sns_smooth_window;
    const long long half = w / 2;
    for (long long m = 0; m < (long long)m_elements; ++m)
    {
        double acc = 0.0;
        std::size_t count = 0;
        for (long long o = -half; o < w - half; ++o)
        {
            const long long idx = m + o;
            if (geom.closed_ring)
            {
                acc += rawv[floor_mod(idx, m_elements)];
                ++count;
            }
            else if (idx >= 0 && idx < (long long)m_elements)
            {
                acc += rawv[std::size_t(idx)];
                ++count;
            }
        }
        double v = acc / double(count);
        if (v < cfg.sns_threshold)
            v = 0.0;
        sns.values[std::size_t(m)] = v;
    }
    return sns;
}

PathEstimate refine_path(const ChannelTensor &residual, const CoarseCandidate &seed,
                         const ArrayGeometry &geom, const ScanGrid &scan,
                         const EstimatorConfig &cfg)
{
    geom.validate();
    scan.validate(geom);
    cfg.validate();
    if (residual.m_elements != geom.size())
        throw std::invalid_argument("refine_path: tensor/geometry element mismatch");

    const MatchedFilter filter{residual, geom};
    const RefineAxes axes = make_axes(seed, geom, scan, residual.grid);
    const double bin = 1.0 / (double(residual.n_freq()) * residual.grid.f_step_hz);

    double az = seed.azimuth_deg;
    double el = seed.elevation_deg;
    double dist = seed.distance_m;
    double tau = seed.delay_s;
    std::vector<double> sns(geom.size(), 1.0);

    auto objective = [&](double a, double e, double d, double t) {
        return filter.fit(path_steering(geom, a, e, d), t, sns).objective;
    };

    double current = objective(az, el, dist, tau);
    bool converged = false;

    for (std::size_t iter = 0; iter < cfg.max_refine_iterations; ++iter)
    {
        double max_move_ratio = 0.0;
        auto track_move = [&](double moved, double tol) {
            max_move_ratio = std::max(max_move_ratio, moved / tol);
        };

        // Azimuth
        {
            LineMax best = maximize_line([&](double x) { return objective(x, el, dist, tau); },
                                         axes.az_lo, axes.az_hi, cfg.azimuth_tol_deg, 17);
            if (best.value >= current)
            {
                track_move(std::abs(best.x - az), cfg.azimuth_tol_deg);
                az = best.x;
                current = best.value;
            }
        }

        // Elevation
        if (axes.search_elevation)
        {
            LineMax best = maximize_line([&](double x) { return objective(az, x, dist, tau); },
                                         axes.el_lo, axes.el_hi, cfg.elevation_tol_deg, 9);
            if (best.value >= current)
            {
                track_move(std::abs(best.x - el), cfg.elevation_tol_deg);
                el = best.x;
                current = best.value;
            }
        }

        // Distance (log axis) with optional plane-wave comparison
        if (axes.search_distance || axes.compare_far_field)
        {
            double finite_best_x = is_far_field(dist) ? axes.logd_hi : std::log10(dist);
            double finite_best_v = neg_inf_db;
            if (axes.search_distance)
            {
                LineMax best = maximize_line(
                    [&](double x) { return objective(az, el, std::pow(10.0, x), tau); },
                    axes.logd_lo, axes.logd_hi, std::log10(1.0 + cfg.distance_rel_tol), 9);
                finite_best_x = best.x;
                finite_best_v = best.value;
            }
            const double ff_value =
                axes.compare_far_field ? objective(az, el, far_field, tau) : neg_inf_db;

            if (axes.compare_far_field && ff_value >= finite_best_v && ff_value >= current)
            {
                if (!is_far_field(dist))
                    track_move(1.0, cfg.distance_rel_tol); // switched representation
                dist = far_field;
                current = ff_value;
            }
            else if (finite_best_v >= current)
            {
                const double new_dist = std::pow(10.0, finite_best_x);
                if (is_far_field(dist))
                    track_move(1.0, cfg.distance_rel_tol);
                else
                    track_move(std::abs(new_dist - dist) / dist, cfg.distance_rel_tol);
                dist = new_dist;
                current = finite_best_v;
            }
        }

        // Delay
        {
            LineMax best = maximize_line([&](double x) { return objective(az, el, dist, x); },
                                         axes.tau_lo, axes.tau_hi, cfg.delay_tol_bins * bin, 9);
            if (best.value >= current)
            {
                track_move(std::abs(best.x - tau), cfg.delay_tol_bins * bin);
                tau = best.x;
                current = best.value;
            }
        }

        // Closed-form gain, then the SnS vector (kept only if it does not
        // degrade the objective, which keeps the ascent property).
        MatchedFilter::Fit fit = filter.fit(path_steering(geom, az, el, dist), tau, sns);
        if (std::abs(fit.gain) > 0.0)
        {
            PathParams probe;
            probe.azimuth_deg = wrap_azimuth(az);
            probe.elevation_deg = el;
            probe.distance_m = dist;
            probe.delay_s = tau;
            probe.gain = fit.gain;
            SnsVector candidate_sns = estimate_sns_vector(residual, probe, geom, cfg);
            const MatchedFilter::Fit with_new =
                filter.fit(path_steering(geom, az, el, dist), tau, candidate_sns.values);
            if (with_new.objective >= current)
            {
                sns = candidate_sns.values;
                current = with_new.objective;
            }
        }

        if (max_move_ratio < 1.0)
        {
            converged = true;
            break;
        }
    }

    const SteeringVectors sv = path_steering(geom, az, el, dist);
    const MatchedFilter::Fit final_fit = filter.fit(sv, tau, sns);

    PathEstimate est;
    est.params.azimuth_deg = wrap_azimuth(az);
    est.params.elevation_deg = std::clamp(el, -90.0, 90.0);
    est.params.distance_m = dist;
    est.params.delay_s = tau;
    est.params.gain = final_fit.gain;
    est.params.sns.values = sns;
    est.power_db = to_db(std::norm(final_fit.gain));
    est.provenance = seed;
    est.converged = converged;
    return est;
}

// ------------------------------------------------------------------- SIC loop

namespace
{

void subtract_path(ChannelTensor &residual, const PathParams &path, const ArrayGeometry &geom,
                   double sign)
{
    const SteeringVectors sv =
        path_steering(geom, path.azimuth_deg, path.elevation_deg, path.distance_m);
    for (std::size_t m = 0; m < residual.m_elements; ++m)
    {
        const double s = path.sns.at(m);
        if (s == 0.0)
            continue;
        const cdouble scale = sign * (s * sv.amplitude[m]) * path.gain;
        detail::add_phase_ramp(residual.row(m), residual.n_freq(), residual.grid,
                               sv.delay_s[m] + path.delay_s, scale);
    }
}

CoarseCandidate candidate_from_estimate(const PathParams &params, const ScanGrid &scan,
                                        const FrequencyGrid &grid, double power)
{
    CoarseCandidate seed;
    const std::size_t n_az = scan.n_azimuth();
    const long long ia = (long long)std::llround((params.azimuth_deg + 180.0) / scan.azimuth_step_deg);
    seed.azimuth_index = floor_mod(ia, n_az);

    std::size_t best_el = 0;
    for (std::size_t j = 1; j < scan.elevations_deg.size(); ++j)
        if (std::abs(scan.elevations_deg[j] - params.elevation_deg) <
            std::abs(scan.elevations_deg[best_el] - params.elevation_deg))
            best_el = j;
    seed.elevation_index = best_el;

    std::size_t best_d = 0;
    if (is_far_field(params.distance_m))
    {
        best_d = scan.distances_m.size() - 1;
    }
    else
    {
        double best_gap = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < scan.distances_m.size(); ++k)
        {
            if (is_far_field(scan.distances_m[k]))
                continue;
            const double gap = std::abs(std::log10(scan.distances_m[k] / params.distance_m));
            if (gap < best_gap)
            {
                best_gap = gap;
                best_d = k;
            }
        }
    }
    seed.distance_index = best_d;

    const double bin = 1.0 / (double(grid.n_freq) * grid.f_step_hz);
    seed.delay_bin = std::size_t(std::clamp<long long>(std::llround(params.delay_s / bin), 0,
                                                       (long long)grid.n_freq - 1));

    seed.azimuth_deg = scan.azimuth(seed.azimuth_index);
    seed.elevation_deg = scan.elevations_deg[seed.elevation_index];
    seed.distance_m = scan.distances_m[seed.distance_index];
    seed.delay_s = double(seed.delay_bin) * bin;
    seed.power = power;
    return seed;
}

} // namespace

std::vector<PathEstimate> estimate_paths(const ChannelTensor &tensor, const ArrayGeometry &geom,
                                         const ScanGrid &scan, const EstimatorConfig &cfg)
{
    geom.validate();
    scan.validate(geom);
    cfg.validate();
    if (tensor.m_elements != geom.size())
        throw std::invalid_argument("estimate_paths: tensor/geometry element mismatch");

    std::vector<PathEstimate> extracted;
    if (!(tensor.energy() > 0.0))
        return extracted;

    ChannelTensor residual = tensor;
    double strongest_db = neg_inf_db;

    while (extracted.size() < cfg.max_paths)
    {
        const std::vector<CoarseCandidate> candidates = coarse_scan(residual, geom, scan);
        if (candidates.empty())
            break;
        const CoarseCandidate &top = candidates.front();
        if (!extracted.empty() && to_db(top.power) < strongest_db - cfg.dynamic_range_db)
            break;

        PathEstimate est = refine_path(residual, top, geom, scan, cfg);
        if (!(std::abs(est.params.gain) > 0.0))
            break;

        const double before = residual.energy();
        subtract_path(residual, est.params, geom, -1.0);
        const double after = residual.energy();
        est.residual_drop_db = after > 0.0 ? 10.0 * std::log10(before / after) : 300.0;
        strongest_db = std::max(strongest_db, est.power_db);
        extracted.push_back(std::move(est));
    }

    // Re-estimation sweeps: return one path to the residual, refine it against
    // everything not yet explained, subtract it again.
    for (std::size_t cycle = 0; cycle < cfg.sage_cycles; ++cycle)
    {
        for (auto &est : extracted)
        {
            subtract_path(residual, est.params, geom, +1.0);
            const CoarseCandidate seed = candidate_from_estimate(
                est.params, scan, residual.grid, std::norm(est.params.gain));
            PathEstimate updated = refine_path(residual, seed, geom, scan, cfg);
            if (std::abs(updated.params.gain) > 0.0)
            {
                const double before = residual.energy();
                subtract_path(residual, updated.params, geom, -1.0);
                const double after = residual.energy();
                updated.residual_drop_db =
                    after > 0.0 ? 10.0 * std::log10(before / after) : 300.0;
                est = std::move(updated);
            }
            else
            {
                subtract_path(residual, est.params, geom, -1.0);
            }
        }
    }

    std::stable_sort(extracted.begin(), extracted.end(),
                     [](const PathEstimate &a, const PathEstimate &b) {
                         return std::norm(a.params.gain) > std::norm(b.params.gain);
                     });
    return extracted;
}

} // namespace elaa
