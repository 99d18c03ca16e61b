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

#include "elaa/io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <random>

#include <json.hpp>

namespace elaa
{

using ordered_json = nlohmann::ordered_json;

// ----------------------------------------------------------- little-endian IO

namespace
{

static_assert(sizeof(double) == 8, "IEEE-754 binary64 expected");

template <typename T> void append_le(std::string &buffer, T value)
{
    std::array<unsigned char, sizeof(T)> bytes;
    std::memcpy(bytes.data(), &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big)
        std::reverse(bytes.begin(), bytes.end());
    buffer.append(reinterpret_cast<const char *>(bytes.data()), sizeof(T));
}

template <typename T> T read_le(const char *data)
{
    std::array<unsigned char, sizeof(T)> bytes;
    std::memcpy(bytes.data(), data, sizeof(T));
    if constexpr (std::endian::native == std::endian::big)
        std::reverse(bytes.begin(), bytes.end());
    T value;
    std::memcpy(&value, bytes.data(), sizeof(T));
    return value;
}

std::filesystem::path temp_sibling(const std::filesystem::path &path)
{
    static std::random_device entropy;
    return path.parent_path() /
           (path.filename().string() + ".tmp" + std::to_string(entropy()));
}

void write_bytes_atomic(const std::filesystem::path &path, const std::string &bytes)
{
    const std::filesystem::path tmp = temp_sibling(path);
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        out.write(bytes.data(), std::streamsize(bytes.size()));
        if (!out)
            throw std::runtime_error("short write to '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, path);
}

std::string format_double(double v)
{
    std::array<char, 40> buf;
    auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), p);
}

} // namespace

void write_file_atomic(const std::filesystem::path &path, const std::string &content)
{
    write_bytes_atomic(path, content);
}

// ---------------------------------------------------------------- channel file

void write_channel(const std::filesystem::path &path, const ChannelTensor &tensor)
{
    tensor.grid.validate();
    if (tensor.data.size() != tensor.m_elements * tensor.n_freq())
        throw std::invalid_argument("write_channel: inconsistent tensor payload");

    std::string buffer;
    buffer.reserve(channel_file_header_bytes + tensor.data.size() * 16);
    buffer.append(channel_file_magic, sizeof(channel_file_magic));
    append_le<std::uint32_t>(buffer, channel_file_version);
    append_le<std::uint32_t>(buffer, std::uint32_t(tensor.m_elements));
    append_le<std::uint32_t>(buffer, std::uint32_t(tensor.n_freq()));
    append_le<double>(buffer, tensor.grid.f_start_hz);
    append_le<double>(buffer, tensor.grid.f_step_hz);
    for (const auto &v : tensor.data)
    {
        append_le<double>(buffer, v.real());
        append_le<double>(buffer, v.imag());
    }
    write_bytes_atomic(path, buffer);
}

ChannelTensor read_channel(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open '" + path.string() + "'");
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    if (bytes.size() < channel_file_header_bytes)
        throw format_error(FormatErrorKind::truncated, "channel file shorter than its header");
    if (std::memcmp(bytes.data(), channel_file_magic, sizeof(channel_file_magic)) != 0)
        throw format_error(FormatErrorKind::bad_magic, "not a channel file (magic mismatch)");

    const char *p = bytes.data() + 8;
    const auto version = read_le<std::uint32_t>(p);
    if (version != channel_file_version)
        throw format_error(FormatErrorKind::version_mismatch,
                           "unsupported channel file version " + std::to_string(version));
    const auto m = read_le<std::uint32_t>(p + 4);
    const auto n = read_le<std::uint32_t>(p + 8);
    const double f_start = read_le<double>(p + 12);
    const double f_step = read_le<double>(p + 20);
    if (m == 0 || n == 0 || !(f_step > 0.0) || !(f_start > 0.0))
        throw format_error(FormatErrorKind::invalid_field, "invalid channel file header fields");

    const std::size_t payload = std::size_t(m) * std::size_t(n) * 16;
    if (bytes.size() != channel_file_header_bytes + payload)
        throw format_error(FormatErrorKind::truncated,
                           "channel payload size mismatch (expected " + std::to_string(payload) +
                               " bytes)");

    ChannelTensor tensor(m, FrequencyGrid{f_start, f_step, n});
    const char *sample = bytes.data() + channel_file_header_bytes;
    for (std::size_t i = 0; i < tensor.data.size(); ++i, sample += 16)
        tensor.data[i] = {read_le<double>(sample), read_le<double>(sample + 8)};
    return tensor;
}

// ------------------------------------------------------------------- path list

namespace
{

ordered_json geometry_to_json(const GeometryRef &ref)
{
    ordered_json j;
    if (ref.uca)
    {
        j["type"] = "uca";
        j["n_elements"] = ref.uca->n_elements;
        j["radius_m"] = ref.uca->radius_m;
        j["height_m"] = ref.uca->height_m;
    }
    else
    {
        j["type"] = "file";
        j["file"] = ref.external_file;
    }
    return j;
}

GeometryRef geometry_from_json(const ordered_json &j)
{
    GeometryRef ref;
    const std::string type = j.at("type").get<std::string>();
    if (type == "uca")
    {
        UcaSpec spec;
        spec.n_elements = j.at("n_elements").get<std::size_t>();
        spec.radius_m = j.at("radius_m").get<double>();
        spec.height_m = j.value("height_m", 0.0);
        ref.uca = spec;
    }
    else if (type == "file")
    {
        ref.external_file = j.at("file").get<std::string>();
    }
    else
    {
        throw format_error(FormatErrorKind::invalid_field,
                           "unknown geometry type '" + type + "'");
    }
    return ref;
}

ordered_json grid_to_json(const FrequencyGrid &grid)
{
    ordered_json j;
    j["f_start_hz"] = grid.f_start_hz;
    j["f_step_hz"] = grid.f_step_hz;
    j["n_freq"] = grid.n_freq;
    return j;
}

FrequencyGrid grid_from_json(const ordered_json &j)
{
    FrequencyGrid grid;
    grid.f_start_hz = j.at("f_start_hz").get<double>();
    grid.f_step_hz = j.at("f_step_hz").get<double>();
    grid.n_freq = j.at("n_freq").get<std::size_t>();
    grid.validate();
    return grid;
}

ordered_json path_to_json(const PathParams &path)
{
    ordered_json j;
    j["azimuth_deg"] = path.azimuth_deg;
    j["elevation_deg"] = path.elevation_deg;
    if (is_far_field(path.distance_m))
        j["distance_m"] = "far_field";
    else
        j["distance_m"] = path.distance_m;
    j["delay_s"] = path.delay_s;
    j["gain_re"] = path.gain.real();
    j["gain_im"] = path.gain.imag();
    if (path.sns.is_all_ones())
        j["sns"] = "ones";
    else
        j["sns"] = path.sns.values;
    return j;
}

PathParams path_from_json(const ordered_json &j)
{
    PathParams path;
    path.azimuth_deg = j.at("azimuth_deg").get<double>();
    path.elevation_deg = j.at("elevation_deg").get<double>();
    const auto &dist = j.at("distance_m");
    if (dist.is_string())
    {
        if (dist.get<std::string>() != "far_field")
            throw format_error(FormatErrorKind::invalid_field,
                               "distance must be a number or \"far_field\"");
        path.distance_m = far_field;
    }
    else
    {
        path.distance_m = dist.get<double>();
    }
    path.delay_s = j.at("delay_s").get<double>();
    path.gain = {j.at("gain_re").get<double>(), j.at("gain_im").get<double>()};
    const auto &sns = j.at("sns");
    if (sns.is_string())
    {
        if (sns.get<std::string>() != "ones")
            throw format_error(FormatErrorKind::invalid_field,
                               "sns must be an array or \"ones\"");
    }
    else
    {
        path.sns.values = sns.get<std::vector<double>>();
        path.sns.validate();
    }
    return path;
}

} // namespace

ArrayGeometry GeometryRef::build() const
{
    if (uca)
        return build_uca(uca->n_elements, uca->radius_m, uca->height_m);
    if (external_file.empty())
        throw std::invalid_argument("geometry reference is empty");

    std::ifstream in(external_file);
    if (!in)
        throw std::runtime_error("cannot open geometry file '" + external_file + "'");
    const ordered_json j = ordered_json::parse(in);
    ArrayGeometry geom;
    for (const auto &p : j.at("positions"))
        geom.positions.push_back({p.at(0).get<double>(), p.at(1).get<double>(),
                                  p.at(2).get<double>()});
    if (j.contains("reference"))
        geom.reference = {j["reference"].at(0).get<double>(), j["reference"].at(1).get<double>(),
                          j["reference"].at(2).get<double>()};
    geom.closed_ring = j.value("closed_ring", false);
    geom.validate();
    return geom;
}

void save_path_list(const std::filesystem::path &path, const PathListDocument &doc)
{
    ordered_json j;
    j["schema_version"] = doc.schema_version;
    j["geometry"] = geometry_to_json(doc.geometry);
    if (doc.grid)
        j["grid"] = grid_to_json(*doc.grid);
    ordered_json paths = ordered_json::array();
    for (const auto &p : doc.paths)
        paths.push_back(path_to_json(p));
    j["paths"] = std::move(paths);
    write_file_atomic(path, j.dump(2) + "\n");
}

PathListDocument load_path_list(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path.string() + "'");
    const ordered_json j = ordered_json::parse(in);

    PathListDocument doc;
    doc.schema_version = j.at("schema_version").get<int>();
    if (doc.schema_version != path_list_schema_version)
        throw format_error(FormatErrorKind::version_mismatch,
                           "unsupported path list schema version " +
                               std::to_string(doc.schema_version));
    doc.geometry = geometry_from_json(j.at("geometry"));
    if (j.contains("grid"))
        doc.grid = grid_from_json(j["grid"]);
    for (const auto &p : j.at("paths"))
        doc.paths.push_back(path_from_json(p));

    if (doc.geometry.uca)
    {
        const std::size_t m = doc.geometry.uca->n_elements;
        for (const auto &p : doc.paths)
            if (!p.sns.is_all_ones() && p.sns.size() != m)
                throw format_error(FormatErrorKind::invalid_field,
                                   "sns length does not match the geometry");
    }
    return doc;
}

// --------------------------------------------------------------------- exports

void write_csv_matrix(const std::filesystem::path &path, const RealMatrix &matrix)
{
    std::string out;
    out.reserve(matrix.data.size() * 8);
    for (std::size_t r = 0; r < matrix.rows; ++r)
    {
        for (std::size_t c = 0; c < matrix.cols; ++c)
        {
            if (c)
                out.push_back(',');
            out += format_double(matrix.at(r, c));
        }
        out.push_back('\n');
    }
    write_file_atomic(path, out);
}

void write_pgm_heatmap(const std::filesystem::path &path, const RealMatrix &matrix,
                       double floor_db)
{
    if (!(floor_db < 0.0))
        throw std::invalid_argument("write_pgm_heatmap: floor must be negative");

    std::string out = "P5\n" + std::to_string(matrix.cols) + " " + std::to_string(matrix.rows) +
                      "\n255\n";
    out.reserve(out.size() + matrix.data.size());
    for (double v : matrix.data)
    {
        const double unit = (v - floor_db) / (0.0 - floor_db);
        const int pixel = int(std::lround(std::clamp(unit, 0.0, 1.0) * 255.0));
        out.push_back(char(static_cast<unsigned char>(pixel)));
    }
    write_bytes_atomic(path, out);
}

// --------------------------------------------------------------------- configs

SynthConfig load_synth_config(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path.string() + "'");
    const ordered_json j = ordered_json::parse(in);

    SynthConfig cfg;
    cfg.geometry = geometry_from_json(j.at("geometry"));
    cfg.grid = grid_from_json(j.at("grid"));
    cfg.mode = parse_synthesis_mode(j.value("mode", std::string("nf-sns")));
    for (const auto &p : j.at("paths"))
        cfg.paths.push_back(path_from_json(p));
    if (j.contains("snr_db"))
        cfg.snr_db = j["snr_db"].get<double>();
    cfg.seed = j.value("seed", std::uint64_t(0));
    return cfg;
}

namespace
{

ordered_json scan_to_json(const ScanGrid &scan)
{
    ordered_json j;
    j["azimuth_step_deg"] = scan.azimuth_step_deg;
    j["elevations_deg"] = scan.elevations_deg;
    ordered_json dists = ordered_json::array();
    for (double d : scan.distances_m)
    {
        if (is_far_field(d))
            dists.push_back("far_field");
        else
            dists.push_back(d);
    }
    j["distances_m"] = std::move(dists);
    return j;
}

ScanGrid scan_from_json(const ordered_json &j)
{
    ScanGrid scan;
    scan.azimuth_step_deg = j.value("azimuth_step_deg", scan.azimuth_step_deg);
    if (j.contains("elevations_deg"))
        scan.elevations_deg = j["elevations_deg"].get<std::vector<double>>();
    if (j.contains("distances_m"))
    {
        scan.distances_m.clear();
        for (const auto &d : j["distances_m"])
        {
            if (d.is_string())
            {
                if (d.get<std::string>() != "far_field")
                    throw format_error(FormatErrorKind::invalid_field,
                                       "distances must be numbers or \"far_field\"");
                scan.distances_m.push_back(far_field);
            }
            else
            {
                scan.distances_m.push_back(d.get<double>());
            }
        }
    }
    return scan;
}

ordered_json estimator_to_json(const EstimatorConfig &cfg)
{
    ordered_json j;
    j["dynamic_range_db"] = cfg.dynamic_range_db;
    j["max_paths"] = cfg.max_paths;
    j["azimuth_tol_deg"] = cfg.azimuth_tol_deg;
    j["elevation_tol_deg"] = cfg.elevation_tol_deg;
    j["distance_rel_tol"] = cfg.distance_rel_tol;
    j["delay_tol_bins"] = cfg.delay_tol_bins;
    j["max_refine_iterations"] = cfg.max_refine_iterations;
    j["sns_threshold"] = cfg.sns_threshold;
    j["sns_smooth_window"] = cfg.sns_smooth_window;
    j["sage_cycles"] = cfg.sage_cycles;
    return j;
}

EstimatorConfig estimator_from_json(const ordered_json &j)
{
    EstimatorConfig cfg;
    cfg.dynamic_range_db = j.value("dynamic_range_db", cfg.dynamic_range_db);
    cfg.max_paths = j.value("max_paths", cfg.max_paths);
    cfg.azimuth_tol_deg = j.value("azimuth_tol_deg", cfg.azimuth_tol_deg);
    cfg.elevation_tol_deg = j.value("elevation_tol_deg", cfg.elevation_tol_deg);
    cfg.distance_rel_tol = j.value("distance_rel_tol", cfg.distance_rel_tol);
    cfg.delay_tol_bins = j.value("delay_tol_bins", cfg.delay_tol_bins);
    cfg.max_refine_iterations = j.value("max_refine_iterations", cfg.max_refine_iterations);
    cfg.sns_threshold = j.value("sns_threshold", cfg.sns_threshold);
    cfg.sns_smooth_window = j.value("sns_smooth_window", cfg.sns_smooth_window);
    cfg.sage_cycles = j.value("sage_cycles", cfg.sage_cycles);
    cfg.validate();
    return cfg;
}

} // namespace

EstimateConfig load_estimate_config(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path.string() + "'");
    const ordered_json j = ordered_json::parse(in);

    EstimateConfig cfg;
    cfg.geometry = geometry_from_json(j.at("geometry"));
    if (j.contains("scan"))
        cfg.scan = scan_from_json(j["scan"]);
    if (j.contains("estimator"))
        cfg.estimator = estimator_from_json(j["estimator"]);
    return cfg;
}

std::string dump_estimate_config(const EstimateConfig &cfg, const ArrayGeometry &geom,
                                 const FrequencyGrid &grid)
{
    const ScanGrid scan = cfg.scan ? *cfg.scan : default_scan_grid(geom, grid);
    ordered_json j;
    j["geometry"] = geometry_to_json(cfg.geometry);
    j["scan"] = scan_to_json(scan);
    j["estimator"] = estimator_to_json(cfg.estimator);
    return j.dump(2) + "\n";
}

} // namespace elaa
