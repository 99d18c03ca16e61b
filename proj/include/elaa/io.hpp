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

#ifndef ELAA_IO_HPP
#define ELAA_IO_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "elaa/channel.hpp"
#include "elaa/estimator.hpp"
#include "elaa/geometry.hpp"
#include "elaa/metrics.hpp"
#include "elaa/synth.hpp"
#include "elaa/transform.hpp"

namespace elaa
{

// ---------------------------------------------------------------- channel file
//
// Binary layout, all little-endian:
//   magic     8 bytes  "ELAACFR1"
//   version   u32      currently 1
//   m         u32      number of elements
//   n         u32      number of frequency points
//   f_start   f64      Hz
//   f_step    f64      Hz
//   payload   m*n complex samples, (f64 real, f64 imag), element-major

inline constexpr char channel_file_magic[8] = {'E', 'L', 'A', 'A', 'C', 'F', 'R', '1'};
inline constexpr std::uint32_t channel_file_version = 1;
inline constexpr std::size_t channel_file_header_bytes = 8 + 3 * 4 + 2 * 8;

enum class FormatErrorKind
{
    bad_magic,
    version_mismatch,
    truncated,
    invalid_field,
};

class format_error : public std::runtime_error
{
  public:
    format_error(FormatErrorKind kind, const std::string &what)
        : std::runtime_error(what), kind_(kind)
    {
    }
    FormatErrorKind kind() const { return kind_; }

  private:
    FormatErrorKind kind_;
};

/// Write the tensor to `path` (write-to-temp-then-rename, bit-exact round trip).
void write_channel(const std::filesystem::path &path, const ChannelTensor &tensor);

/// Read a channel file; throws format_error with a distinct kind for bad
/// magic, unsupported version and truncated payload.
ChannelTensor read_channel(const std::filesystem::path &path);

// ------------------------------------------------------------------- path list
//
// Versioned JSON document carrying a geometry reference, the frequency grid
// it was estimated or synthesized on, and the paths themselves.

inline constexpr int path_list_schema_version = 1;

struct UcaSpec
{
    std::size_t n_elements = 0;
    double radius_m = 0.0;
    double height_m = 0.0;
};

/// Either an inline UCA spec or the name of an external geometry file.
struct GeometryRef
{
    std::optional<UcaSpec> uca;
    std::string external_file;

    ArrayGeometry build() const;
};

struct PathListDocument
{
    int schema_version = path_list_schema_version;
    GeometryRef geometry;
    std::optional<FrequencyGrid> grid;
    std::vector<PathParams> paths;
};

void save_path_list(const std::filesystem::path &path, const PathListDocument &doc);
PathListDocument load_path_list(const std::filesystem::path &path);

// -------------------------------------------------------------------- exports

/// dB matrix as CSV: one row per element, '.' decimal separator and '\n'
/// line endings unconditionally.
void write_csv_matrix(const std::filesystem::path &path, const RealMatrix &matrix);

/// Binary 8-bit PGM (P5, maxval 255); floor_db maps to 0 and 0 dB to 255.
void write_pgm_heatmap(const std::filesystem::path &path, const RealMatrix &matrix,
                       double floor_db);

// -------------------------------------------------------------------- configs

struct SynthConfig
{
    GeometryRef geometry;
    FrequencyGrid grid;
    SynthesisMode mode = SynthesisMode::NF_SNS;
    std::vector<PathParams> paths;
    std::optional<double> snr_db;
    std::uint64_t seed = 0;
};

SynthConfig load_synth_config(const std::filesystem::path &path);

struct EstimateConfig
{
    GeometryRef geometry;
    std::optional<ScanGrid> scan; // default_scan_grid when absent
    EstimatorConfig estimator;
};

EstimateConfig load_estimate_config(const std::filesystem::path &path);

/// Emit the config with every default spelled out (`--dump-config`).
std::string dump_estimate_config(const EstimateConfig &cfg, const ArrayGeometry &geom,
                                 const FrequencyGrid &grid);

/// Atomic text write used by every JSON/CSV/PGM emitter.
void write_file_atomic(const std::filesystem::path &path, const std::string &content);

} // namespace elaa

#endif
