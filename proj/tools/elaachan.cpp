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

#include <cstring>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "elaa/estimator.hpp"
#include "elaa/io.hpp"
#include "elaa/manifold.hpp"
#include "elaa/metrics.hpp"
#include "elaa/synth.hpp"
#include "elaa/transform.hpp"

namespace
{

using nlohmann::ordered_json;

bool is_channel_file(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    char magic[8] = {};
    in.read(magic, 8);
    return in.gcount() == 8 &&
           std::memcmp(magic, elaa::channel_file_magic, sizeof(elaa::channel_file_magic)) == 0;
}

int run_synth(const std::string &config_path, const std::string &output,
              const std::string &truth_output, bool seed_given, std::uint64_t seed)
{
    elaa::SynthConfig cfg = elaa::load_synth_config(config_path);
    if (seed_given)
        cfg.seed = seed;

    const elaa::ArrayGeometry geom = cfg.geometry.build();
    elaa::ChannelTensor tensor = elaa::synthesize_cfr(geom, cfg.grid, cfg.paths, cfg.mode);
    if (cfg.snr_db)
        tensor = elaa::add_noise(tensor, *cfg.snr_db, cfg.seed);
    elaa::write_channel(output, tensor);

    elaa::PathListDocument truth;
    truth.geometry = cfg.geometry;
    truth.grid = cfg.grid;
    truth.paths = cfg.paths;
    const std::string truth_path =
        truth_output.empty() ? output + ".paths.json" : truth_output;
    elaa::save_path_list(truth_path, truth);
    return 0;
}

int run_estimate(const std::string &channel_path, const std::string &config_path,
                 const std::string &output, bool dump_config)
{
    const elaa::ChannelTensor tensor = elaa::read_channel(channel_path);
    const elaa::EstimateConfig cfg = config_path.empty()
                                         ? elaa::EstimateConfig{}
                                         : elaa::load_estimate_config(config_path);
    if (!cfg.geometry.uca && cfg.geometry.external_file.empty())
        throw std::invalid_argument("estimate: config must provide the array geometry");

    const elaa::ArrayGeometry geom = cfg.geometry.build();
    if (dump_config)
    {
        std::cout << elaa::dump_estimate_config(cfg, geom, tensor.grid);
        return 0;
    }

    const elaa::ScanGrid scan =
        cfg.scan ? *cfg.scan : elaa::default_scan_grid(geom, tensor.grid);
    const std::vector<elaa::PathEstimate> estimates =
        elaa::estimate_paths(tensor, geom, scan, cfg.estimator);

    elaa::PathListDocument doc;
    doc.geometry = cfg.geometry;
    doc.grid = tensor.grid;
    for (const auto &est : estimates)
        doc.paths.push_back(est.params);
    elaa::save_path_list(output, doc);
    std::cerr << "estimated " << estimates.size() << " paths\n";
    return 0;
}

int run_reconstruct(const std::string &pathlist_path, const std::string &mode_name,
                    const std::string &output)
{
    const elaa::PathListDocument doc = elaa::load_path_list(pathlist_path);
    if (!doc.grid)
        throw std::invalid_argument(
            "reconstruct: path list carries no frequency grid; re-emit it with synth/estimate");
    const elaa::ArrayGeometry geom = doc.geometry.build();
    const elaa::SynthesisMode mode = elaa::parse_synthesis_mode(mode_name);
    const elaa::ChannelTensor tensor = elaa::synthesize_cfr(geom, *doc.grid, doc.paths, mode);
    elaa::write_channel(output, tensor);
    return 0;
}

int run_cir(const std::string &channel_path, const std::string &window_name, std::size_t pad,
            double floor_db, const std::string &prefix)
{
    const elaa::ChannelTensor tensor = elaa::read_channel(channel_path);
    const elaa::Window window = elaa::parse_window(window_name);
    const elaa::CirTensor cir = elaa::cfr_to_cir(tensor, window, pad);
    const elaa::RealMatrix map = elaa::cir_heatmap(cir, floor_db);
    elaa::write_csv_matrix(prefix + ".csv", map);
    elaa::write_pgm_heatmap(prefix + ".pgm", map, floor_db);
    return 0;
}

int run_compare(const std::string &a_path, const std::string &b_path, const std::string &output)
{
    ordered_json report;
    if (is_channel_file(a_path) != is_channel_file(b_path))
        throw std::invalid_argument("compare: inputs must both be channel files or path lists");

    if (is_channel_file(a_path))
    {
        const elaa::ChannelTensor a = elaa::read_channel(a_path);
        const elaa::ChannelTensor b = elaa::read_channel(b_path);
        report["type"] = "channels";
        report["m_elements"] = a.m_elements;
        report["n_freq"] = a.n_freq();
        report["nmse_db"] = elaa::nmse_db(a, b);
    }
    else
    {
        const elaa::PathListDocument a = elaa::load_path_list(a_path);
        const elaa::PathListDocument b = elaa::load_path_list(b_path);
        if (!a.grid && !b.grid)
            throw std::invalid_argument(
                "compare: neither path list carries a frequency grid (needed for the delay gate)");
        const elaa::MatchGates gates = elaa::default_match_gates(a.grid ? *a.grid : *b.grid);
        const elaa::PathMatching matching = elaa::match_paths(a.paths, b.paths, gates);

        report["type"] = "paths";
        report["gates"] = {{"azimuth_deg", gates.azimuth_deg},
                           {"elevation_deg", gates.elevation_deg},
                           {"delay_s", gates.delay_s},
                           {"log10_distance", gates.log10_distance}};
        ordered_json pairs = ordered_json::array();
        for (const auto &p : matching.pairs)
            pairs.push_back({{"a_index", p.estimate_index},
                             {"b_index", p.truth_index},
                             {"distance", p.distance}});
        report["pairs"] = std::move(pairs);
        report["unmatched_a"] = matching.unmatched_estimates;
        report["unmatched_b"] = matching.unmatched_truths;
    }

    const std::string text = report.dump(2) + "\n";
    if (output.empty())
        std::cout << text;
    else
        elaa::write_file_atomic(output, text);
    return 0;
}

int run_info(const std::string &path)
{
    if (is_channel_file(path))
    {
        const elaa::ChannelTensor tensor = elaa::read_channel(path);
        std::cout << "format: channel\n"
                  << "version: " << elaa::channel_file_version << "\n"
                  << "m_elements: " << tensor.m_elements << "\n"
                  << "n_freq: " << tensor.n_freq() << "\n"
                  << "f_start_hz: " << tensor.grid.f_start_hz << "\n"
                  << "f_step_hz: " << tensor.grid.f_step_hz << "\n"
                  << "payload_bytes: " << tensor.data.size() * 16 << "\n";
    }
    else
    {
        const elaa::PathListDocument doc = elaa::load_path_list(path);
        std::cout << "format: path-list\n"
                  << "schema_version: " << doc.schema_version << "\n"
                  << "n_paths: " << doc.paths.size() << "\n";
        if (doc.grid)
            std::cout << "f_start_hz: " << doc.grid->f_start_hz << "\n"
                      << "f_step_hz: " << doc.grid->f_step_hz << "\n"
                      << "n_freq: " << doc.grid->n_freq << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Near-field SnS multipath channel toolkit for extremely large antenna arrays"};
    app.require_subcommand(1);

    // synth
    auto *synth = app.add_subcommand("synth", "Synthesize a channel file from a scene config");
    std::string synth_config, synth_out, synth_truth;
    std::uint64_t synth_seed = 0;
    synth->add_option("--config", synth_config, "Scene config JSON")->required();
    synth->add_option("-o,--output", synth_out, "Output channel file")->required();
    synth->add_option("--truth", synth_truth,
                      "Ground-truth path list output (default: <output>.paths.json)");
    auto *seed_opt = synth->add_option("--seed", synth_seed, "Override the config noise seed");

    // estimate
    auto *estimate = app.add_subcommand("estimate", "Extract multipath parameters from a channel file");
    std::string est_channel, est_config, est_out;
    bool est_dump = false;
    estimate->add_option("channel", est_channel, "Input channel file")->required();
    estimate->add_option("--config", est_config, "Estimator config JSON (must carry geometry)");
    estimate->add_option("-o,--output", est_out, "Output path list JSON");
    estimate->add_flag("--dump-config", est_dump,
                       "Print the fully-expanded estimator config and exit");

    // reconstruct
    auto *reconstruct = app.add_subcommand("reconstruct", "Rebuild a channel file from a path list");
    std::string rec_paths, rec_mode, rec_out;
    reconstruct->add_option("paths", rec_paths, "Input path list JSON")->required();
    reconstruct->add_option("--mode", rec_mode, "Wavefront assumption")
        ->required()
        ->check(CLI::IsMember({"ff", "nf-stationary", "nf-sns"}, CLI::ignore_case));
    reconstruct->add_option("-o,--output", rec_out, "Output channel file")->required();

    // cir
    auto *cir = app.add_subcommand("cir", "Render per-element impulse responses as CSV + PGM");
    std::string cir_channel, cir_window = "hann", cir_prefix;
    std::size_t cir_pad = 4;
    double cir_floor = -30.0;
    cir->add_option("channel", cir_channel, "Input channel file")->required();
    cir->add_option("--window", cir_window, "IDFT window (rect|hann|hamming)")
        ->check(CLI::IsMember({"rect", "hann", "hamming"}, CLI::ignore_case));
    cir->add_option("--pad", cir_pad, "Zero-padding factor")->check(CLI::PositiveNumber);
    cir->add_option("--floor-db", cir_floor, "Display floor in dB (negative)");
    cir->add_option("-o,--output", cir_prefix, "Output prefix (<prefix>.csv, <prefix>.pgm)")
        ->required();

    // compare
    auto *compare = app.add_subcommand("compare", "Compare two channel files or two path lists");
    std::string cmp_a, cmp_b, cmp_out;
    compare->add_option("a", cmp_a, "First file")->required();
    compare->add_option("b", cmp_b, "Second file")->required();
    compare->add_option("-o,--output", cmp_out, "Report JSON (stdout when omitted)");

    // info
    auto *info = app.add_subcommand("info", "Print file header fields");
    std::string info_path;
    info->add_option("file", info_path, "Channel file or path list")->required();

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (synth->parsed())
            return run_synth(synth_config, synth_out, synth_truth, seed_opt->count() > 0,
                             synth_seed);
        if (estimate->parsed())
        {
            if (!est_dump && est_out.empty())
                throw std::invalid_argument("estimate: -o/--output is required");
            return run_estimate(est_channel, est_config, est_out, est_dump);
        }
        if (reconstruct->parsed())
            return run_reconstruct(rec_paths, rec_mode, rec_out);
        if (cir->parsed())
            return run_cir(cir_channel, cir_window, cir_pad, cir_floor, cir_prefix);
        if (compare->parsed())
            return run_compare(cmp_a, cmp_b, cmp_out);
        if (info->parsed())
            return run_info(info_path);
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
