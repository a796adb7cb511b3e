// SPDX-License-Identifier: Apache-2.0
//
// agingsim: link-level simulator for the massive MIMO downlink under
// channel aging (user mobility and oscillator phase noise)
// Copyright (C) 2026 agingsim contributors
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
// ------------------------------------------------------------------------

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "agingsim/bessel.hpp"
#include "agingsim/io.hpp"
#include "agingsim/phase_noise.hpp"
#include "agingsim/presets.hpp"

namespace fs = std::filesystem;
using namespace agingsim;

namespace {

std::string now_utc() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[64];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string key_footer() {
    std::string out = "Configuration keys (key = value per line, '#' comments):\n";
    for (const ConfigKeyDoc& d : config_key_docs()) {
        char line[160];
        std::snprintf(line, sizeof(line), "  %-20s [%-11s] %s\n", d.key, d.units, d.note);
        out += line;
    }
    return out;
}

int default_threads() {
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::min(8u, std::max(1u, hw)));
}

struct CommonFlags {
    std::string config_path;
    std::string out_dir = "out";
    long trials = -1;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 0;
    bool paper_scale = false;
    std::string dump_phase;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool with_config) {
    if (with_config)
        cmd->add_option("--config", f.config_path, "configuration file")->required();
    cmd->add_option("--trials", f.trials, "override Monte-Carlo trial count");
    cmd->add_option("--seed", f.seed, "override root seed")->each([&f](const std::string&) {
        f.seed_set = true;
    });
    cmd->add_option("--out", f.out_dir, "output directory (default: out)");
    cmd->add_option("--threads", f.threads, "worker threads (default: hardware, capped at 8)");
    cmd->add_flag("--paper-scale", f.paper_scale,
                  "lift desk-scale limits (M up to 300, full 40000-symbol blocks); slow");
    cmd->add_option("--dump-phase", f.dump_phase,
                    "also write one block of phase trajectories to this CSV path");
}

void apply_overrides(ExperimentSpec& spec, const CommonFlags& f) {
    if (f.trials >= 0)
        spec.trials = f.trials;
    if (f.seed_set)
        spec.root_seed = f.seed;
    spec.threads = f.threads > 0 ? f.threads : default_threads();
}

void dump_phase_csv(const ExperimentSpec& spec, const std::string& path) {
    const SystemConfig& cfg = spec.base;
    RngStream stream(spec.root_seed, {99});
    const PhaseState st = evolve_phase(cfg, stream);
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open output file '" + path + "'");
    out << "n";
    for (int m = 0; m < cfg.M; ++m)
        out << ",phi_" << m;
    for (int k = 0; k < cfg.K; ++k)
        out << ",varphi_" << k;
    out << "\n";
    char buf[40];
    for (int n = 0; n <= cfg.T_c; ++n) {
        out << n;
        for (int m = 0; m < cfg.M; ++m) {
            std::snprintf(buf, sizeof(buf), ",%.12g", st.bs_phase(m, n));
            out << buf;
        }
        for (int k = 0; k < cfg.K; ++k) {
            std::snprintf(buf, sizeof(buf), ",%.12g", st.user_phase(k, n));
            out << buf;
        }
        out << "\n";
    }
}

int execute(ExperimentSpec spec, const CommonFlags& flags) {
    apply_overrides(spec, flags);
    spec.validate(/*for_publish=*/true);

    fs::create_directories(flags.out_dir);
    const ResultTable table = run_experiment(spec);
    const fs::path csv_path = fs::path(flags.out_dir) / (spec.name + ".csv");
    emit_csv(table, csv_path.string());

    RunManifest manifest;
    manifest.config_echo = resolved_config(spec);
    manifest.root_seed = spec.root_seed;
    manifest.wall_clock = now_utc();
    manifest.output_files.push_back(csv_path.filename().string());
    if (!flags.dump_phase.empty()) {
        dump_phase_csv(spec, flags.dump_phase);
        manifest.output_files.push_back(flags.dump_phase);
    }
    const fs::path manifest_path = fs::path(flags.out_dir) / "manifest.txt";
    write_manifest(manifest, manifest_path.string());

    std::cout << "wrote " << csv_path.string() << " (" << table.rows.size() << " rows)\n";
    std::cout << "wrote " << manifest_path.string() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"agingsim: massive MIMO downlink simulator under channel aging "
                 "(user mobility + oscillator phase noise)"};
    app.require_subcommand(1);
    app.footer(key_footer());

    CommonFlags run_flags, preset_flags;
    std::string preset_name, validate_path;
    double j0_min = 0.0, j0_max = 20.0, j0_step = 0.1;

    CLI::App* cmd_run = app.add_subcommand("run", "run the experiment described by a config file");
    add_common(cmd_run, run_flags, true);

    CLI::App* cmd_preset = app.add_subcommand("preset", "run a named experiment preset");
    cmd_preset->add_option("name", preset_name, "fig1 | fig2 | fig3 | scaling")->required();
    add_common(cmd_preset, preset_flags, false);

    CLI::App* cmd_validate = app.add_subcommand("validate", "check a config file and exit");
    cmd_validate->add_option("--config", validate_path, "configuration file")->required();

    CLI::App* cmd_j0 = app.add_subcommand("j0-table", "dump a J0(x) grid to stdout");
    cmd_j0->add_option("--min", j0_min, "start of the grid (default 0)");
    cmd_j0->add_option("--max", j0_max, "end of the grid (default 20)");
    cmd_j0->add_option("--step", j0_step, "grid step (default 0.1)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_run->parsed()) {
            const auto pairs = parse_kv_file(run_flags.config_path);
            ExperimentSpec spec = spec_from_pairs(pairs, run_flags.paper_scale);
            return execute(std::move(spec), run_flags);
        }
        if (cmd_preset->parsed()) {
            ExperimentSpec spec = preset(preset_name, preset_flags.paper_scale);
            return execute(std::move(spec), preset_flags);
        }
        if (cmd_validate->parsed()) {
            const auto pairs = parse_kv_file(validate_path);
            ExperimentSpec spec = spec_from_pairs(pairs, false);
            spec.threads = 1;
            spec.validate(/*for_publish=*/true);
            std::cout << "ok: " << validate_path << "\n";
            for (const auto& [key, value] : resolved_config(spec))
                std::cout << key << " = " << value << "\n";
            return 0;
        }
        if (cmd_j0->parsed()) {
            if (!(j0_step > 0.0) || j0_max < j0_min)
                throw std::invalid_argument("j0-table: need step > 0 and max >= min");
            std::printf("x,j0\n");
            for (double x = j0_min; x <= j0_max + 1e-12; x += j0_step)
                std::printf("%.12g,%.12g\n", x, bessel_j0(x));
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
