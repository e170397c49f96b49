// Copyright 2026 The evq contributors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "evq/experiment.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;
constexpr int kExitNumerical = 4;

unsigned thread_count(unsigned cli_value) {
    if (cli_value) return cli_value;
    if (const char *env = std::getenv("EVQ_THREADS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n > 0) return unsigned(n);
    }
    return 0;  // hardware concurrency
}

void write_rows(const std::vector<evq::ResultRow> &rows, const std::string &path,
                const std::string &format) {
    const std::string text =
        format == "json" ? evq::rows_to_json(rows) : evq::rows_to_csv(rows);
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Echo-verification experiment harness"};
    app.require_subcommand(1);

    std::string config_path, output_path, format = "csv";
    uint64_t seed_override = 0;
    bool has_seed = false;
    unsigned threads = 0;

    auto add_common = [&](CLI::App *cmd, bool with_output) {
        cmd->add_option("-c,--config", config_path, "experiment config (JSON)")->required();
        if (with_output) {
            cmd->add_option("-o,--output", output_path, "output path (default stdout)");
            cmd->add_option("-f,--format", format, "csv or json")
                ->check(CLI::IsMember({"csv", "json"}));
        }
    };

    CLI::App *run = app.add_subcommand("run", "run the configured experiment");
    add_common(run, true);
    run->add_option("-s,--seed", seed_override, "seed override")
        ->each([&](const std::string &) { has_seed = true; });
    run->add_option("-t,--threads", threads, "worker threads (or EVQ_THREADS)");

    CLI::App *validate = app.add_subcommand("validate", "lint a config file");
    add_common(validate, false);

    CLI::App *oracle = app.add_subcommand("oracle", "exact references only");
    add_common(oracle, true);

    CLI11_PARSE(app, argc, argv);

    try {
        evq::ExperimentConfig config = evq::load_config(config_path);
        if (validate->parsed()) {
            std::cout << "ok: " << config.lattice.kind << ", " << config.lattice.n_nodes
                      << " nodes, " << config.steps << " steps, measured site "
                      << config.resolved_site() << "\n";
            return 0;
        }
        if (oracle->parsed()) {
            write_rows(evq::oracle_rows(config).rows, output_path, format);
            return 0;
        }
        if (has_seed) config.seed = seed_override;
        const evq::ExperimentResult result =
            evq::run_experiment(config, thread_count(threads));
        for (const unsigned step : result.skipped_steps)
            std::cerr << "warning: postselection annihilated step " << step << ", skipped\n";
        write_rows(result.rows, output_path, format);
        return 0;
    } catch (const evq::ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::domain_error &e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception &e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return kExitRuntime;
    }
}
