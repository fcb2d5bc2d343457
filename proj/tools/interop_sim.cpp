// Copyright 2026 The Interop Sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// interop-sim: run, validate and diff simulation scenarios.

#include "interop/scenario/loader.hpp"
#include "interop/scenario/runner.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace interop;

namespace
{
    int report_error(const Error& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    int cmd_run(const std::string& path, std::optional<std::uint64_t> seed, const std::string& out_dir)
    {
        auto cfg = scenario::load(path);
        auto artifacts = scenario::execute(cfg, seed);
        scenario::write_artifacts(artifacts, out_dir);

        const auto& audits = artifacts.report["audits"];
        for (const auto& [name, verdict] : audits.items())
            if (!verdict["passed"].get<bool>())
                std::cerr << "audit failed: " << name << "\n";
        std::cout << cfg.name << ": " << (artifacts.audits_passed ? "all audits passed" : "AUDIT FAILURE")
                  << " (artifacts in " << out_dir << ")\n";
        return artifacts.audits_passed ? 0 : 1;
    }

    int cmd_validate(const std::string& path)
    {
        auto cfg = scenario::load(path);
        std::cout << path << ": valid (" << cfg.chains.size() << " chains, " << cfg.app_txns.size()
                  << " app transactions, " << cfg.transfers.size() << " transfers)\n";
        return 0;
    }

    int cmd_diff(const std::string& a, const std::string& b)
    {
        auto diff = scenario::replay_diff_files(a, b);
        if (diff.identical)
            return 0;
        std::cout << diff.describe();
        return 1;
    }
}

int main(int argc, char** argv)
{
    CLI::App app{"Deterministic simulator for interoperating blockchains"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir = "run-out";
    auto* run = app.add_subcommand("run", "Run a scenario and write run.log, report and resolver.dump");
    run->add_option("scenario", scenario_path, "Scenario file")->required();
    run->add_option("--seed", seed, "Override the scenario seed");
    run->add_option("--out", out_dir, "Output directory");

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "Check a scenario and list every problem");
    validate->add_option("scenario", validate_path, "Scenario file")->required();

    std::string log_a, log_b;
    auto* diff = app.add_subcommand("diff", "Compare two run logs; report the first divergent record");
    diff->add_option("left", log_a, "First log")->required();
    diff->add_option("right", log_b, "Second log")->required();

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*run)
            return cmd_run(scenario_path, seed, out_dir);
        if (*validate)
            return cmd_validate(validate_path);
        if (*diff)
            return cmd_diff(log_a, log_b);
    }
    catch (const Error& e)
    {
        return report_error(e);
    }
    return 2;
}
