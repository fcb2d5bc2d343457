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


#pragma once

#include "interop/scenario/config.hpp"
#include "interop/simnet/world.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>

namespace interop::scenario
{
    struct RunArtifacts
    {
        std::string log;
        nlohmann::json report;
        std::string resolver_dump;
        bool audits_passed = false;
    };

    /// Structured summary of a finished world; keys sort stably.
    nlohmann::json build_report(const simnet::World& world);

    /// Runs the scenario, optionally overriding its seed.
    RunArtifacts execute(const ScenarioConfig& config, std::optional<std::uint64_t> seed = std::nullopt);

    /// Writes run.log, report and resolver.dump into dir. Throws IoError.
    void write_artifacts(const RunArtifacts& artifacts, const std::filesystem::path& dir);

    struct LogDiff
    {
        bool identical = true;
        std::size_t record = 0;
        std::optional<std::string> left;
        std::optional<std::string> right;

        std::string describe() const;
    };

    /// Empty iff byte-identical; otherwise the first divergent record
    /// (a missing record on one side shows as nullopt).
    LogDiff replay_diff(const std::string& a, const std::string& b);
    /// Throws IoError.
    LogDiff replay_diff_files(const std::filesystem::path& a, const std::filesystem::path& b);

    std::string read_file(const std::filesystem::path& path);
}
