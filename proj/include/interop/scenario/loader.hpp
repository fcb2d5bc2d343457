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

#include "interop/common/error.hpp"
#include "interop/scenario/config.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace interop::scenario
{
    /// Load failure with every problem found, each prefixed by its field path.
    class ScenarioError : public Error
    {
    public:
        ScenarioError(Errc code, std::vector<std::string> problems);

        const std::vector<std::string>& problems() const noexcept { return m_problems; }

    private:
        std::vector<std::string> m_problems;
    };

    /// Parses and validates scenario JSON text. Throws ScenarioError with
    /// ParseError (syntax, reported with its line) or ValidationError.
    ScenarioConfig parse(const std::string& text);

    /// Reads the file first; a missing file is an IoError.
    ScenarioConfig load(const std::filesystem::path& path);

    /// Cross-reference and range checks; empty means valid.
    std::vector<std::string> validate(const ScenarioConfig& config);
}
