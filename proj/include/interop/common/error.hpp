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

#include <stdexcept>
#include <string>
#include <string_view>

namespace interop
{
    enum class Errc
    {
        PermissionDenied,
        SemanticMismatch,
        Unreachable,
        NotFound,
        InvalidArgument,
        InvalidProof,
        StaleAuthority,
        GrantExpired,
        GrantMismatch,
        NotConfirmed,
        InsufficientGateways,
        NoPeering,
        NotAuthoritativeHere,
        NoLiveGateways,
        DuplicateAgreement,
        NoRoute,
        Overloaded,
        PathExpired,
        AlreadyTerminal,
        EmptyCandidates,
        UnknownTarget,
        ScenarioInvalid,
        ParseError,
        ValidationError,
        IoError,
        AssetLocked,
    };

    std::string_view to_string(Errc code);

    // Every failure surfaced by the library is an Error carrying a stable code.
    class Error : public std::runtime_error
    {
    public:
        Error(Errc code, const std::string& what)
            : std::runtime_error(std::string(to_string(code)) + ": " + what)
            , m_code(code)
        {
        }

        Errc code() const noexcept { return m_code; }

    private:
        Errc m_code;
    };

    [[noreturn]] inline void fail(Errc code, const std::string& what)
    {
        throw Error(code, what);
    }
}
