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

#include "interop/common/error.hpp"

namespace interop
{
    std::string_view to_string(Errc code)
    {
        switch (code)
        {
        case Errc::PermissionDenied: return "PermissionDenied";
        case Errc::SemanticMismatch: return "SemanticMismatch";
        case Errc::Unreachable: return "Unreachable";
        case Errc::NotFound: return "NotFound";
        case Errc::InvalidArgument: return "InvalidArgument";
        case Errc::InvalidProof: return "InvalidProof";
        case Errc::StaleAuthority: return "StaleAuthority";
        case Errc::GrantExpired: return "GrantExpired";
        case Errc::GrantMismatch: return "GrantMismatch";
        case Errc::NotConfirmed: return "NotConfirmed";
        case Errc::InsufficientGateways: return "InsufficientGateways";
        case Errc::NoPeering: return "NoPeering";
        case Errc::NotAuthoritativeHere: return "NotAuthoritativeHere";
        case Errc::NoLiveGateways: return "NoLiveGateways";
        case Errc::DuplicateAgreement: return "DuplicateAgreement";
        case Errc::NoRoute: return "NoRoute";
        case Errc::Overloaded: return "Overloaded";
        case Errc::PathExpired: return "PathExpired";
        case Errc::AlreadyTerminal: return "AlreadyTerminal";
        case Errc::EmptyCandidates: return "EmptyCandidates";
        case Errc::UnknownTarget: return "UnknownTarget";
        case Errc::ScenarioInvalid: return "ScenarioInvalid";
        case Errc::ParseError: return "ParseError";
        case Errc::ValidationError: return "ValidationError";
        case Errc::IoError: return "IoError";
        case Errc::AssetLocked: return "AssetLocked";
        }
        return "Unknown";
    }
}
