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

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <utility>

namespace interop
{
    using Tick = std::int64_t;

    /// String-backed identifier, distinct per Tag so ids of different
    /// entity kinds cannot be mixed up.
    template <class Tag>
    class Id
    {
    public:
        Id() = default;
        explicit Id(std::string value) : m_value(std::move(value)) {}

        const std::string& str() const noexcept { return m_value; }
        bool empty() const noexcept { return m_value.empty(); }

        auto operator<=>(const Id&) const = default;
        bool operator==(const Id&) const = default;

    private:
        std::string m_value;
    };

    template <class Tag>
    std::ostream& operator<<(std::ostream& os, const Id<Tag>& id)
    {
        return os << id.str();
    }

    using ChainId = Id<struct ChainIdTag>;
    using NodeId = Id<struct NodeIdTag>;
    using GatewayId = Id<struct GatewayIdTag>;
    using AppId = Id<struct AppIdTag>;
    using LocalRef = Id<struct LocalRefTag>;
    using TransferId = Id<struct TransferIdTag>;
    using ConnectorId = Id<struct ConnectorIdTag>;
    using PathId = Id<struct PathIdTag>;
    using AgreementId = Id<struct AgreementIdTag>;
    using GrantId = Id<struct GrantIdTag>;
    using AppTxnId = Id<struct AppTxnIdTag>;
    using Denomination = Id<struct DenominationTag>;
}

template <class Tag>
struct std::hash<interop::Id<Tag>>
{
    std::size_t operator()(const interop::Id<Tag>& id) const noexcept
    {
        return std::hash<std::string>{}(id.str());
    }
};
