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

#include "interop/common/rng.hpp"
#include "interop/common/types.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace interop::simnet
{
    /// Domain name under which applications attach to the network.
    inline const std::string kClientDomain = "client";

    struct LatencyConfig
    {
        Tick inter_chain = 2;
        Tick intra_chain = 1;
        Tick client = 0;
        Tick jitter = 0;
    };

    enum class FaultKind
    {
        Partition,
        NodeCrash,
        GatewayCrash,
        Heal,
    };

    std::string_view to_string(FaultKind kind);

    struct FaultSpec
    {
        std::string id;
        FaultKind kind = FaultKind::Partition;
        /// Partition: isolate this group of domains from everything else...
        std::vector<std::string> domains;
        /// ...or cut only these links.
        std::vector<std::pair<std::string, std::string>> links;
        /// NodeCrash
        ChainId chain;
        std::vector<NodeId> nodes;
        std::size_t count = 0;
        /// GatewayCrash
        GatewayId gateway;
        /// Heal
        std::string target;
        Tick at_tick = 0;
        std::optional<Tick> until_tick;
    };

    using Link = std::pair<std::string, std::string>;

    /// Domain connectivity. Domains are chains plus the client domain; a
    /// link is cut while any active fault cuts it.
    class Network
    {
    public:
        explicit Network(LatencyConfig latency = {}) : m_latency(latency) { m_domains.insert(kClientDomain); }

        void add_domain(const std::string& name) { m_domains.insert(name); }
        bool has_domain(const std::string& name) const { return m_domains.count(name) != 0; }
        const std::set<std::string>& domains() const noexcept { return m_domains; }

        /// Throws UnknownTarget for unknown domains.
        void isolate(const std::string& fault_id, const std::vector<std::string>& group);
        void cut(const std::string& fault_id, const std::vector<Link>& links);
        bool heal(const std::string& fault_id);

        bool connected(const std::string& a, const std::string& b) const;
        Tick latency(const std::string& from, const std::string& to, Rng& rng) const;
        const LatencyConfig& latency_config() const noexcept { return m_latency; }

    private:
        static Link normalized(const std::string& a, const std::string& b);

        LatencyConfig m_latency;
        std::set<std::string> m_domains;
        std::map<std::string, std::set<Link>> m_cuts;
    };
}
