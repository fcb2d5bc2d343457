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


#include "interop/simnet/network.hpp"
#include "interop/common/error.hpp"

namespace interop::simnet
{
    std::string_view to_string(FaultKind kind)
    {
        switch (kind)
        {
        case FaultKind::Partition: return "partition";
        case FaultKind::NodeCrash: return "node_crash";
        case FaultKind::GatewayCrash: return "gateway_crash";
        case FaultKind::Heal: return "heal";
        }
        return "?";
    }

    Link Network::normalized(const std::string& a, const std::string& b)
    {
        return a < b ? Link{a, b} : Link{b, a};
    }

    void Network::isolate(const std::string& fault_id, const std::vector<std::string>& group)
    {
        std::set<std::string> inside;
        for (const auto& d : group)
        {
            if (!has_domain(d))
                fail(Errc::UnknownTarget, "unknown domain " + d);
            inside.insert(d);
        }
        auto& cuts = m_cuts[fault_id];
        for (const auto& a : inside)
            for (const auto& b : m_domains)
                if (!inside.count(b))
                    cuts.insert(normalized(a, b));
    }

    void Network::cut(const std::string& fault_id, const std::vector<Link>& links)
    {
        for (const auto& [a, b] : links)
            if (!has_domain(a) || !has_domain(b))
                fail(Errc::UnknownTarget, "unknown link " + a + "-" + b);
        auto& cuts = m_cuts[fault_id];
        for (const auto& [a, b] : links)
            if (a != b)
                cuts.insert(normalized(a, b));
    }

    bool Network::heal(const std::string& fault_id)
    {
        return m_cuts.erase(fault_id) != 0;
    }

    bool Network::connected(const std::string& a, const std::string& b) const
    {
        if (a == b)
            return true;
        Link l = normalized(a, b);
        for (const auto& [id, cuts] : m_cuts)
            if (cuts.count(l))
                return false;
        return true;
    }

    Tick Network::latency(const std::string& from, const std::string& to, Rng& rng) const
    {
        if (from == to)
            return m_latency.intra_chain;
        if (from == kClientDomain || to == kClientDomain)
            return m_latency.client;
        Tick base = m_latency.inter_chain;
        if (m_latency.jitter > 0)
            base += rng.uniform(0, m_latency.jitter);
        return base;
    }
}
