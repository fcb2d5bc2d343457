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

#include "interop/gateway/peering.hpp"
#include "interop/common/error.hpp"

namespace interop::gateway
{
    bool PeeringAgreement::covers(const ChainId& a, const ChainId& b, chain::SemanticType type) const
    {
        if (!active || a == b)
            return false;
        if (!compatible_semantics.count(type))
            return false;
        if (std::find(allowed_protocols.begin(), allowed_protocols.end(), "transfer") == allowed_protocols.end())
            return false;
        return open || (parties.count(a) && parties.count(b));
    }

    PartyPair PeeringBook::ordered(const ChainId& a, const ChainId& b)
    {
        return a < b ? PartyPair{a, b} : PartyPair{b, a};
    }

    const PeeringAgreement& PeeringBook::establish(AgreementId id, std::set<ChainId> parties,
                                                   std::set<chain::SemanticType> semantics, Rational fee, bool open)
    {
        if (!open && parties.size() < 2)
            fail(Errc::InvalidArgument, "agreement " + id.str() + " needs two distinct parties");
        if (fee < 0)
            fail(Errc::InvalidArgument, "negative peering fee");
        if (m_agreements.count(id))
            fail(Errc::DuplicateAgreement, "agreement id " + id.str() + " already used");
        for (const auto& [_, existing] : m_agreements)
            if (existing.active && existing.open == open && existing.parties == parties)
                fail(Errc::DuplicateAgreement, "active agreement " + existing.id.str() + " has the same parties");

        PeeringAgreement agreement;
        agreement.id = id;
        agreement.parties = std::move(parties);
        agreement.open = open;
        agreement.compatible_semantics = std::move(semantics);
        agreement.fee_per_transfer = std::move(fee);
        return m_agreements.emplace(id, std::move(agreement)).first->second;
    }

    void PeeringBook::revoke(const AgreementId& id)
    {
        auto it = m_agreements.find(id);
        if (it == m_agreements.end())
            fail(Errc::NotFound, "no agreement " + id.str());
        it->second.active = false;
    }

    const PeeringAgreement* PeeringBook::find_cover(const ChainId& a, const ChainId& b,
                                                    std::initializer_list<chain::SemanticType> types) const
    {
        for (const auto& [_, agreement] : m_agreements)
        {
            bool all = true;
            for (auto t : types)
                all = all && agreement.covers(a, b, t);
            if (all)
                return &agreement;
        }
        return nullptr;
    }

    const PeeringAgreement* PeeringBook::find(const AgreementId& id) const
    {
        auto it = m_agreements.find(id);
        return it == m_agreements.end() ? nullptr : &it->second;
    }

    std::vector<ChainId> PeeringBook::peers_of(const ChainId& chain, const std::set<ChainId>& known_chains) const
    {
        std::set<ChainId> peers;
        for (const auto& [_, agreement] : m_agreements)
        {
            if (!agreement.active)
                continue;
            if (agreement.open)
            {
                peers.insert(known_chains.begin(), known_chains.end());
            }
            else if (agreement.parties.count(chain))
            {
                peers.insert(agreement.parties.begin(), agreement.parties.end());
            }
        }
        peers.erase(chain);
        return {peers.begin(), peers.end()};
    }

    void PeeringBook::settle(const AgreementId& id, const ChainId& a, const ChainId& b)
    {
        const PeeringAgreement* agreement = find(id);
        if (!agreement)
            fail(Errc::NotFound, "no agreement " + id.str());
        m_tallies[ordered(a, b)] += agreement->fee_per_transfer;
    }

    Rational PeeringBook::tally(const ChainId& a, const ChainId& b) const
    {
        auto it = m_tallies.find(ordered(a, b));
        return it == m_tallies.end() ? Rational(0) : it->second;
    }
}
