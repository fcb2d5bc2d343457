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

#include "interop/chain/chain.hpp"
#include "interop/common/rational.hpp"
#include "interop/common/types.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace interop::gateway
{
    /// Bilateral (2 parties), multilateral (>2) or an open exchange that
    /// admits every chain.
    struct PeeringAgreement
    {
        AgreementId id;
        std::set<ChainId> parties;
        bool open = false;
        std::set<chain::SemanticType> compatible_semantics;
        std::vector<std::string> allowed_protocols{"transfer"};
        Rational fee_per_transfer{0};
        bool active = true;

        bool covers(const ChainId& a, const ChainId& b, chain::SemanticType type) const;
    };

    using PartyPair = std::pair<ChainId, ChainId>;

    class PeeringBook
    {
    public:
        /// Throws InvalidArgument (fewer than 2 parties and not open) or
        /// DuplicateAgreement (same active party set).
        const PeeringAgreement& establish(AgreementId id, std::set<ChainId> parties,
                                          std::set<chain::SemanticType> semantics, Rational fee, bool open = false);

        /// In-flight transfers keep their agreement; new initiations are refused.
        void revoke(const AgreementId& id);

        /// Lowest-id active agreement covering the pair and every listed type.
        const PeeringAgreement* find_cover(const ChainId& a, const ChainId& b,
                                           std::initializer_list<chain::SemanticType> types) const;

        const PeeringAgreement* find(const AgreementId& id) const;
        std::vector<ChainId> peers_of(const ChainId& chain, const std::set<ChainId>& known_chains) const;

        void settle(const AgreementId& id, const ChainId& a, const ChainId& b);
        Rational tally(const ChainId& a, const ChainId& b) const;
        const std::map<PartyPair, Rational>& tallies() const noexcept { return m_tallies; }

        const std::map<AgreementId, PeeringAgreement>& agreements() const noexcept { return m_agreements; }

    private:
        static PartyPair ordered(const ChainId& a, const ChainId& b);

        std::map<AgreementId, PeeringAgreement> m_agreements;
        std::map<PartyPair, Rational> m_tallies;
    };
}
