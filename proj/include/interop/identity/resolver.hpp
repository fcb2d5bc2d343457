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
#include "interop/common/rng.hpp"
#include "interop/gateway/attestation.hpp"
#include "interop/identity/cross_id.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace interop::identity
{
    /// Answer to a lookup: the current home chain and its live gateways.
    /// Deliberately carries no local refs or node ids.
    struct Resolution
    {
        CrossId id;
        ChainId home;
        std::vector<GatewayId> gateways;

        std::string transcript() const;
    };

    /// Source-side attestation first, destination-side second.
    using AuthorityProof = std::pair<gateway::VouchAttestation, gateway::VouchAttestation>;

    /// Global identifier resolution service. One home per id at all times;
    /// authority moves only through rebind_authority.
    class Resolver
    {
    public:
        void register_chain(const std::string& path, const ChainId& chain);
        std::optional<ChainId> chain_for_path(const std::string& path) const;

        void register_id(const CrossId& id, const ChainId& home, Tick now);
        bool contains(const CrossId& id) const { return m_history.count(id) != 0; }

        /// Throws NotFound.
        const ChainId& home(const CrossId& id) const;
        const std::vector<AuthoritativePointer>& history(const CrossId& id) const;

        /// Throws NotFound, or Unreachable when every gateway of the home is down.
        Resolution resolve(const CrossId& id, const gateway::GatewayRegistry& registry) const;

        /// Atomically moves authority from -> to. Throws StaleAuthority, InvalidProof.
        AuthoritativePointer rebind_authority(const CrossId& asset, const ChainId& from, const ChainId& to,
                                              const AuthorityProof& proof, const gateway::GatewayRegistry& registry,
                                              Tick now);

        std::vector<CrossId> ids_homed_at(const ChainId& chain) const;
        std::size_t size() const noexcept { return m_history.size(); }

        /// One line per id: "<id> home=<chain> history=<chain>@<tick>>..."
        std::string dump() const;

        /// Single-authority and forward-chain checks. Empty means healthy.
        std::vector<std::string> audit() const;

    private:
        std::map<std::string, ChainId> m_paths;
        std::map<CrossId, std::vector<AuthoritativePointer>> m_history;
    };

    /// Mints (or returns the existing) cross-domain id masking a confirmed entry.
    CrossId mint_cross_id(chain::Chain& chain, const LocalRef& ref, Rng& rng, Resolver& resolver, Tick now);
}
