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
#include "interop/gateway/attestation.hpp"
#include "interop/gateway/peering.hpp"
#include "interop/identity/resolver.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace interop::gateway
{
    /// Topology-free statement of what can be reached behind a chain.
    struct ReachabilityAdvertisement
    {
        ChainId chain_id;
        GatewayId issuer;
        std::vector<std::string> reachable_assets;
        std::vector<GatewayId> endpoints;
        std::vector<ChainId> published_to;
        Tick issued_tick = 0;

        std::string transcript() const;
    };

    /// Returns nothing for a dead gateway.
    std::optional<ReachabilityAdvertisement> advertise(const Gateway& gw, const identity::Resolver& resolver,
                                                       const GatewayRegistry& registry,
                                                       std::vector<ChainId> peered_chains, Tick now);

    struct DelegationGrant
    {
        GrantId grant_id;
        AppId grantor;
        AppId grantee;
        identity::CrossId target;
        Tick issued_tick = 0;
        Tick expiry_tick = 0;
    };

    /// Throws InvalidArgument unless expiry_tick > issued_tick.
    DelegationGrant issue_grant(GrantId id, AppId grantor, AppId grantee, identity::CrossId target, Tick issued,
                                Tick expiry);

    struct MediatedView
    {
        chain::LedgerView view;
        VouchAttestation attestation;
    };

    /// Read on behalf of a grantee. The grantor's privilege is checked now,
    /// not at grant time.
    MediatedView mediated_read(const Gateway& gw, const DelegationGrant& grant, const identity::CrossId& id,
                               const AppId& requester, const chain::Chain& home, const identity::Resolver& resolver,
                               Tick now);

    /// Idempotency key of the ledger record that stores an attestation.
    std::string attestation_record_key(const VouchAttestation& att);

    /// All live gateways of the chain sign; the attestation is then queued
    /// on the chain's own ledger. Throws NotConfirmed, InsufficientGateways.
    VouchAttestation vouch(chain::Chain& chain, const identity::CrossId& id, std::uint32_t threshold_k,
                           const GatewayRegistry& registry, Tick now);

    /// floor(n/2)+1
    std::uint32_t default_threshold(std::size_t gateway_count);
}
