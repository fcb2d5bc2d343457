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
#include "interop/simnet/network.hpp"
#include "interop/valuenet/valuenet.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace interop::scenario
{
    struct NetworkSpec
    {
        Tick inter_chain_latency = 2;
        Tick intra_chain_latency = 1;
        Tick client_latency = 0;
        Tick latency_jitter = 0;
        Tick advertise_interval = 10;
        Tick retransmit_interval = 4;
        Tick reservation_ttl = 50;
    };

    struct ChainSpec
    {
        ChainId id;
        std::string path;
        std::size_t nodes = 4;
        std::size_t gateways = 3;
        Rational quorum{2, 3};
        Tick latency = 3;
        chain::SemanticType semantic = chain::SemanticType::GenericRecord;
        chain::PermissionRegime regime{true, true, true, true};
        std::optional<Denomination> denomination;
    };

    struct AccessSpec
    {
        ChainId chain;
        bool read = true;
        bool write = true;
    };

    struct AppSpec
    {
        AppId id;
        std::vector<AccessSpec> access;
    };

    /// An asset entry written by `owner` and masked once it confirms.
    struct AssetSpec
    {
        std::string name;
        ChainId chain;
        AppId owner;
        Tick at = 0;
    };

    struct PeeringSpec
    {
        AgreementId id;
        std::vector<ChainId> parties;
        bool open = false;
        std::vector<chain::SemanticType> semantics;
        Rational fee{0};
        Tick at = 0;
        std::optional<Tick> revoke_at;
    };

    struct ConnectorSpec
    {
        ConnectorId id;
        std::vector<ChainId> chains;
        std::map<Denomination, Rational> reserves;
        std::map<valuenet::DenomPair, Rational> rates;
    };

    struct SubTxnSpec
    {
        std::string payload;
        std::vector<ChainId> candidates;
        std::optional<Tick> timeout;
        std::optional<AppId> peer;
    };

    struct AppTxnSpec
    {
        AppTxnId id;
        AppId app;
        Tick start = 0;
        std::vector<SubTxnSpec> subs;
    };

    struct TransferSpec
    {
        TransferId id;
        std::string asset;
        ChainId source;
        ChainId dest;
        AppId beneficiary;
        Tick start = 0;
        Tick deadline = 50;
        std::optional<std::uint32_t> source_threshold;
        std::optional<std::uint32_t> dest_threshold;
        std::optional<std::pair<GatewayId, GatewayId>> pairing;
    };

    struct PaymentSpec
    {
        PathId id;
        ChainId sender;
        ChainId receiver;
        Rational amount;
        Denomination denom_in;
        Denomination denom_out;
        Tick start = 0;
        std::optional<Tick> settle_at;
        std::optional<Tick> release_at;
    };

    struct GrantSpec
    {
        GrantId id;
        AppId grantor;
        AppId grantee;
        std::string asset;
        Tick at = 0;
        Tick expiry = 0;
    };

    /// With a grant: mediated read by the grantee through a home gateway.
    /// Without: direct read using the requester's own credential.
    struct ReadSpec
    {
        std::string id;
        AppId requester;
        std::optional<GrantId> grant;
        std::string asset;
        Tick at = 0;
        std::optional<GatewayId> via;
    };

    struct ProbeSpec
    {
        ChainId chain;
        Tick at = 0;
    };

    struct LookupSpec
    {
        std::string asset;
        Tick at = 0;
    };

    struct ScenarioConfig
    {
        std::string name;
        std::uint64_t seed = 0;
        Tick horizon = 200;
        NetworkSpec network;
        std::vector<ChainSpec> chains;
        std::vector<AppSpec> apps;
        std::vector<AssetSpec> assets;
        std::vector<PeeringSpec> peering;
        std::vector<ConnectorSpec> connectors;
        std::vector<AppTxnSpec> app_txns;
        std::vector<TransferSpec> transfers;
        std::vector<PaymentSpec> payments;
        std::vector<GrantSpec> grants;
        std::vector<ReadSpec> reads;
        std::vector<ProbeSpec> probes;
        std::vector<LookupSpec> lookups;
        std::vector<simnet::FaultSpec> faults;
    };

    /// Node and gateway naming used everywhere ids are derived.
    std::string node_name(const ChainId& chain, std::size_t index);
    std::string gateway_name(const ChainId& chain, std::size_t index);
    /// Deterministic capability token of an application on a chain.
    std::string credential_token(const AppId& app, const ChainId& chain);
}
