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

#include "interop/common/digest.hpp"
#include "interop/common/types.hpp"
#include "interop/identity/cross_id.hpp"

#include <map>
#include <optional>
#include <span>
#include <vector>

namespace interop::gateway
{
    using SigningKey = std::array<std::uint8_t, 32>;

    /// A non-anonymous boundary node representing exactly one chain.
    struct Gateway
    {
        GatewayId gateway_id;
        ChainId home_chain;
        SigningKey signing_key{};
        bool live = true;
    };

    /// Gateway directory: id -> home chain and key. Anyone holding it can
    /// verify attestations.
    class GatewayRegistry
    {
    public:
        void add(Gateway gw);

        const Gateway* find(const GatewayId& id) const;
        const Gateway& at(const GatewayId& id) const;

        /// Throws UnknownTarget for unknown ids.
        void set_live(const GatewayId& id, bool live);

        /// Live gateways of a chain in ascending id order.
        std::vector<GatewayId> live_gateways(const ChainId& chain) const;
        std::vector<GatewayId> gateways_of(const ChainId& chain) const;

        const std::map<GatewayId, Gateway>& all() const noexcept { return m_gateways; }

    private:
        std::map<GatewayId, Gateway> m_gateways;
    };

    /// What a set of gateways vouches for.
    struct AttestationClaim
    {
        ChainId chain_id;
        identity::CrossId id;
        bool confirmed = true;
        Digest ledger_proof{};

        Bytes encode() const;
        /// Strict: succeeds only if re-encoding yields exactly the input.
        static std::optional<AttestationClaim> decode(std::span<const std::uint8_t> bytes);

        bool operator==(const AttestationClaim&) const = default;
    };

    struct Signature
    {
        GatewayId signer;
        Digest value{};

        bool operator==(const Signature&) const = default;
    };

    Signature sign(const Gateway& gw, std::span<const std::uint8_t> claim_bytes);

    /// k-of-n gateway-signed claim. Signatures cover the exact claim bytes.
    struct VouchAttestation
    {
        Bytes claim_bytes;
        std::vector<Signature> signatures;
        std::uint32_t threshold_k = 1;
        Tick issued_tick = 0;

        std::optional<AttestationClaim> claim() const { return AttestationClaim::decode(claim_bytes); }

        /// u32 len + claim bytes, u32 count, (len-prefixed signer, 32-byte sig)*,
        /// u32 threshold, u64 issued tick.
        Bytes serialize() const;
        static std::optional<VouchAttestation> deserialize(std::span<const std::uint8_t> bytes);

        bool operator==(const VouchAttestation&) const = default;
    };

    /// Pure function of the attestation and the registry; never throws.
    bool verify_attestation(const VouchAttestation& att, const GatewayRegistry& registry);
    bool verify_attestation(std::span<const std::uint8_t> serialized, const GatewayRegistry& registry);

    /// Number of distinct registered signers from the claimed chain.
    std::size_t distinct_signers(const VouchAttestation& att, const GatewayRegistry& registry);
}
