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

#include "interop/gateway/attestation.hpp"
#include "interop/common/error.hpp"

#include <set>

namespace interop::gateway
{
    void GatewayRegistry::add(Gateway gw)
    {
        if (gw.gateway_id.empty() || gw.home_chain.empty())
            fail(Errc::InvalidArgument, "gateway needs an id and a home chain");
        if (m_gateways.count(gw.gateway_id))
            fail(Errc::InvalidArgument, "duplicate gateway id " + gw.gateway_id.str());
        m_gateways.emplace(gw.gateway_id, std::move(gw));
    }

    const Gateway* GatewayRegistry::find(const GatewayId& id) const
    {
        auto it = m_gateways.find(id);
        return it == m_gateways.end() ? nullptr : &it->second;
    }

    const Gateway& GatewayRegistry::at(const GatewayId& id) const
    {
        if (const auto* gw = find(id))
            return *gw;
        fail(Errc::UnknownTarget, "unknown gateway " + id.str());
    }

    void GatewayRegistry::set_live(const GatewayId& id, bool live)
    {
        auto it = m_gateways.find(id);
        if (it == m_gateways.end())
            fail(Errc::UnknownTarget, "unknown gateway " + id.str());
        it->second.live = live;
    }

    std::vector<GatewayId> GatewayRegistry::live_gateways(const ChainId& chain) const
    {
        std::vector<GatewayId> out;
        for (const auto& [id, gw] : m_gateways)
            if (gw.home_chain == chain && gw.live)
                out.push_back(id);
        return out;
    }

    std::vector<GatewayId> GatewayRegistry::gateways_of(const ChainId& chain) const
    {
        std::vector<GatewayId> out;
        for (const auto& [id, gw] : m_gateways)
            if (gw.home_chain == chain)
                out.push_back(id);
        return out;
    }

    Bytes AttestationClaim::encode() const
    {
        Bytes out;
        put_str(out, chain_id.str());
        put_str(out, id.chain_path);
        put_raw(out, id.opaque_suffix);
        put_u8(out, confirmed ? 1 : 0);
        put_raw(out, ledger_proof);
        return out;
    }

    std::optional<AttestationClaim> AttestationClaim::decode(std::span<const std::uint8_t> bytes)
    {
        Reader r(bytes);
        AttestationClaim c;
        std::string chain;
        std::uint8_t confirmed = 0;
        if (!r.str(chain) || !r.str(c.id.chain_path) || !r.raw(c.id.opaque_suffix) || !r.u8(confirmed) ||
            !r.raw(c.ledger_proof) || !r.done())
            return std::nullopt;
        if (confirmed > 1)
            return std::nullopt;
        c.chain_id = ChainId(chain);
        c.confirmed = confirmed == 1;
        if (c.encode() != Bytes(bytes.begin(), bytes.end()))
            return std::nullopt;
        return c;
    }

    Signature sign(const Gateway& gw, std::span<const std::uint8_t> claim_bytes)
    {
        return Signature{gw.gateway_id, keyed_digest(gw.signing_key, claim_bytes)};
    }

    Bytes VouchAttestation::serialize() const
    {
        Bytes out;
        put_u32(out, static_cast<std::uint32_t>(claim_bytes.size()));
        put_raw(out, claim_bytes);
        put_u32(out, static_cast<std::uint32_t>(signatures.size()));
        for (const auto& s : signatures)
        {
            put_str(out, s.signer.str());
            put_raw(out, s.value);
        }
        put_u32(out, threshold_k);
        put_u64(out, static_cast<std::uint64_t>(issued_tick));
        return out;
    }

    std::optional<VouchAttestation> VouchAttestation::deserialize(std::span<const std::uint8_t> bytes)
    {
        Reader r(bytes);
        VouchAttestation att;
        std::uint32_t claim_len = 0;
        if (!r.u32(claim_len))
            return std::nullopt;
        att.claim_bytes.resize(claim_len);
        if (!r.raw(att.claim_bytes))
            return std::nullopt;
        std::uint32_t count = 0;
        if (!r.u32(count))
            return std::nullopt;
        for (std::uint32_t i = 0; i < count; ++i)
        {
            std::string signer;
            Signature s;
            if (!r.str(signer) || !r.raw(s.value))
                return std::nullopt;
            s.signer = GatewayId(signer);
            att.signatures.push_back(std::move(s));
        }
        std::uint64_t issued = 0;
        if (!r.u32(att.threshold_k) || !r.u64(issued) || !r.done())
            return std::nullopt;
        att.issued_tick = static_cast<Tick>(issued);
        return att;
    }

    std::size_t distinct_signers(const VouchAttestation& att, const GatewayRegistry& registry)
    {
        auto claim = att.claim();
        if (!claim)
            return 0;
        std::set<GatewayId> seen;
        for (const auto& s : att.signatures)
        {
            const Gateway* gw = registry.find(s.signer);
            if (gw && gw->home_chain == claim->chain_id)
                seen.insert(s.signer);
        }
        return seen.size();
    }

    bool verify_attestation(const VouchAttestation& att, const GatewayRegistry& registry)
    {
        if (att.threshold_k == 0)
            return false;
        auto claim = att.claim();
        if (!claim)
            return false;

        std::set<GatewayId> signers;
        for (const auto& s : att.signatures)
        {
            const Gateway* gw = registry.find(s.signer);
            if (!gw || gw->home_chain != claim->chain_id)
                return false;
            if (keyed_digest(gw->signing_key, att.claim_bytes) != s.value)
                return false;
            signers.insert(s.signer);
        }
        return signers.size() >= att.threshold_k;
    }

    bool verify_attestation(std::span<const std::uint8_t> serialized, const GatewayRegistry& registry)
    {
        auto att = VouchAttestation::deserialize(serialized);
        return att && verify_attestation(*att, registry);
    }
}
