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

#include "interop/gateway/services.hpp"
#include "interop/common/error.hpp"

namespace interop::gateway
{
    namespace
    {
        Digest entry_proof(const chain::LedgerEntry& entry)
        {
            Bytes b;
            put_str(b, entry.local_ref.str());
            put_str(b, entry.unit.idempotency_key);
            put_raw(b, entry.unit.payload_digest);
            put_str(b, entry.unit.subject);
            put_u64(b, static_cast<std::uint64_t>(entry.confirmed_tick));
            return sha256(b);
        }

        template <class T>
        std::string join(const std::vector<T>& items)
        {
            std::string out;
            for (std::size_t i = 0; i < items.size(); ++i)
            {
                if (i)
                    out += ',';
                if constexpr (std::is_same_v<T, std::string>)
                    out += items[i];
                else
                    out += items[i].str();
            }
            return out;
        }
    }

    std::string ReachabilityAdvertisement::transcript() const
    {
        return "advert chain=" + chain_id.str() + " issuer=" + issuer.str() + " assets=" + join(reachable_assets) +
               " endpoints=" + join(endpoints) + " to=" + join(published_to) +
               " issued=" + std::to_string(issued_tick);
    }

    std::optional<ReachabilityAdvertisement> advertise(const Gateway& gw, const identity::Resolver& resolver,
                                                       const GatewayRegistry& registry,
                                                       std::vector<ChainId> peered_chains, Tick now)
    {
        if (!gw.live)
            return std::nullopt;
        ReachabilityAdvertisement ad;
        ad.chain_id = gw.home_chain;
        ad.issuer = gw.gateway_id;
        for (const auto& id : resolver.ids_homed_at(gw.home_chain))
            ad.reachable_assets.push_back(id.str());
        ad.endpoints = registry.live_gateways(gw.home_chain);
        ad.published_to = std::move(peered_chains);
        ad.issued_tick = now;
        return ad;
    }

    DelegationGrant issue_grant(GrantId id, AppId grantor, AppId grantee, identity::CrossId target, Tick issued,
                                Tick expiry)
    {
        if (expiry <= issued)
            fail(Errc::InvalidArgument, "grant " + id.str() + " expires before it is issued");
        return DelegationGrant{std::move(id), std::move(grantor), std::move(grantee), std::move(target), issued,
                               expiry};
    }

    MediatedView mediated_read(const Gateway& gw, const DelegationGrant& grant, const identity::CrossId& id,
                               const AppId& requester, const chain::Chain& home, const identity::Resolver& resolver,
                               Tick now)
    {
        if (!gw.live)
            fail(Errc::Unreachable, "gateway " + gw.gateway_id.str() + " is down");
        if (gw.home_chain != home.id())
            fail(Errc::InvalidArgument, "gateway " + gw.gateway_id.str() + " does not represent " + home.id().str());
        if (grant.grantee != requester || grant.target != id)
            fail(Errc::GrantMismatch, "grant " + grant.grant_id.str() + " does not cover this request");
        if (now >= grant.expiry_tick)
            fail(Errc::GrantExpired, "grant " + grant.grant_id.str() + " expired at " +
                                         std::to_string(grant.expiry_tick));
        if (resolver.home(id) != gw.home_chain)
            fail(Errc::NotFound, id.str() + " is not held by " + gw.home_chain.str());
        if (home.regime().user_read_permissioned && !home.access().app_can_read(grant.grantor))
            fail(Errc::PermissionDenied, "grantor " + grant.grantor.str() + " has no read privilege");

        MediatedView out{home.read_mediated(id), {}};
        AttestationClaim claim{home.id(), id, true, entry_proof(out.view.entry)};
        out.attestation.claim_bytes = claim.encode();
        out.attestation.signatures.push_back(sign(gw, out.attestation.claim_bytes));
        out.attestation.threshold_k = 1;
        out.attestation.issued_tick = now;
        return out;
    }

    std::string attestation_record_key(const VouchAttestation& att)
    {
        return "att/" + to_hex(sha256(att.claim_bytes)) + "/" + std::to_string(att.issued_tick);
    }

    VouchAttestation vouch(chain::Chain& chain, const identity::CrossId& id, std::uint32_t threshold_k,
                           const GatewayRegistry& registry, Tick now)
    {
        if (threshold_k == 0)
            fail(Errc::InvalidArgument, "threshold must be at least 1");
        auto ref = chain.masks().find_ref(id);
        const chain::LedgerEntry* entry = ref ? chain.ledger().find(*ref) : nullptr;
        if (!entry)
            fail(Errc::NotConfirmed, id.str() + " is not confirmed on " + chain.id().str());

        auto signers = registry.live_gateways(chain.id());
        if (signers.size() < threshold_k)
            fail(Errc::InsufficientGateways, std::to_string(signers.size()) + " live gateways on " +
                                                 chain.id().str() + ", need " + std::to_string(threshold_k));

        VouchAttestation att;
        att.claim_bytes = AttestationClaim{chain.id(), id, true, entry_proof(*entry)}.encode();
        for (const auto& gid : signers)
            att.signatures.push_back(sign(registry.at(gid), att.claim_bytes));
        att.threshold_k = threshold_k;
        att.issued_tick = now;

        chain::TransferUnit record;
        record.payload_digest = sha256(att.serialize());
        record.semantic_type = chain.semantic_type();
        record.idempotency_key = attestation_record_key(att);
        record.kind = chain::RecordKind::Attestation;
        record.subject = id.str();
        chain.submit_as_gateway(signers.front(), record, now);
        return att;
    }

    std::uint32_t default_threshold(std::size_t gateway_count)
    {
        return static_cast<std::uint32_t>(gateway_count / 2 + 1);
    }
}
