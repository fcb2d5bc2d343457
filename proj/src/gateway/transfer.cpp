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

#include "interop/gateway/transfer.hpp"
#include "interop/common/error.hpp"
#include "interop/gateway/services.hpp"

namespace interop::gateway
{
    std::string_view to_string(TransferState state)
    {
        switch (state)
        {
        case TransferState::Initiated: return "INITIATED";
        case TransferState::SourceLocked: return "SOURCE_LOCKED";
        case TransferState::DestRecorded: return "DEST_RECORDED";
        case TransferState::Vouched: return "VOUCHED";
        case TransferState::Finalized: return "FINALIZED";
        case TransferState::Aborted: return "ABORTED";
        }
        return "?";
    }

    std::string_view to_string(TransferEventKind kind)
    {
        switch (kind)
        {
        case TransferEventKind::Start: return "start";
        case TransferEventKind::LockConfirmed: return "lock-confirmed";
        case TransferEventKind::RecordRequest: return "record-request";
        case TransferEventKind::DestRecordConfirmed: return "dest-record-confirmed";
        case TransferEventKind::DestAttestationRecorded: return "dest-attestation-recorded";
        case TransferEventKind::DestAttestation: return "dest-attestation";
        case TransferEventKind::SourceAttestationRecorded: return "source-attestation-recorded";
        case TransferEventKind::GatewayDown: return "gateway-down";
        case TransferEventKind::Retransmit: return "retransmit";
        case TransferEventKind::Deadline: return "deadline";
        }
        return "?";
    }

    bool is_terminal(TransferState state)
    {
        return state == TransferState::Finalized || state == TransferState::Aborted;
    }

    bool is_allowed_transition(TransferState from, TransferState to)
    {
        if (is_terminal(from))
            return false;
        if (to == TransferState::Aborted)
            return true;
        return static_cast<int>(to) == static_cast<int>(from) + 1;
    }

    namespace
    {
        std::string key_for(const CrossDomainTransfer& t, std::string_view suffix)
        {
            return "xfer/" + t.transfer_id.str() + "/" + std::string(suffix);
        }

        void move_to(CrossDomainTransfer& t, TransferState to, const GatewayId& actor, TransferHost& host,
                     std::string note = {})
        {
            TransitionRecord rec{host.now(), t.state, to, actor, std::move(note)};
            t.state = to;
            t.transitions.push_back(rec);
            host.on_transition(t, rec);
        }

        void abort(CrossDomainTransfer& t, const std::string& reason, TransferHost& host)
        {
            if (t.terminal())
                return;
            t.abort_reason = reason;

            auto& source = host.chain(t.source_chain);
            if (t.lock_held)
            {
                source.release_lock(t.source_ref, t.transfer_id);
                t.lock_held = false;
                auto live = host.gateways().live_gateways(t.source_chain);
                if (!live.empty())
                {
                    chain::TransferUnit unlock;
                    unlock.payload_digest = sha256(t.transfer_id.str() + "/unlock");
                    unlock.semantic_type = source.semantic_type();
                    unlock.idempotency_key = key_for(t, "unlock");
                    unlock.kind = chain::RecordKind::Unlock;
                    unlock.subject = t.asset.str();
                    source.submit_as_gateway(live.front(), unlock, host.now());
                }
            }

            auto& dest = host.chain(t.dest_chain);
            if (t.dest_record && !dest.ledger().mark_of(*t.dest_record))
                dest.mark(*t.dest_record, chain::VoidMark{t.transfer_id, host.now()});

            move_to(t, TransferState::Aborted, t.paired_gateways.first, host, reason);
        }

        void submit_lock(CrossDomainTransfer& t, TransferHost& host)
        {
            auto& source = host.chain(t.source_chain);
            chain::TransferUnit lock;
            lock.payload_digest = sha256(t.transfer_id.str() + "/lock/" + t.asset.str());
            lock.semantic_type = source.semantic_type();
            lock.idempotency_key = key_for(t, "lock");
            lock.kind = chain::RecordKind::Lock;
            lock.subject = t.asset.str();
            host.submit_record(t.paired_gateways.first, lock, t.transfer_id,
                               TransferEvent{TransferEventKind::LockConfirmed, {}, {}, {}});
        }

        // Re-issues whatever outbound action the current phase is waiting on.
        // Receivers are idempotent, so repeats are harmless.
        void redrive(CrossDomainTransfer& t, TransferHost& host)
        {
            const auto& [sg, dg] = t.paired_gateways;
            switch (t.state)
            {
            case TransferState::Initiated:
                if (!host.chain(t.source_chain).find_by_key(key_for(t, "lock")))
                    submit_lock(t, host);
                break;
            case TransferState::SourceLocked:
                host.send(sg, dg, t.transfer_id, TransferEvent{TransferEventKind::RecordRequest, {}, {}, dg});
                break;
            case TransferState::DestRecorded:
                if (t.dest_attestation_recorded)
                    host.send(dg, sg, t.transfer_id,
                              TransferEvent{TransferEventKind::DestAttestation, {}, t.dest_attestation, sg});
                break;
            default:
                break;
            }
        }

        void repair(CrossDomainTransfer& t, const GatewayId& down, TransferHost& host)
        {
            auto& [sg, dg] = t.paired_gateways;
            bool source_side = sg == down;
            bool dest_side = dg == down;
            if (!source_side && !dest_side)
                return;

            const ChainId& side = source_side ? t.source_chain : t.dest_chain;
            auto live = host.gateways().live_gateways(side);
            if (live.empty())
            {
                abort(t, "no live gateway on " + side.str(), host);
                return;
            }
            GatewayId& slot = source_side ? sg : dg;
            host.on_note(t, "repair " + slot.str() + "->" + live.front().str());
            slot = live.front();
            redrive(t, host);
        }

        void on_dest_record(CrossDomainTransfer& t, const LocalRef& ref, TransferHost& host)
        {
            auto& dest = host.chain(t.dest_chain);
            t.dest_record = ref;
            dest.masks().bind(t.asset, ref);
            move_to(t, TransferState::DestRecorded, t.paired_gateways.second, host);

            try
            {
                t.dest_attestation = vouch(dest, t.asset, t.dest_threshold, host.gateways(), host.now());
            }
            catch (const Error& e)
            {
                abort(t, "destination vouch failed: " + std::string(to_string(e.code())), host);
                return;
            }
            host.watch(t.dest_chain, attestation_record_key(*t.dest_attestation), t.transfer_id,
                       TransferEvent{TransferEventKind::DestAttestationRecorded, {}, {}, {}});
        }

        void on_dest_attestation(CrossDomainTransfer& t, const VouchAttestation& att, TransferHost& host)
        {
            auto claim = att.claim();
            if (!verify_attestation(att, host.gateways()) || !claim || claim->chain_id != t.dest_chain ||
                claim->id != t.asset)
            {
                abort(t, "invalid destination attestation", host);
                return;
            }

            auto& source = host.chain(t.source_chain);
            try
            {
                t.source_attestation = vouch(source, *t.lock_id, t.source_threshold, host.gateways(), host.now());
            }
            catch (const Error& e)
            {
                abort(t, "source vouch failed: " + std::string(to_string(e.code())), host);
                return;
            }
            host.watch(t.source_chain, attestation_record_key(*t.source_attestation), t.transfer_id,
                       TransferEvent{TransferEventKind::SourceAttestationRecorded, {}, {}, {}});
            move_to(t, TransferState::Vouched, t.paired_gateways.first, host);
        }

        void finalize(CrossDomainTransfer& t, TransferHost& host)
        {
            t.source_attestation_recorded = true;
            identity::AuthoritativePointer ptr;
            try
            {
                ptr = host.resolver().rebind_authority(t.asset, t.source_chain, t.dest_chain,
                                                       {*t.source_attestation, *t.dest_attestation}, host.gateways(),
                                                       host.now());
            }
            catch (const Error& e)
            {
                abort(t, "rebind refused: " + std::string(to_string(e.code())), host);
                return;
            }

            auto& source = host.chain(t.source_chain);
            source.mark(t.source_ref, ptr);
            source.release_lock(t.source_ref, t.transfer_id);
            t.lock_held = false;
            host.peering().settle(t.agreement, t.source_chain, t.dest_chain);
            move_to(t, TransferState::Finalized, t.paired_gateways.first, host);
        }
    }

    CrossDomainTransfer initiate_transfer(const InitiateRequest& req, TransferHost& host)
    {
        auto& source = host.chain(req.source);
        auto& dest = host.chain(req.dest);

        const PeeringAgreement* agreement =
            host.peering().find_cover(req.source, req.dest, {source.semantic_type(), dest.semantic_type()});
        if (!agreement)
            fail(Errc::NoPeering, "no active agreement covers " + req.source.str() + "->" + req.dest.str());

        if (host.resolver().home(req.asset) != req.source)
            fail(Errc::NotAuthoritativeHere, req.asset.str() + " is not homed at " + req.source.str());
        auto source_ref = source.masks().find_ref(req.asset);
        if (!source_ref || !source.ledger().find(*source_ref))
            fail(Errc::NotAuthoritativeHere, req.asset.str() + " has no entry on " + req.source.str());

        auto& registry = host.gateways();
        auto src_live = registry.live_gateways(req.source);
        auto dst_live = registry.live_gateways(req.dest);
        if (src_live.empty() || dst_live.empty())
            fail(Errc::NoLiveGateways, "both sides need a live gateway");

        CrossDomainTransfer t;
        t.transfer_id = req.id;
        t.asset = req.asset;
        t.source_chain = req.source;
        t.dest_chain = req.dest;
        t.beneficiary = req.beneficiary;
        t.initiated_tick = host.now();
        t.deadline_tick = host.now() + req.deadline_ticks;
        t.agreement = agreement->id;
        t.source_ref = *source_ref;
        t.source_threshold = req.source_threshold.value_or(default_threshold(registry.gateways_of(req.source).size()));
        t.dest_threshold = req.dest_threshold.value_or(default_threshold(registry.gateways_of(req.dest).size()));
        if (t.source_threshold == 0 || t.dest_threshold == 0)
            fail(Errc::InvalidArgument, "attestation threshold must be at least 1");

        if (req.pairing)
        {
            const auto& [sg, dg] = *req.pairing;
            const Gateway* s = registry.find(sg);
            const Gateway* d = registry.find(dg);
            if (!s || !d || !s->live || !d->live || s->home_chain != req.source || d->home_chain != req.dest)
                fail(Errc::NoLiveGateways, "requested pairing is not a live cross-chain pair");
            t.paired_gateways = *req.pairing;
        }
        else
        {
            t.paired_gateways = {src_live.front(), dst_live.front()};
        }

        t.transitions.push_back({host.now(), TransferState::Initiated, TransferState::Initiated,
                                 t.paired_gateways.first, "created"});
        return t;
    }

    CrossDomainTransfer step_transfer(CrossDomainTransfer t, const TransferEvent& ev, TransferHost& host)
    {
        if (t.terminal())
            return t;

        if (ev.kind == TransferEventKind::DestRecordConfirmed && ev.ref)
            t.dest_record = *ev.ref;

        if (host.now() >= t.deadline_tick)
        {
            abort(t, "deadline passed", host);
            return t;
        }

        switch (ev.kind)
        {
        case TransferEventKind::Deadline:
            break;

        case TransferEventKind::GatewayDown:
            if (ev.gateway)
                repair(t, *ev.gateway, host);
            break;

        case TransferEventKind::Retransmit:
            redrive(t, host);
            break;

        case TransferEventKind::Start:
            if (t.state != TransferState::Initiated || t.lock_held)
                break;
            try
            {
                host.chain(t.source_chain).lock(t.source_ref, t.transfer_id);
            }
            catch (const Error& e)
            {
                abort(t, "lock failed: " + std::string(to_string(e.code())), host);
                break;
            }
            t.lock_held = true;
            submit_lock(t, host);
            break;

        case TransferEventKind::LockConfirmed:
            if (t.state != TransferState::Initiated || !ev.ref)
                break;
            t.lock_record = *ev.ref;
            t.lock_id = identity::mint_cross_id(host.chain(t.source_chain), *ev.ref, host.rng(), host.resolver(),
                                                host.now());
            move_to(t, TransferState::SourceLocked, t.paired_gateways.first, host);
            redrive(t, host);
            break;

        case TransferEventKind::RecordRequest:
            if (t.state != TransferState::SourceLocked)
                break;
            {
                auto& dest = host.chain(t.dest_chain);
                std::string key = key_for(t, "dest");
                if (dest.find_by_key(key))
                    break;
                chain::TransferUnit record;
                record.payload_digest = sha256(t.transfer_id.str() + "/dest/" + t.asset.str());
                record.directionality = chain::Directionality::Bi;
                record.intended_peer = t.beneficiary;
                record.semantic_type = dest.semantic_type();
                record.idempotency_key = key;
                record.kind = chain::RecordKind::AssetRecord;
                record.subject = t.asset.str();
                GatewayId via = ev.gateway.value_or(t.paired_gateways.second);
                host.submit_record(via, record, t.transfer_id,
                                   TransferEvent{TransferEventKind::DestRecordConfirmed, {}, {}, {}});
            }
            break;

        case TransferEventKind::DestRecordConfirmed:
            if (t.state == TransferState::SourceLocked && ev.ref)
                on_dest_record(t, *ev.ref, host);
            break;

        case TransferEventKind::DestAttestationRecorded:
            if (t.state != TransferState::DestRecorded)
                break;
            t.dest_attestation_recorded = true;
            redrive(t, host);
            break;

        case TransferEventKind::DestAttestation:
            if (t.state == TransferState::DestRecorded && ev.attestation)
                on_dest_attestation(t, *ev.attestation, host);
            break;

        case TransferEventKind::SourceAttestationRecorded:
            if (t.state == TransferState::Vouched)
                finalize(t, host);
            break;
        }
        return t;
    }

    const CrossDomainTransfer& TransferEngine::initiate(const InitiateRequest& request)
    {
        if (m_transfers.count(request.id))
            fail(Errc::InvalidArgument, "duplicate transfer id " + request.id.str());
        CrossDomainTransfer t = initiate_transfer(request, m_host);
        auto [it, _] = m_transfers.emplace(request.id, std::move(t));
        const auto& stored = it->second;
        m_host.on_transition(stored, stored.transitions.back());

        m_host.arm(request.id, m_host.now(), TransferEvent{TransferEventKind::Start, {}, {}, {}});
        m_host.arm(request.id, stored.deadline_tick, TransferEvent{TransferEventKind::Deadline, {}, {}, {}});
        if (m_options.retransmit_interval > 0)
            m_host.arm(request.id, m_host.now() + m_options.retransmit_interval,
                       TransferEvent{TransferEventKind::Retransmit, {}, {}, {}});
        return stored;
    }

    void TransferEngine::handle(const TransferId& id, const TransferEvent& event)
    {
        auto it = m_transfers.find(id);
        if (it == m_transfers.end())
            return;
        if (it->second.terminal())
        {
            late_event(it->second, event);
            return;
        }
        it->second = step_transfer(std::move(it->second), event, m_host);

        if (event.kind == TransferEventKind::Retransmit && !it->second.terminal() && m_options.retransmit_interval > 0)
            m_host.arm(id, m_host.now() + m_options.retransmit_interval, event);
    }

    void TransferEngine::late_event(CrossDomainTransfer& t, const TransferEvent& event)
    {
        // A destination record that confirms after an abort is voided on arrival.
        if (t.state == TransferState::Aborted && event.kind == TransferEventKind::DestRecordConfirmed && event.ref)
        {
            auto& dest = m_host.chain(t.dest_chain);
            t.dest_record = *event.ref;
            if (!dest.ledger().mark_of(*event.ref))
            {
                dest.mark(*event.ref, chain::VoidMark{t.transfer_id, m_host.now()});
                m_host.on_note(t, "void late destination record " + event.ref->str());
            }
        }
    }

    void TransferEngine::gateway_down(const GatewayId& gateway)
    {
        for (auto& [id, t] : m_transfers)
        {
            if (t.terminal())
                continue;
            if (t.paired_gateways.first == gateway || t.paired_gateways.second == gateway)
                handle(id, TransferEvent{TransferEventKind::GatewayDown, {}, {}, gateway});
        }
    }

    const CrossDomainTransfer* TransferEngine::find(const TransferId& id) const
    {
        auto it = m_transfers.find(id);
        return it == m_transfers.end() ? nullptr : &it->second;
    }
}
