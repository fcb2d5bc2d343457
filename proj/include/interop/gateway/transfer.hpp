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
#include "interop/gateway/peering.hpp"
#include "interop/identity/resolver.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace interop::gateway
{
    // Gateway-mediated asset move between two chains:
    //
    //   INITIATED     source gateway locks the asset entry and records a lock
    //   SOURCE_LOCKED destination gateway records the asset on its chain
    //   DEST_RECORDED destination gateways vouch, the attestation is recorded
    //   VOUCHED       source gateways verify it and vouch for the lock
    //   FINALIZED     source attestation recorded, source entry marked, resolver rebound
    //
    // ABORTED is reachable from every non-final state: past the deadline, on a
    // vouching failure, or when a paired gateway has no live replacement.

    enum class TransferState
    {
        Initiated,
        SourceLocked,
        DestRecorded,
        Vouched,
        Finalized,
        Aborted,
    };

    std::string_view to_string(TransferState state);
    bool is_terminal(TransferState state);
    /// Allowed edges of the state machine.
    bool is_allowed_transition(TransferState from, TransferState to);

    struct TransitionRecord
    {
        Tick tick = 0;
        TransferState from = TransferState::Initiated;
        TransferState to = TransferState::Initiated;
        GatewayId actor;
        std::string note;
    };

    struct CrossDomainTransfer
    {
        TransferId transfer_id;
        identity::CrossId asset;
        ChainId source_chain;
        ChainId dest_chain;
        AppId beneficiary;
        TransferState state = TransferState::Initiated;
        Tick initiated_tick = 0;
        Tick deadline_tick = 0;
        std::optional<VouchAttestation> source_attestation;
        std::optional<VouchAttestation> dest_attestation;
        std::pair<GatewayId, GatewayId> paired_gateways;
        std::uint32_t source_threshold = 1;
        std::uint32_t dest_threshold = 1;
        AgreementId agreement;

        LocalRef source_ref;
        bool lock_held = false;
        std::optional<LocalRef> lock_record;
        std::optional<identity::CrossId> lock_id;
        std::optional<LocalRef> dest_record;
        bool dest_attestation_recorded = false;
        bool source_attestation_recorded = false;
        std::string abort_reason;
        std::vector<TransitionRecord> transitions;

        bool terminal() const { return is_terminal(state); }
    };

    enum class TransferEventKind
    {
        Start,
        LockConfirmed,
        RecordRequest,
        DestRecordConfirmed,
        DestAttestationRecorded,
        DestAttestation,
        SourceAttestationRecorded,
        GatewayDown,
        Retransmit,
        Deadline,
    };

    std::string_view to_string(TransferEventKind kind);

    struct TransferEvent
    {
        TransferEventKind kind = TransferEventKind::Start;
        std::optional<LocalRef> ref;
        std::optional<VouchAttestation> attestation;
        std::optional<GatewayId> gateway;
    };

    /// What the state machine needs from its surroundings. The simulator
    /// implements it; tests can implement it directly.
    class TransferHost
    {
    public:
        virtual ~TransferHost() = default;

        virtual Tick now() const = 0;
        virtual chain::Chain& chain(const ChainId& id) = 0;
        virtual GatewayRegistry& gateways() = 0;
        virtual identity::Resolver& resolver() = 0;
        virtual PeeringBook& peering() = 0;
        virtual Rng& rng() = 0;

        /// Gateway writes to its own chain. When the record with this key
        /// confirms, `on_confirm` (with ref filled in) is fed back.
        virtual void submit_record(const GatewayId& via, const chain::TransferUnit& unit, const TransferId& owner,
                                   TransferEvent on_confirm) = 0;
        /// Feed `on_confirm` back when a record with `key` confirms on `chain`.
        virtual void watch(const ChainId& chain, const std::string& key, const TransferId& owner,
                           TransferEvent on_confirm) = 0;
        /// Inter-chain gateway message.
        virtual void send(const GatewayId& from, const GatewayId& to, const TransferId& owner, TransferEvent ev) = 0;
        virtual void arm(const TransferId& owner, Tick at, TransferEvent ev) = 0;

        virtual void on_transition(const CrossDomainTransfer& transfer, const TransitionRecord& record) = 0;
        virtual void on_note(const CrossDomainTransfer& transfer, const std::string& note) = 0;
    };

    struct InitiateRequest
    {
        TransferId id;
        identity::CrossId asset;
        ChainId source;
        ChainId dest;
        AppId beneficiary;
        Tick deadline_ticks = 50;
        std::optional<std::uint32_t> source_threshold;
        std::optional<std::uint32_t> dest_threshold;
        /// Explicit pairing; lowest live id on each side otherwise.
        std::optional<std::pair<GatewayId, GatewayId>> pairing;
    };

    /// Throws NoPeering, NotAuthoritativeHere, NoLiveGateways, NotFound.
    CrossDomainTransfer initiate_transfer(const InitiateRequest& request, TransferHost& host);

    /// Advances a non-terminal transfer. Never throws for protocol failures;
    /// they end in ABORTED.
    CrossDomainTransfer step_transfer(CrossDomainTransfer transfer, const TransferEvent& event, TransferHost& host);

    struct TransferOptions
    {
        Tick retransmit_interval = 4;
    };

    /// Owns all transfers and routes events to them.
    class TransferEngine
    {
    public:
        explicit TransferEngine(TransferHost& host, TransferOptions options = {})
            : m_host(host)
            , m_options(options)
        {
        }

        const CrossDomainTransfer& initiate(const InitiateRequest& request);
        void handle(const TransferId& id, const TransferEvent& event);
        void gateway_down(const GatewayId& gateway);

        const CrossDomainTransfer* find(const TransferId& id) const;
        const std::map<TransferId, CrossDomainTransfer>& all() const noexcept { return m_transfers; }

    private:
        void late_event(CrossDomainTransfer& transfer, const TransferEvent& event);

        TransferHost& m_host;
        TransferOptions m_options;
        std::map<TransferId, CrossDomainTransfer> m_transfers;
    };
}
