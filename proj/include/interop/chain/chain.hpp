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
#include "interop/common/rational.hpp"
#include "interop/common/types.hpp"
#include "interop/identity/cross_id.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace interop::chain
{
    enum class SemanticType
    {
        Payments,
        AssetRegistry,
        GenericRecord,
    };

    std::string_view to_string(SemanticType type);
    std::optional<SemanticType> parse_semantic_type(std::string_view text);

    enum class Directionality
    {
        Uni,
        Bi,
    };

    /// What a ledger record is for. Data and Asset come from applications,
    /// the rest are written by gateways while mediating transfers.
    enum class RecordKind
    {
        Data,
        Asset,
        Lock,
        Unlock,
        AssetRecord,
        Attestation,
    };

    std::string_view to_string(RecordKind kind);

    struct PermissionRegime
    {
        bool node_permissioned = false;
        bool consensus_permissioned = false;
        bool user_write_permissioned = false;
        bool user_read_permissioned = false;

        // Node permissioning subsumes consensus permissioning.
        bool valid() const { return !node_permissioned || consensus_permissioned; }
        bool node_anonymous() const { return !node_permissioned; }
    };

    /// Canonical record submitted to a chain.
    struct TransferUnit
    {
        Digest payload_digest{};
        Directionality directionality = Directionality::Uni;
        std::optional<AppId> intended_peer;
        SemanticType semantic_type = SemanticType::GenericRecord;
        std::string idempotency_key;
        RecordKind kind = RecordKind::Data;
        std::string subject;

        /// Directionality/peer consistency and non-empty key.
        bool valid() const;
    };

    TransferUnit make_unit(std::string_view payload, SemanticType type, std::string idempotency_key,
                           std::optional<AppId> intended_peer = std::nullopt);

    struct VoidMark
    {
        TransferId transfer;
        Tick tick = 0;

        bool operator==(const VoidMark&) const = default;
    };

    using LedgerMark = std::variant<identity::AuthoritativePointer, VoidMark>;

    std::string describe(const LedgerMark& mark);

    struct LedgerEntry
    {
        LocalRef local_ref;
        TransferUnit unit;
        Tick submitted_tick = 0;
        Tick confirmed_tick = 0;
        std::set<NodeId> confirming_nodes;
    };

    /// Append-only record sequence plus at-most-once marks per entry.
    class Ledger
    {
    public:
        void append(LedgerEntry entry);

        /// Throws InvalidArgument if the ref is unknown or already marked.
        void mark(const LocalRef& ref, LedgerMark mark);

        const std::vector<LedgerEntry>& entries() const noexcept { return m_entries; }
        const std::map<LocalRef, LedgerMark>& marks() const noexcept { return m_marks; }

        const LedgerEntry* find(const LocalRef& ref) const;
        const LedgerMark* mark_of(const LocalRef& ref) const;
        std::size_t size() const noexcept { return m_entries.size(); }

        /// Stable text rendering of entries (one line each), marks excluded.
        std::string dump_entries() const;
        std::string dump_marks() const;

    private:
        std::vector<LedgerEntry> m_entries;
        std::map<LocalRef, std::size_t> m_index;
        std::map<LocalRef, LedgerMark> m_marks;
    };

    struct Credential
    {
        AppId app;
        std::string token;
    };

    struct Rights
    {
        bool read = false;
        bool write = false;
    };

    /// Opaque capability tokens per application.
    class AccessTable
    {
    public:
        void grant(const AppId& app, std::string token, Rights rights);
        void revoke(const AppId& app);

        bool can_read(const Credential& cred) const;
        bool can_write(const Credential& cred) const;
        /// Privilege held by an application regardless of the token presented.
        bool app_can_read(const AppId& app) const;

    private:
        struct Row
        {
            std::string token;
            Rights rights;
        };
        std::map<AppId, Row> m_rows;
    };

    struct ChainConfig
    {
        ChainId id;
        std::string path;
        std::size_t node_count = 4;
        std::vector<GatewayId> gateways;
        PermissionRegime regime;
        Rational confirm_quorum_fraction{2, 3};
        Tick confirm_latency_ticks = 3;
        SemanticType semantic_type = SemanticType::GenericRecord;
    };

    struct PendingReceipt
    {
        ChainId chain_id;
        LocalRef local_ref;
        std::string idempotency_key;
        bool already_confirmed = false;
    };

    struct LedgerView
    {
        LedgerEntry entry;
        std::optional<LedgerMark> mark;
    };

    struct ChainStatus
    {
        std::int64_t live_node_count = 0;
        std::int64_t pending_count = 0;
        double mean_confirm_latency = 0.0;
        bool reachable = false;
    };

    struct NodeState
    {
        NodeId id;
        bool live = true;
    };

    /// A blockchain autonomous system: nodes, ledger, permission regime and
    /// a quorum/latency consensus abstraction. Reachability is owned by the
    /// network layer and passed in where it matters.
    class Chain
    {
    public:
        explicit Chain(ChainConfig config);

        const ChainId& id() const noexcept { return m_config.id; }
        const std::string& path() const noexcept { return m_config.path; }
        const ChainConfig& config() const noexcept { return m_config; }
        const PermissionRegime& regime() const noexcept { return m_config.regime; }
        SemanticType semantic_type() const noexcept { return m_config.semantic_type; }
        Tick confirm_latency() const noexcept { return m_config.confirm_latency_ticks; }
        const Rational& quorum_fraction() const noexcept { return m_config.confirm_quorum_fraction; }

        bool has_gateway(const GatewayId& gw) const;

        PendingReceipt submit(const TransferUnit& unit, const Credential& credential, Tick now);
        PendingReceipt submit_as_gateway(const GatewayId& gateway, const TransferUnit& unit, Tick now);

        std::vector<LedgerEntry> advance_consensus(Tick now);

        LedgerView read_ledger(const LocalRef& ref, const Credential& credential) const;
        LedgerView read_ledger(const identity::CrossId& id, const Credential& credential) const;
        /// Read path for gateways acting under a delegation; no credential check.
        LedgerView read_mediated(const identity::CrossId& id) const;

        ChainStatus probe_status(bool reachable) const;

        const std::vector<NodeState>& nodes() const noexcept { return m_nodes; }
        void set_node_live(const NodeId& node, bool live);
        std::int64_t live_node_count() const;
        std::int64_t quorum_size() const;
        bool quorum_met() const { return live_node_count() >= quorum_size(); }

        std::size_t pending_count() const noexcept { return m_pending.size(); }
        /// Earliest tick a pending unit becomes old enough, if any.
        std::optional<Tick> earliest_due() const;
        bool is_pending(const LocalRef& ref) const;
        std::optional<LocalRef> find_by_key(const std::string& key) const;

        const Ledger& ledger() const noexcept { return m_ledger; }
        void mark(const LocalRef& ref, LedgerMark mark) { m_ledger.mark(ref, std::move(mark)); }

        identity::MaskTable& masks() noexcept { return m_masks; }
        const identity::MaskTable& masks() const noexcept { return m_masks; }
        AccessTable& access() noexcept { return m_access; }
        const AccessTable& access() const noexcept { return m_access; }

        void lock(const LocalRef& ref, const TransferId& owner);
        bool release_lock(const LocalRef& ref, const TransferId& owner);
        std::optional<TransferId> lock_holder(const LocalRef& ref) const;

    private:
        struct Pending
        {
            LocalRef ref;
            TransferUnit unit;
            Tick submitted = 0;
        };

        PendingReceipt enqueue(const TransferUnit& unit, Tick now);
        LedgerView view_of(const LocalRef& ref) const;

        ChainConfig m_config;
        std::vector<NodeState> m_nodes;
        std::vector<Pending> m_pending;
        Ledger m_ledger;
        identity::MaskTable m_masks;
        AccessTable m_access;
        std::map<std::string, LocalRef> m_by_key;
        std::map<LocalRef, TransferId> m_locks;
        std::uint64_t m_next_ref = 0;
    };
}
