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

#include "interop/chain/chain.hpp"
#include "interop/common/error.hpp"

#include <algorithm>
#include <sstream>

namespace interop::chain
{
    std::string_view to_string(SemanticType type)
    {
        switch (type)
        {
        case SemanticType::Payments: return "payments";
        case SemanticType::AssetRegistry: return "asset-registry";
        case SemanticType::GenericRecord: return "generic-record";
        }
        return "?";
    }

    std::optional<SemanticType> parse_semantic_type(std::string_view text)
    {
        if (text == "payments")
            return SemanticType::Payments;
        if (text == "asset-registry")
            return SemanticType::AssetRegistry;
        if (text == "generic-record")
            return SemanticType::GenericRecord;
        return std::nullopt;
    }

    std::string_view to_string(RecordKind kind)
    {
        switch (kind)
        {
        case RecordKind::Data: return "data";
        case RecordKind::Asset: return "asset";
        case RecordKind::Lock: return "lock";
        case RecordKind::Unlock: return "unlock";
        case RecordKind::AssetRecord: return "asset-record";
        case RecordKind::Attestation: return "attestation";
        }
        return "?";
    }

    bool TransferUnit::valid() const
    {
        if (idempotency_key.empty())
            return false;
        if (directionality == Directionality::Bi)
            return intended_peer.has_value();
        return !intended_peer.has_value();
    }

    TransferUnit make_unit(std::string_view payload, SemanticType type, std::string idempotency_key,
                           std::optional<AppId> intended_peer)
    {
        TransferUnit unit;
        unit.payload_digest = sha256(payload);
        unit.directionality = intended_peer ? Directionality::Bi : Directionality::Uni;
        unit.intended_peer = std::move(intended_peer);
        unit.semantic_type = type;
        unit.idempotency_key = std::move(idempotency_key);
        return unit;
    }

    std::string describe(const LedgerMark& mark)
    {
        if (const auto* ptr = std::get_if<identity::AuthoritativePointer>(&mark))
        {
            std::string out = "points-to=" + ptr->home_chain.str() + " asset=" + ptr->asset_id.str();
            if (ptr->forwarded_from)
                out += " from=" + ptr->forwarded_from->str();
            out += " at=" + std::to_string(ptr->rebind_tick);
            return out;
        }
        const auto& v = std::get<VoidMark>(mark);
        return "void transfer=" + v.transfer.str() + " at=" + std::to_string(v.tick);
    }

    // Ledger

    void Ledger::append(LedgerEntry entry)
    {
        if (m_index.count(entry.local_ref))
            fail(Errc::InvalidArgument, "duplicate ledger ref " + entry.local_ref.str());
        m_index.emplace(entry.local_ref, m_entries.size());
        m_entries.push_back(std::move(entry));
    }

    void Ledger::mark(const LocalRef& ref, LedgerMark mark)
    {
        if (!m_index.count(ref))
            fail(Errc::NotFound, "cannot mark unknown ref " + ref.str());
        if (m_marks.count(ref))
            fail(Errc::InvalidArgument, "ref " + ref.str() + " already marked");
        m_marks.emplace(ref, std::move(mark));
    }

    const LedgerEntry* Ledger::find(const LocalRef& ref) const
    {
        auto it = m_index.find(ref);
        return it == m_index.end() ? nullptr : &m_entries[it->second];
    }

    const LedgerMark* Ledger::mark_of(const LocalRef& ref) const
    {
        auto it = m_marks.find(ref);
        return it == m_marks.end() ? nullptr : &it->second;
    }

    std::string Ledger::dump_entries() const
    {
        std::ostringstream os;
        for (const auto& e : m_entries)
        {
            os << e.local_ref << ' ' << to_string(e.unit.kind) << ' ' << e.unit.idempotency_key << ' '
               << to_hex(e.unit.payload_digest) << ' ' << to_string(e.unit.semantic_type) << ' '
               << (e.unit.directionality == Directionality::Bi ? "bi" : "uni") << ' '
               << (e.unit.intended_peer ? e.unit.intended_peer->str() : "-") << ' '
               << (e.unit.subject.empty() ? "-" : e.unit.subject) << ' ' << e.submitted_tick << ' '
               << e.confirmed_tick << ' ' << e.confirming_nodes.size() << '\n';
        }
        return os.str();
    }

    std::string Ledger::dump_marks() const
    {
        std::ostringstream os;
        for (const auto& [ref, mark] : m_marks)
            os << ref << ' ' << describe(mark) << '\n';
        return os.str();
    }

    // AccessTable

    void AccessTable::grant(const AppId& app, std::string token, Rights rights)
    {
        m_rows[app] = Row{std::move(token), rights};
    }

    void AccessTable::revoke(const AppId& app)
    {
        m_rows.erase(app);
    }

    bool AccessTable::can_read(const Credential& cred) const
    {
        auto it = m_rows.find(cred.app);
        return it != m_rows.end() && it->second.token == cred.token && it->second.rights.read;
    }

    bool AccessTable::can_write(const Credential& cred) const
    {
        auto it = m_rows.find(cred.app);
        return it != m_rows.end() && it->second.token == cred.token && it->second.rights.write;
    }

    bool AccessTable::app_can_read(const AppId& app) const
    {
        auto it = m_rows.find(app);
        return it != m_rows.end() && it->second.rights.read;
    }

    // Chain

    Chain::Chain(ChainConfig config)
        : m_config(std::move(config))
        , m_masks(m_config.id)
    {
        if (m_config.id.empty())
            fail(Errc::InvalidArgument, "chain id must not be empty");
        if (m_config.node_count == 0)
            fail(Errc::InvalidArgument, "chain " + m_config.id.str() + " needs at least one node");
        if (m_config.confirm_quorum_fraction <= 0 || m_config.confirm_quorum_fraction > 1)
            fail(Errc::InvalidArgument, "quorum fraction must lie in (0,1]");
        if (m_config.confirm_latency_ticks <= 0)
            fail(Errc::InvalidArgument, "confirmation latency must be positive");
        if (!m_config.regime.valid())
            fail(Errc::InvalidArgument, "node-permissioned chain must be consensus-permissioned");
        if (m_config.path.empty())
            m_config.path = m_config.id.str();

        m_nodes.reserve(m_config.node_count);
        for (std::size_t i = 0; i < m_config.node_count; ++i)
            m_nodes.push_back({NodeId(m_config.id.str() + ".node" + std::to_string(i)), true});
    }

    bool Chain::has_gateway(const GatewayId& gw) const
    {
        return std::find(m_config.gateways.begin(), m_config.gateways.end(), gw) != m_config.gateways.end();
    }

    PendingReceipt Chain::submit(const TransferUnit& unit, const Credential& credential, Tick now)
    {
        if (m_config.regime.user_write_permissioned && !m_access.can_write(credential))
            fail(Errc::PermissionDenied, credential.app.str() + " may not write to " + id().str());
        return enqueue(unit, now);
    }

    PendingReceipt Chain::submit_as_gateway(const GatewayId& gateway, const TransferUnit& unit, Tick now)
    {
        if (!has_gateway(gateway))
            fail(Errc::PermissionDenied, gateway.str() + " is not a gateway of " + id().str());
        return enqueue(unit, now);
    }

    PendingReceipt Chain::enqueue(const TransferUnit& unit, Tick now)
    {
        if (!unit.valid())
            fail(Errc::InvalidArgument, "malformed transfer unit '" + unit.idempotency_key + "'");
        if (unit.semantic_type != m_config.semantic_type)
            fail(Errc::SemanticMismatch, std::string(to_string(unit.semantic_type)) + " unit on " +
                                             std::string(to_string(m_config.semantic_type)) + " chain " + id().str());

        if (auto it = m_by_key.find(unit.idempotency_key); it != m_by_key.end())
            return PendingReceipt{id(), it->second, unit.idempotency_key, m_ledger.find(it->second) != nullptr};

        LocalRef ref(id().str() + ":L" + std::to_string(m_next_ref++));
        m_by_key.emplace(unit.idempotency_key, ref);
        m_pending.push_back({ref, unit, now});
        return PendingReceipt{id(), ref, unit.idempotency_key, false};
    }

    std::vector<LedgerEntry> Chain::advance_consensus(Tick now)
    {
        std::vector<LedgerEntry> confirmed;
        if (m_pending.empty() || !quorum_met())
            return confirmed;

        std::set<NodeId> voters;
        for (const auto& n : m_nodes)
            if (n.live)
                voters.insert(n.id);

        std::vector<Pending> still;
        for (auto& p : m_pending)
        {
            if (now - p.submitted >= m_config.confirm_latency_ticks)
            {
                LedgerEntry e{p.ref, std::move(p.unit), p.submitted, now, voters};
                m_ledger.append(e);
                confirmed.push_back(std::move(e));
            }
            else
            {
                still.push_back(std::move(p));
            }
        }
        m_pending = std::move(still);
        return confirmed;
    }

    LedgerView Chain::view_of(const LocalRef& ref) const
    {
        const LedgerEntry* entry = m_ledger.find(ref);
        if (!entry)
            fail(Errc::NotFound, "no confirmed entry " + ref.str() + " on " + id().str());
        LedgerView view{*entry, std::nullopt};
        if (const LedgerMark* m = m_ledger.mark_of(ref))
            view.mark = *m;
        return view;
    }

    LedgerView Chain::read_ledger(const LocalRef& ref, const Credential& credential) const
    {
        if (m_config.regime.user_read_permissioned && !m_access.can_read(credential))
            fail(Errc::PermissionDenied, credential.app.str() + " may not read " + id().str());
        return view_of(ref);
    }

    LedgerView Chain::read_ledger(const identity::CrossId& id, const Credential& credential) const
    {
        if (m_config.regime.user_read_permissioned && !m_access.can_read(credential))
            fail(Errc::PermissionDenied, credential.app.str() + " may not read " + this->id().str());
        return read_mediated(id);
    }

    LedgerView Chain::read_mediated(const identity::CrossId& id) const
    {
        auto ref = m_masks.find_ref(id);
        if (!ref)
            fail(Errc::NotFound, "identifier " + id.str() + " not held by " + this->id().str());
        return view_of(*ref);
    }

    ChainStatus Chain::probe_status(bool reachable) const
    {
        if (!reachable)
            fail(Errc::Unreachable, "chain " + id().str() + " is not reachable");

        ChainStatus status;
        status.reachable = true;
        status.pending_count = static_cast<std::int64_t>(m_pending.size());
        std::int64_t live = live_node_count();
        status.live_node_count = m_config.regime.node_anonymous() ? std::min(live, quorum_size()) : live;

        if (m_ledger.size() == 0)
        {
            status.mean_confirm_latency = static_cast<double>(m_config.confirm_latency_ticks);
        }
        else
        {
            double total = 0;
            for (const auto& e : m_ledger.entries())
                total += static_cast<double>(e.confirmed_tick - e.submitted_tick);
            status.mean_confirm_latency = total / static_cast<double>(m_ledger.size());
        }
        return status;
    }

    void Chain::set_node_live(const NodeId& node, bool live)
    {
        for (auto& n : m_nodes)
        {
            if (n.id == node)
            {
                n.live = live;
                return;
            }
        }
        fail(Errc::UnknownTarget, "no node " + node.str() + " on " + id().str());
    }

    std::int64_t Chain::live_node_count() const
    {
        return std::count_if(m_nodes.begin(), m_nodes.end(), [](const NodeState& n) { return n.live; });
    }

    std::int64_t Chain::quorum_size() const
    {
        return ceil_mul(m_config.confirm_quorum_fraction, static_cast<std::int64_t>(m_nodes.size()));
    }

    std::optional<Tick> Chain::earliest_due() const
    {
        std::optional<Tick> best;
        for (const auto& p : m_pending)
        {
            Tick due = p.submitted + m_config.confirm_latency_ticks;
            if (!best || due < *best)
                best = due;
        }
        return best;
    }

    bool Chain::is_pending(const LocalRef& ref) const
    {
        return std::any_of(m_pending.begin(), m_pending.end(), [&](const Pending& p) { return p.ref == ref; });
    }

    std::optional<LocalRef> Chain::find_by_key(const std::string& key) const
    {
        auto it = m_by_key.find(key);
        if (it == m_by_key.end())
            return std::nullopt;
        return it->second;
    }

    void Chain::lock(const LocalRef& ref, const TransferId& owner)
    {
        if (!m_ledger.find(ref))
            fail(Errc::NotFound, "cannot lock unknown ref " + ref.str());
        if (auto it = m_locks.find(ref); it != m_locks.end() && it->second != owner)
            fail(Errc::AssetLocked, ref.str() + " locked by " + it->second.str());
        m_locks[ref] = owner;
    }

    bool Chain::release_lock(const LocalRef& ref, const TransferId& owner)
    {
        auto it = m_locks.find(ref);
        if (it == m_locks.end() || it->second != owner)
            return false;
        m_locks.erase(it);
        return true;
    }

    std::optional<TransferId> Chain::lock_holder(const LocalRef& ref) const
    {
        auto it = m_locks.find(ref);
        if (it == m_locks.end())
            return std::nullopt;
        return it->second;
    }
}
