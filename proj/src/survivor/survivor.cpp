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

#include "interop/survivor/survivor.hpp"
#include "interop/common/error.hpp"

#include <algorithm>

namespace interop::survivor
{
    std::string_view to_string(AppState state)
    {
        switch (state)
        {
        case AppState::Pending: return "PENDING";
        case AppState::Confirmed: return "CONFIRMED";
        case AppState::Failed: return "FAILED";
        }
        return "?";
    }

    std::string_view to_string(AttemptOutcome outcome)
    {
        switch (outcome)
        {
        case AttemptOutcome::InFlight: return "in-flight";
        case AttemptOutcome::Confirmed: return "confirmed";
        case AttemptOutcome::TimedOut: return "timeout";
        case AttemptOutcome::Abandoned: return "abandoned";
        }
        return "?";
    }

    AppTxnId Survivor::submit_app_txn(AppTransaction txn)
    {
        if (m_txns.count(txn.app_txn_id))
            fail(Errc::InvalidArgument, "duplicate app transaction " + txn.app_txn_id.str());
        if (txn.sub_txns.empty())
            fail(Errc::EmptyCandidates, txn.app_txn_id.str() + " has no sub-transactions");
        for (const auto& sub : txn.sub_txns)
        {
            if (sub.candidate_chains.empty())
                fail(Errc::EmptyCandidates, txn.app_txn_id.str() + " has a sub-transaction with no candidates");
            if (m_by_key.count(sub.unit.idempotency_key))
                fail(Errc::InvalidArgument, "idempotency key reused: " + sub.unit.idempotency_key);
        }

        AppTxnId id = txn.app_txn_id;
        txn.state = AppState::Pending;
        txn.started_tick = m_host.now();
        for (std::size_t i = 0; i < txn.sub_txns.size(); ++i)
        {
            auto& sub = txn.sub_txns[i];
            sub.attempts.clear();
            sub.confirmations.clear();
            m_by_key[sub.unit.idempotency_key] = {id, i};
        }
        auto& stored = m_txns.emplace(id, std::move(txn)).first->second;
        for (std::size_t i = 0; i < stored.sub_txns.size(); ++i)
            start_attempt(stored, i, 0);
        return id;
    }

    void Survivor::start_attempt(AppTransaction& txn, std::size_t sub_index, std::size_t candidate)
    {
        auto& sub = txn.sub_txns[sub_index];
        const ChainId& chain = sub.candidate_chains[candidate];
        sub.attempts.push_back(Attempt{chain, AttemptOutcome::InFlight, m_host.now(), 0});
        m_host.on_attempt(txn, sub_index, sub.attempts.back());

        Tick timeout = sub.per_chain_timeout.value_or(default_timeout(m_host.confirm_latency(chain)));
        m_host.arm_timer(txn.app_txn_id, sub_index, candidate, m_host.now() + timeout);
        m_host.submit(txn.app, chain, sub.unit);
    }

    void Survivor::on_confirmed(const ChainId& chain, const std::string& key, const LocalRef& ref)
    {
        auto k = m_by_key.find(key);
        if (k == m_by_key.end())
            return;
        auto& txn = txn_mut(k->second.first);
        auto& sub = txn.sub_txns[k->second.second];

        for (const auto& c : sub.confirmations)
            if (c.chain == chain)
                return;
        bool first = sub.confirmations.empty();
        sub.confirmations.push_back({chain, ref, m_host.now()});
        if (!first || txn.state != AppState::Pending)
            return;

        for (auto& a : sub.attempts)
        {
            if (a.chain == chain)
            {
                a.outcome = AttemptOutcome::Confirmed;
                a.ended = m_host.now();
                m_host.on_attempt(txn, k->second.second, a);
            }
            else if (a.outcome == AttemptOutcome::InFlight)
            {
                a.outcome = AttemptOutcome::Abandoned;
                a.ended = m_host.now();
                m_host.on_attempt(txn, k->second.second, a);
            }
        }

        if (std::all_of(txn.sub_txns.begin(), txn.sub_txns.end(), [](const SubTxn& s) { return s.confirmed(); }))
            finish(txn, AppState::Confirmed);
    }

    void Survivor::on_timer(const AppTxnId& id, std::size_t sub_index, std::size_t attempt)
    {
        auto& txn = txn_mut(id);
        if (txn.state != AppState::Pending || sub_index >= txn.sub_txns.size())
            return;
        auto& sub = txn.sub_txns[sub_index];
        if (sub.confirmed() || attempt + 1 != sub.attempts.size())
            return;

        auto& a = sub.attempts[attempt];
        a.outcome = AttemptOutcome::TimedOut;
        a.ended = m_host.now();
        m_host.on_attempt(txn, sub_index, a);

        if (attempt + 1 < sub.candidate_chains.size())
            start_attempt(txn, sub_index, attempt + 1);
        else
            finish(txn, AppState::Failed);
    }

    void Survivor::finish(AppTransaction& txn, AppState state)
    {
        txn.state = state;
        txn.finished_tick = m_host.now();
        m_host.on_outcome(AppOutcome{txn.app_txn_id, state, txn.finished_tick});
    }

    AppOutcome Survivor::outcome(const AppTxnId& id) const
    {
        const auto& txn = audit_record(id);
        return AppOutcome{txn.app_txn_id, txn.state, txn.state == AppState::Pending ? Tick{0} : txn.finished_tick};
    }

    const AppTransaction& Survivor::audit_record(const AppTxnId& id) const
    {
        auto it = m_txns.find(id);
        if (it == m_txns.end())
            fail(Errc::NotFound, "no app transaction " + id.str());
        return it->second;
    }

    AppTransaction& Survivor::txn_mut(const AppTxnId& id)
    {
        return const_cast<AppTransaction&>(audit_record(id));
    }

    DuplicateReport Survivor::poll_duplicates(const AppTxnId& id) const
    {
        const auto& txn = audit_record(id);
        DuplicateReport report{id, {}};
        for (std::size_t i = 0; i < txn.sub_txns.size(); ++i)
        {
            const auto& sub = txn.sub_txns[i];
            std::vector<Duplicate> found;
            for (const auto& chain : sub.candidate_chains)
                for (const auto& e : m_host.scan(chain, sub.unit.idempotency_key))
                    found.push_back({i, chain, e.local_ref, e.confirmed_tick});
            if (found.empty())
                continue;

            // The confirmation the application accepted is the original; with
            // none accepted, the earliest one is.
            auto primary = found.begin();
            if (sub.confirmed())
            {
                primary = std::find_if(found.begin(), found.end(), [&](const Duplicate& d) {
                    return d.chain == sub.confirmations.front().chain;
                });
            }
            else
            {
                primary = std::min_element(found.begin(), found.end(), [](const Duplicate& a, const Duplicate& b) {
                    return a.confirmed_tick < b.confirmed_tick;
                });
            }
            for (auto it = found.begin(); it != found.end(); ++it)
                if (it != primary)
                    report.duplicates.push_back(*it);
        }
        return report;
    }
}
