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
#include "interop/common/types.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace interop::survivor
{
    // Application-level reliability layer. Each sub-transaction is sent to
    // its first candidate chain; on timeout the same bytes go to the next
    // candidate without cancelling the earlier submission. Duplicates that
    // result are reported, never reconciled.

    enum class AppState
    {
        Pending,
        Confirmed,
        Failed,
    };

    enum class AttemptOutcome
    {
        InFlight,
        Confirmed,
        TimedOut,
        Abandoned,
    };

    std::string_view to_string(AppState state);
    std::string_view to_string(AttemptOutcome outcome);

    struct Attempt
    {
        ChainId chain;
        AttemptOutcome outcome = AttemptOutcome::InFlight;
        Tick started = 0;
        Tick ended = 0;
    };

    struct Confirmation
    {
        ChainId chain;
        LocalRef local_ref;
        Tick tick = 0;
    };

    struct SubTxn
    {
        chain::TransferUnit unit;
        std::vector<ChainId> candidate_chains;
        std::optional<Tick> per_chain_timeout;
        std::vector<Attempt> attempts;
        std::vector<Confirmation> confirmations;

        bool confirmed() const { return !confirmations.empty(); }
    };

    struct AppTransaction
    {
        AppTxnId app_txn_id;
        AppId app;
        std::vector<SubTxn> sub_txns;
        AppState state = AppState::Pending;
        Tick started_tick = 0;
        Tick finished_tick = 0;
    };

    /// What the application sees. Which chain confirmed is deliberately absent.
    struct AppOutcome
    {
        AppTxnId app_txn_id;
        AppState state = AppState::Pending;
        Tick tick = 0;

        bool operator==(const AppOutcome&) const = default;
    };

    struct Duplicate
    {
        std::size_t sub_index = 0;
        ChainId chain;
        LocalRef local_ref;
        Tick confirmed_tick = 0;
    };

    struct DuplicateReport
    {
        AppTxnId app_txn_id;
        std::vector<Duplicate> duplicates;
    };

    struct ScannedEntry
    {
        LocalRef local_ref;
        Tick confirmed_tick = 0;
    };

    class SurvivorHost
    {
    public:
        virtual ~SurvivorHost() = default;

        virtual Tick now() const = 0;
        virtual Tick confirm_latency(const ChainId& chain) const = 0;
        /// Fire-and-forget; confirmations come back through on_confirmed.
        virtual void submit(const AppId& app, const ChainId& chain, const chain::TransferUnit& unit) = 0;
        virtual void arm_timer(const AppTxnId& txn, std::size_t sub, std::size_t attempt, Tick at) = 0;
        /// Audit access: confirmed entries on `chain` carrying `key`.
        virtual std::vector<ScannedEntry> scan(const ChainId& chain, const std::string& key) const = 0;
        virtual void on_attempt(const AppTransaction&, std::size_t /*sub*/, const Attempt&) {}
        virtual void on_outcome(const AppOutcome&) {}
    };

    class Survivor
    {
    public:
        explicit Survivor(SurvivorHost& host) : m_host(host) {}

        /// Throws EmptyCandidates, InvalidArgument (duplicate id or key).
        AppTxnId submit_app_txn(AppTransaction txn);

        void on_confirmed(const ChainId& chain, const std::string& key, const LocalRef& ref);
        void on_timer(const AppTxnId& txn, std::size_t sub, std::size_t attempt);

        AppOutcome outcome(const AppTxnId& txn) const;
        /// Full record including attempts; audit use only.
        const AppTransaction& audit_record(const AppTxnId& txn) const;
        const std::map<AppTxnId, AppTransaction>& all() const noexcept { return m_txns; }

        DuplicateReport poll_duplicates(const AppTxnId& txn) const;

        static Tick default_timeout(Tick confirm_latency) { return 3 * confirm_latency; }

    private:
        void start_attempt(AppTransaction& txn, std::size_t sub, std::size_t candidate);
        void finish(AppTransaction& txn, AppState state);
        AppTransaction& txn_mut(const AppTxnId& id);

        SurvivorHost& m_host;
        std::map<AppTxnId, AppTransaction> m_txns;
        std::map<std::string, std::pair<AppTxnId, std::size_t>> m_by_key;
    };
}
