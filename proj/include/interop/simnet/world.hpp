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
#include "interop/gateway/attestation.hpp"
#include "interop/gateway/peering.hpp"
#include "interop/gateway/services.hpp"
#include "interop/gateway/transfer.hpp"
#include "interop/identity/resolver.hpp"
#include "interop/scenario/config.hpp"
#include "interop/simnet/kernel.hpp"
#include "interop/simnet/network.hpp"
#include "interop/survivor/survivor.hpp"
#include "interop/valuenet/valuenet.hpp"

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace interop::simnet
{
    /// Verdict of one global invariant over a run.
    struct AuditResult
    {
        std::string name;
        std::uint64_t checks = 0;
        std::vector<std::string> violations;

        bool passed() const { return violations.empty(); }
    };

    struct ReadOutcome
    {
        std::string id;
        Tick tick = 0;
        bool ok = false;
        std::string error;
    };

    struct LookupOutcome
    {
        std::string asset;
        Tick tick = 0;
        std::optional<ChainId> home;
        std::string error;
    };

    struct ProbeOutcome
    {
        ChainId chain;
        Tick tick = 0;
        std::optional<chain::ChainStatus> status;
        std::string error;
    };

    struct PaymentOutcome
    {
        PathId id;
        std::string state;
        std::string error;
        Tick tick = 0;
    };

    /// The assembled system: chains, gateways, resolver, peering, connectors
    /// and the survivability layer, driven by one kernel.
    class World final
        : public gateway::TransferHost
        , public survivor::SurvivorHost
    {
    public:
        /// Throws ScenarioInvalid when the configuration cannot be assembled.
        explicit World(scenario::ScenarioConfig config);

        /// Schedules the workload and runs to the horizon or quiescence.
        /// Audits are final afterwards.
        void run();

        /// Throws UnknownTarget.
        void inject(const FaultSpec& fault);

        // TransferHost / SurvivorHost
        Tick now() const override { return m_kernel.now(); }
        chain::Chain& chain(const ChainId& id) override;
        gateway::GatewayRegistry& gateways() override { return m_registry; }
        identity::Resolver& resolver() override { return m_resolver; }
        gateway::PeeringBook& peering() override { return m_peering; }
        Rng& rng() override { return m_kernel.rng(); }
        void submit_record(const GatewayId& via, const chain::TransferUnit& unit, const TransferId& owner,
                           gateway::TransferEvent on_confirm) override;
        void watch(const ChainId& chain, const std::string& key, const TransferId& owner,
                   gateway::TransferEvent on_confirm) override;
        void send(const GatewayId& from, const GatewayId& to, const TransferId& owner,
                  gateway::TransferEvent ev) override;
        void arm(const TransferId& owner, Tick at, gateway::TransferEvent ev) override;
        void on_transition(const gateway::CrossDomainTransfer& transfer,
                           const gateway::TransitionRecord& record) override;
        void on_note(const gateway::CrossDomainTransfer& transfer, const std::string& note) override;

        Tick confirm_latency(const ChainId& chain) const override;
        void submit(const AppId& app, const ChainId& chain, const chain::TransferUnit& unit) override;
        void arm_timer(const AppTxnId& txn, std::size_t sub, std::size_t attempt, Tick at) override;
        std::vector<survivor::ScannedEntry> scan(const ChainId& chain, const std::string& key) const override;
        void on_attempt(const survivor::AppTransaction& txn, std::size_t sub, const survivor::Attempt& a) override;
        void on_outcome(const survivor::AppOutcome& outcome) override;

        const scenario::ScenarioConfig& config() const noexcept { return m_config; }
        const Kernel& kernel() const noexcept { return m_kernel; }
        const EventLog& log() const noexcept { return m_kernel.log(); }
        const Network& network() const noexcept { return m_network; }
        const chain::Chain& chain(const ChainId& id) const;
        const std::map<ChainId, std::unique_ptr<chain::Chain>>& chains() const noexcept { return m_chains; }
        const identity::Resolver& resolver() const noexcept { return m_resolver; }
        const gateway::GatewayRegistry& gateways() const noexcept { return m_registry; }
        const gateway::PeeringBook& peering() const noexcept { return m_peering; }
        const valuenet::ValueNetwork& value_network() const noexcept { return m_value; }
        const survivor::Survivor& survivor() const noexcept { return m_survivor; }
        const gateway::TransferEngine& transfers() const noexcept { return m_transfers; }

        std::optional<identity::CrossId> asset_id(const std::string& name) const;
        const std::map<TransferId, std::string>& refused_transfers() const noexcept { return m_refused; }
        const std::map<PathId, PaymentOutcome>& payments() const noexcept { return m_payments; }
        const std::vector<ReadOutcome>& reads() const noexcept { return m_reads; }
        const std::vector<LookupOutcome>& lookups() const noexcept { return m_lookups; }
        const std::vector<ProbeOutcome>& probes() const noexcept { return m_probes; }

        const std::vector<AuditResult>& audits() const noexcept { return m_audits; }
        const AuditResult* audit(const std::string& name) const;
        bool audits_passed() const;

        /// Resolve through the resolver and log the transcript. Throws
        /// NotFound or Unreachable.
        identity::Resolution resolve(const identity::CrossId& id);

    private:
        struct Watcher
        {
            TransferId owner;
            gateway::TransferEvent event;
        };

        void build();
        void schedule_workload();
        void schedule_advertising(Tick at);

        void on_tick(Tick now);
        std::optional<Tick> next_wakeup(Tick after) const;
        void log_marks(const gateway::CrossDomainTransfer& t, gateway::TransferState to);
        void dispatch(const chain::Chain& chain, const chain::LedgerEntry& entry);
        void fire(const Watcher& w, const LocalRef& ref);

        /// Wraps a kernel action so protocol errors become log records and
        /// unexpected ones count against the internal audit.
        std::function<void()> guarded(std::string what, std::function<void()> action);
        void deliver(const std::string& from, const std::string& to, std::string subject, std::string detail,
                     std::function<bool()> receiver_up, std::function<void()> action);

        void heal(const std::string& fault_id);
        void client_submit(const AppId& app, const ChainId& chain, const chain::TransferUnit& unit);
        bool cut_by_active_fault(const std::string& a, const std::string& b) const;
        void run_payment_start(const scenario::PaymentSpec& p);
        void run_read(const scenario::ReadSpec& r);
        void run_lookup(const scenario::LookupSpec& l);
        void run_probe(const scenario::ProbeSpec& p);
        void advertise_all();

        AuditResult& audit_mut(const std::string& name);
        void check(const std::string& name, bool ok, const std::string& what);
        void audit_event();
        void audit_ledgers();
        void finalize_audits();

        scenario::ScenarioConfig m_config;
        Kernel m_kernel;
        Network m_network;
        std::map<ChainId, std::unique_ptr<chain::Chain>> m_chains;
        gateway::GatewayRegistry m_registry;
        identity::Resolver m_resolver;
        gateway::PeeringBook m_peering;
        valuenet::ValueNetwork m_value;
        survivor::Survivor m_survivor;
        gateway::TransferEngine m_transfers;

        std::map<std::pair<ChainId, std::string>, std::vector<Watcher>> m_watchers;
        std::map<std::string, std::string> m_asset_keys;
        std::map<std::string, identity::CrossId> m_assets;
        std::set<std::string> m_app_keys;
        std::map<GrantId, gateway::DelegationGrant> m_grants;

        struct CrashRecord
        {
            ChainId chain;
            std::vector<NodeId> nodes;
            std::optional<GatewayId> gateway;
            bool partition = false;
        };
        std::map<std::string, CrashRecord> m_faults;
        std::map<std::string, FaultSpec> m_partitions;

        std::map<TransferId, std::string> m_refused;
        std::map<PathId, PaymentOutcome> m_payments;
        std::vector<ReadOutcome> m_reads;
        std::vector<LookupOutcome> m_lookups;
        std::vector<ProbeOutcome> m_probes;

        std::map<ChainId, std::string> m_ledger_dumps;
        std::vector<AuditResult> m_audits;
        bool m_ran = false;
    };
}
