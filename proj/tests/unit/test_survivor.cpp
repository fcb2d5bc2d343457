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

#include "interop/simnet/world.hpp"
#include "interop/survivor/survivor.hpp"

#include "expect.hpp"
#include "fixtures.hpp"

#include <doctest.h>

#include <functional>
#include <queue>

using namespace interop;
using namespace interop::survivor;
using interop::testing::error_of;

namespace
{
    // Scripted chains for the survivability layer alone. A chain that is
    // down until tick h holds submissions and confirms them at
    // max(submitted + latency, h + 1); a chain down forever never confirms.
    struct FakeChain
    {
        Tick latency = 3;
        std::optional<Tick> down_until;
        bool down_forever = false;
    };

    class FakeHost : public SurvivorHost
    {
    public:
        std::map<ChainId, FakeChain> chains;
        Survivor* survivor = nullptr;
        std::vector<AppOutcome> outcomes;

        Tick now() const override { return m_now; }
        Tick confirm_latency(const ChainId& chain) const override { return chains.at(chain).latency; }

        void submit(const AppId&, const ChainId& chain, const chain::TransferUnit& unit) override
        {
            const auto& c = chains.at(chain);
            if (c.down_forever)
                return;
            Tick at = m_now + c.latency;
            if (c.down_until)
                at = std::max(at, *c.down_until + 1);
            std::string key = unit.idempotency_key;
            at_tick(at, [this, chain, key] {
                LocalRef ref(chain.str() + ":L" + std::to_string(m_ledger[chain].size()));
                m_ledger[chain].push_back({key, {ref, m_now}});
                survivor->on_confirmed(chain, key, ref);
            });
        }

        void arm_timer(const AppTxnId& txn, std::size_t sub, std::size_t attempt, Tick at) override
        {
            at_tick(at, [this, txn, sub, attempt] { survivor->on_timer(txn, sub, attempt); });
        }

        std::vector<ScannedEntry> scan(const ChainId& chain, const std::string& key) const override
        {
            std::vector<ScannedEntry> out;
            auto it = m_ledger.find(chain);
            if (it != m_ledger.end())
                for (const auto& [k, e] : it->second)
                    if (k == key)
                        out.push_back(e);
            return out;
        }

        void on_outcome(const AppOutcome& o) override { outcomes.push_back(o); }

        void run_until(Tick horizon)
        {
            while (!m_queue.empty() && m_queue.top().tick <= horizon)
            {
                auto ev = m_queue.top();
                m_queue.pop();
                m_now = ev.tick;
                ev.action();
            }
            m_now = horizon;
        }

    private:
        struct Ev
        {
            Tick tick;
            std::uint64_t seq;
            std::function<void()> action;
            bool operator>(const Ev& o) const { return tick != o.tick ? tick > o.tick : seq > o.seq; }
        };

        void at_tick(Tick t, std::function<void()> fn) { m_queue.push({t, m_seq++, std::move(fn)}); }

        Tick m_now = 0;
        std::uint64_t m_seq = 0;
        std::priority_queue<Ev, std::vector<Ev>, std::greater<>> m_queue;
        std::map<ChainId, std::vector<std::pair<std::string, ScannedEntry>>> m_ledger;
    };

    struct Rig
    {
        FakeHost host;
        Survivor survivor{host};
        Rig() { host.survivor = &survivor; }
    };

    SubTxn sub(const std::string& key, std::vector<std::string> candidates, std::optional<Tick> timeout = {})
    {
        SubTxn s;
        s.unit = chain::make_unit("bytes " + key, chain::SemanticType::Payments, key);
        for (const auto& c : candidates)
            s.candidate_chains.push_back(ChainId(c));
        s.per_chain_timeout = timeout;
        return s;
    }

    AppTransaction txn(const std::string& id, std::vector<SubTxn> subs)
    {
        AppTransaction t;
        t.app_txn_id = AppTxnId(id);
        t.app = AppId("app");
        t.sub_txns = std::move(subs);
        return t;
    }
}

TEST_SUITE("survivor")
{
    TEST_CASE("healthy first candidate confirms in one attempt")
    {
        Rig r;
        r.host.chains[ChainId("BC1")] = {3};
        r.survivor.submit_app_txn(txn("t", {sub("k", {"BC1", "BC2"})}));
        r.host.run_until(100);
        const auto& rec = r.survivor.audit_record(AppTxnId("t"));
        CHECK(rec.state == AppState::Confirmed);
        REQUIRE(rec.sub_txns[0].attempts.size() == 1);
        CHECK(rec.sub_txns[0].attempts[0].chain == ChainId("BC1"));
        CHECK(rec.sub_txns[0].attempts[0].outcome == AttemptOutcome::Confirmed);
        CHECK(r.survivor.outcome(AppTxnId("t")).tick == 3);
        CHECK(r.survivor.poll_duplicates(AppTxnId("t")).duplicates.empty());
    }

    TEST_CASE("timeout falls back to the next candidate")
    {
        // Hand-run schedule: submit to BC1 at 0, timer at 10, resubmit to
        // BC2 at 10, BC2 confirms 4 ticks later.
        Rig r;
        r.host.chains[ChainId("BC1")] = {3, std::nullopt, true};
        r.host.chains[ChainId("BC2")] = {4};
        r.survivor.submit_app_txn(txn("t", {sub("k", {"BC1", "BC2"}, 10)}));
        r.host.run_until(100);
        auto out = r.survivor.outcome(AppTxnId("t"));
        CHECK(out.state == AppState::Confirmed);
        CHECK(out.tick == 14);
        const auto& attempts = r.survivor.audit_record(AppTxnId("t")).sub_txns[0].attempts;
        REQUIRE(attempts.size() == 2);
        CHECK(attempts[0].outcome == AttemptOutcome::TimedOut);
        CHECK(attempts[0].ended == 10);
        CHECK(attempts[1].chain == ChainId("BC2"));
        CHECK(attempts[1].outcome == AttemptOutcome::Confirmed);
    }

    TEST_CASE("exhausting every candidate fails after the sum of timeouts")
    {
        Rig r;
        r.host.chains[ChainId("BC1")] = {3, std::nullopt, true};
        r.host.chains[ChainId("BC2")] = {4, std::nullopt, true};
        r.host.chains[ChainId("BC3")] = {2, std::nullopt, true};
        // Explicit 10 for every candidate.
        r.survivor.submit_app_txn(txn("a", {sub("ka", {"BC1", "BC2"}, 10)}));
        // Defaults: 3 x latency per chain = 9 + 12 + 6.
        r.survivor.submit_app_txn(txn("b", {sub("kb", {"BC1", "BC2", "BC3"})}));
        r.host.run_until(200);
        CHECK(r.survivor.outcome(AppTxnId("a")) == AppOutcome{AppTxnId("a"), AppState::Failed, 20});
        CHECK(r.survivor.outcome(AppTxnId("b")) == AppOutcome{AppTxnId("b"), AppState::Failed, 27});
        CHECK(Survivor::default_timeout(4) == 12);
    }

    TEST_CASE("submission errors")
    {
        Rig r;
        r.host.chains[ChainId("BC1")] = {3};
        CHECK(error_of([&] { r.survivor.submit_app_txn(txn("e", {sub("k", {})})); }) == Errc::EmptyCandidates);
        CHECK(error_of([&] { r.survivor.submit_app_txn(txn("none", {})); }) == Errc::EmptyCandidates);
        r.survivor.submit_app_txn(txn("t", {sub("k1", {"BC1"})}));
        CHECK(error_of([&] { r.survivor.submit_app_txn(txn("t", {sub("k2", {"BC1"})})); }) ==
              Errc::InvalidArgument);
    }

    TEST_CASE("late confirmation from an abandoned chain is reported as a duplicate")
    {
        Rig r;
        r.host.chains[ChainId("BC1")] = {3, Tick(30)};
        r.host.chains[ChainId("BC2")] = {4};
        r.survivor.submit_app_txn(txn("t", {sub("k", {"BC1", "BC2"}, 10)}));
        r.host.run_until(100);
        CHECK(r.survivor.outcome(AppTxnId("t")).tick == 14);
        auto report = r.survivor.poll_duplicates(AppTxnId("t"));
        REQUIRE(report.duplicates.size() == 1);
        CHECK(report.duplicates[0].chain == ChainId("BC1"));
        CHECK(report.duplicates[0].confirmed_tick == 31);
        // Oracle: a scan of every candidate ledger for the key.
        std::size_t copies = r.host.scan(ChainId("BC1"), "k").size() + r.host.scan(ChainId("BC2"), "k").size();
        CHECK(copies == 1 + report.duplicates.size());
    }

    TEST_CASE("duplicate report names exactly the duplicated sub-transaction")
    {
        Rig r;
        r.host.chains[ChainId("BC1")] = {3, Tick(30)};
        r.host.chains[ChainId("BC2")] = {4};
        r.survivor.submit_app_txn(txn("t", {sub("clean", {"BC2"}), sub("dup", {"BC1", "BC2"}, 10)}));
        r.host.run_until(100);
        CHECK(r.survivor.outcome(AppTxnId("t")).state == AppState::Confirmed);
        auto report = r.survivor.poll_duplicates(AppTxnId("t"));
        REQUIRE(report.duplicates.size() == 1);
        CHECK(report.duplicates[0].sub_index == 1);
    }

    TEST_CASE("outcome does not reveal which candidate confirmed")
    {
        AppOutcome seen[2];
        for (int which = 0; which < 2; ++which)
        {
            Rig r;
            r.host.chains[ChainId("BC1")] = {5, std::nullopt, which == 1};
            r.host.chains[ChainId("BC2")] = {5, std::nullopt, which == 0};
            // Whichever chain is up confirms at tick 5.
            std::vector<std::string> order = which == 0 ? std::vector<std::string>{"BC1", "BC2"}
                                                        : std::vector<std::string>{"BC2", "BC1"};
            r.survivor.submit_app_txn(txn("t", {sub("k", order, 20)}));
            r.host.run_until(100);
            REQUIRE(r.host.outcomes.size() == 1);
            seen[which] = r.host.outcomes[0];
        }
        CHECK(seen[0] == seen[1]);
    }

    TEST_CASE("bundled fallback scenario confirms through the second chain at tick 14")
    {
        simnet::World w(testing::bundled("fig2_fallback"));
        w.run();
        auto out = w.survivor().outcome(AppTxnId("txn1"));
        CHECK(out.state == AppState::Confirmed);
        CHECK(out.tick == 14);
        CHECK(w.survivor().audit_record(AppTxnId("txn1")).sub_txns[0].attempts.size() == 2);
        CHECK(w.audits_passed());
    }

    TEST_CASE("healed chain confirms the original submission in the simulator")
    {
        auto cfg = testing::bundled("fig2_fallback");
        cfg.faults.clear();
        simnet::FaultSpec crash;
        crash.id = "bc1-down";
        crash.kind = simnet::FaultKind::NodeCrash;
        crash.chain = ChainId("BC1");
        crash.count = 3;
        crash.at_tick = 0;
        crash.until_tick = 30;
        cfg.faults.push_back(crash);
        cfg.horizon = 60;
        simnet::World w(cfg);
        w.run();
        CHECK(w.survivor().outcome(AppTxnId("txn1")).tick == 14);
        auto report = w.survivor().poll_duplicates(AppTxnId("txn1"));
        REQUIRE(report.duplicates.size() == 1);
        CHECK(report.duplicates[0].chain == ChainId("BC1"));
        CHECK(report.duplicates[0].confirmed_tick == 31);
        CHECK(w.audits_passed());
    }

    TEST_CASE("attempt lists are identical across identical runs")
    {
        auto cfg = testing::bundled("fig2_fallback");
        simnet::World a(cfg), b(cfg);
        a.run();
        b.run();
        const auto& ra = a.survivor().audit_record(AppTxnId("txn1")).sub_txns[0].attempts;
        const auto& rb = b.survivor().audit_record(AppTxnId("txn1")).sub_txns[0].attempts;
        REQUIRE(ra.size() == rb.size());
        for (std::size_t i = 0; i < ra.size(); ++i)
        {
            CHECK(ra[i].chain == rb[i].chain);
            CHECK(ra[i].outcome == rb[i].outcome);
            CHECK(ra[i].started == rb[i].started);
            CHECK(ra[i].ended == rb[i].ended);
        }
    }
}
