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
#include "interop/common/rng.hpp"

#include "expect.hpp"

#include <doctest.h>

#include <map>

using namespace interop;
using namespace interop::chain;
using interop::testing::error_of;

namespace
{
    ChainConfig config(const std::string& id, bool write_permissioned = true, bool read_permissioned = true)
    {
        ChainConfig c;
        c.id = ChainId(id);
        c.path = "test." + id;
        c.gateways = {GatewayId(id + ".gw0")};
        c.regime = {true, true, write_permissioned, read_permissioned};
        c.semantic_type = SemanticType::GenericRecord;
        return c;
    }

    Credential owner_cred() { return {AppId("owner"), "cap:owner"}; }

    Chain owned_chain(const std::string& id = "BC1")
    {
        Chain c(config(id));
        c.access().grant(AppId("owner"), "cap:owner", {true, true});
        return c;
    }

    TransferUnit unit(const std::string& key) { return make_unit("payload " + key, SemanticType::GenericRecord, key); }

    // Independent copy of the entry fields that must never change once written.
    std::vector<std::string> snapshot(const Ledger& ledger)
    {
        std::vector<std::string> out;
        for (const auto& e : ledger.entries())
            out.push_back(e.local_ref.str() + "|" + e.unit.idempotency_key + "|" + to_hex(e.unit.payload_digest) + "|" +
                          std::to_string(e.submitted_tick) + "|" + std::to_string(e.confirmed_tick) + "|" +
                          std::to_string(e.confirming_nodes.size()));
        return out;
    }
}

TEST_SUITE("chain")
{
    TEST_CASE("submit returns a pending receipt and confirms after the latency")
    {
        Chain c = owned_chain();
        auto r = c.submit(unit("u1"), owner_cred(), 0);
        CHECK(r.chain_id == ChainId("BC1"));
        CHECK(r.local_ref == LocalRef("BC1:L0"));
        CHECK_FALSE(r.already_confirmed);
        CHECK(c.pending_count() == 1);

        CHECK(c.advance_consensus(1).empty());
        CHECK(c.advance_consensus(2).empty());
        auto confirmed = c.advance_consensus(3);
        REQUIRE(confirmed.size() == 1);
        CHECK(confirmed[0].confirmed_tick == 3);
        CHECK(confirmed[0].confirming_nodes.size() == 4);
        CHECK(c.pending_count() == 0);
    }

    TEST_CASE("write-permissioned chain refuses a writer without a credential")
    {
        Chain c = owned_chain();
        CHECK(error_of([&] { c.submit(unit("u1"), Credential{}, 0); }) == Errc::PermissionDenied);
        CHECK(error_of([&] { c.submit(unit("u1"), {AppId("owner"), "wrong"}, 0); }) == Errc::PermissionDenied);
        CHECK(c.pending_count() == 0);

        Chain open(config("OPEN", false, false));
        CHECK_NOTHROW(open.submit(unit("u1"), Credential{}, 0));
    }

    TEST_CASE("resubmission with the same idempotency key changes nothing")
    {
        Chain c = owned_chain();
        auto first = c.submit(unit("u1"), owner_cred(), 0);
        c.advance_consensus(3);
        auto before = snapshot(c.ledger());

        auto second = c.submit(unit("u1"), owner_cred(), 4);
        c.advance_consensus(7);
        auto after = snapshot(c.ledger());

        CHECK(second.local_ref == first.local_ref);
        CHECK(second.already_confirmed);
        CHECK(after == before);
        CHECK(c.pending_count() == 0);
    }

    TEST_CASE("semantic gating and unit validity")
    {
        Chain c = owned_chain();
        auto pay = make_unit("x", SemanticType::Payments, "p1");
        CHECK(error_of([&] { c.submit(pay, owner_cred(), 0); }) == Errc::SemanticMismatch);

        auto bi = make_unit("x", SemanticType::GenericRecord, "b1", AppId("peer"));
        CHECK(bi.directionality == Directionality::Bi);
        CHECK(bi.valid());
        bi.intended_peer.reset();
        CHECK_FALSE(bi.valid());
        CHECK(error_of([&] { c.submit(bi, owner_cred(), 0); }) == Errc::InvalidArgument);

        auto uni = unit("u2");
        uni.intended_peer = AppId("peer");
        CHECK_FALSE(uni.valid());
        CHECK_FALSE(unit("").valid());
    }

    TEST_CASE("regime construction enforces node-implies-consensus permissioning")
    {
        auto cfg = config("BAD");
        cfg.regime = {true, false, false, false};
        CHECK(error_of([&] { Chain bad(cfg); }) == Errc::InvalidArgument);
        cfg.regime = {false, true, false, false};
        CHECK_NOTHROW(Chain ok(cfg));
    }

    TEST_CASE("one live node of four never confirms under a total-population quorum")
    {
        Chain c = owned_chain();
        c.set_node_live(NodeId("BC1.node1"), false);
        c.set_node_live(NodeId("BC1.node2"), false);
        c.set_node_live(NodeId("BC1.node3"), false);
        CHECK(c.quorum_size() == 3);
        c.submit(unit("u1"), owner_cred(), 0);
        for (Tick t = 1; t <= 100; ++t)
            CHECK(c.advance_consensus(t).empty());
        CHECK(c.ledger().size() == 0);
    }

    TEST_CASE("crash after confirmation keeps the earlier confirmation")
    {
        // Step-by-step replay: submit at 0, latency 3, crash two nodes at 5.
        Chain c = owned_chain();
        c.submit(unit("u1"), owner_cred(), 0);
        std::map<Tick, std::size_t> confirmed_at;
        for (Tick t = 0; t <= 12; ++t)
        {
            if (t == 5)
            {
                c.set_node_live(NodeId("BC1.node2"), false);
                c.set_node_live(NodeId("BC1.node3"), false);
                c.submit(unit("u2"), owner_cred(), t);
            }
            for (const auto& e : c.advance_consensus(t))
                confirmed_at[e.confirmed_tick] += 1;
        }
        CHECK(confirmed_at == std::map<Tick, std::size_t>{{3, 1}});
        CHECK(c.ledger().entries()[0].confirming_nodes.size() == 4);
        // u2 waits for a quorum that two live nodes cannot form.
        CHECK(c.pending_count() == 1);
    }

    TEST_CASE("reads check the credential and surface marks")
    {
        Chain c = owned_chain();
        auto r = c.submit(unit("u1"), owner_cred(), 0);
        c.advance_consensus(3);

        auto view = c.read_ledger(r.local_ref, owner_cred());
        CHECK(view.entry.local_ref == r.local_ref);
        CHECK_FALSE(view.mark.has_value());

        Credential foreign{AppId("Y"), "cap:Y"};
        CHECK(error_of([&] { c.read_ledger(r.local_ref, foreign); }) == Errc::PermissionDenied);
        CHECK(error_of([&] { c.read_ledger(LocalRef("BC1:L99"), owner_cred()); }) == Errc::NotFound);

        identity::AuthoritativePointer ptr{identity::CrossId{"test.BC1", {}}, ChainId("BC2"), ChainId("BC1"), 9};
        c.mark(r.local_ref, ptr);
        view = c.read_ledger(r.local_ref, owner_cred());
        REQUIRE(view.mark.has_value());
        CHECK(std::get<identity::AuthoritativePointer>(*view.mark).home_chain == ChainId("BC2"));

        // A second mark on the same entry is refused.
        CHECK(error_of([&] { c.mark(r.local_ref, VoidMark{TransferId("t"), 10}); }) == Errc::InvalidArgument);
    }

    TEST_CASE("probe reports health, pending work and anonymous lower bounds")
    {
        Chain c = owned_chain();
        auto s = c.probe_status(true);
        CHECK(s.live_node_count == 4);
        CHECK(s.pending_count == 0);
        CHECK(s.mean_confirm_latency == doctest::Approx(3.0));
        CHECK(s.reachable);

        c.submit(unit("u1"), owner_cred(), 0);
        c.submit(unit("u2"), owner_cred(), 1);
        // Oracle: count what a direct scan says is pending.
        std::size_t pending = 0;
        for (const auto* key : {"u1", "u2"})
            pending += c.is_pending(*c.find_by_key(key)) ? 1 : 0;
        CHECK(c.probe_status(true).pending_count == static_cast<std::int64_t>(pending));
        CHECK(pending == 2);

        CHECK(error_of([&] { c.probe_status(false); }) == Errc::Unreachable);

        auto cfg = config("ANON", false, false);
        cfg.regime = {false, false, false, false};
        cfg.node_count = 10;
        Chain anon(cfg);
        CHECK(anon.probe_status(true).live_node_count == anon.quorum_size());
        CHECK(anon.probe_status(true).live_node_count <= anon.live_node_count());
    }

    TEST_CASE("property: ledger is append-only and every entry meets the quorum")
    {
        Rng rng(17);
        for (int run = 0; run < 50; ++run)
        {
            Chain c = owned_chain();
            std::vector<std::string> prev;
            int next_key = 0;
            for (Tick t = 0; t < 60; ++t)
            {
                switch (rng.uniform(0, 4))
                {
                case 0:
                case 1: c.submit(unit("k" + std::to_string(next_key++)), owner_cred(), t); break;
                case 2:
                    c.submit(unit("k" + std::to_string(rng.uniform(0, next_key))), owner_cred(), t);
                    break;
                case 3:
                    c.set_node_live(NodeId("BC1.node" + std::to_string(rng.uniform(0, 3))), rng.chance(1, 2));
                    break;
                default:
                    if (c.ledger().size())
                    {
                        const auto& e = c.ledger().entries()[rng.uniform(0, c.ledger().size() - 1)];
                        if (!c.ledger().mark_of(e.local_ref))
                            c.mark(e.local_ref, VoidMark{TransferId("t"), t});
                    }
                }
                c.advance_consensus(t);

                auto now = snapshot(c.ledger());
                REQUIRE(now.size() >= prev.size());
                CHECK(std::equal(prev.begin(), prev.end(), now.begin()));
                prev = std::move(now);
            }
            for (const auto& e : c.ledger().entries())
            {
                CHECK(static_cast<std::int64_t>(e.confirming_nodes.size()) >= c.quorum_size());
                CHECK(e.confirmed_tick >= e.submitted_tick + c.confirm_latency());
                CHECK(e.unit.semantic_type == c.semantic_type());
            }
        }
    }

    TEST_CASE("property: submit and read succeed exactly when the access table allows")
    {
        Rng rng(99);
        const std::vector<std::string> apps{"a", "b", "c"};
        const std::vector<std::string> tokens{"t0", "t1", ""};
        for (int run = 0; run < 300; ++run)
        {
            Chain c(config("BC1", rng.chance(1, 2), rng.chance(1, 2)));
            // Oracle model of the table.
            std::map<std::string, std::tuple<std::string, bool, bool>> model;
            for (const auto& a : apps)
            {
                if (rng.chance(2, 3))
                {
                    std::string tok = tokens[rng.uniform(0, 1)];
                    bool rd = rng.chance(1, 2), wr = rng.chance(1, 2);
                    c.access().grant(AppId(a), tok, {rd, wr});
                    model[a] = {tok, rd, wr};
                }
            }
            for (int probe = 0; probe < 10; ++probe)
            {
                Credential cred{AppId(apps[rng.uniform(0, 2)]), tokens[rng.uniform(0, 2)]};
                auto it = model.find(cred.app.str());
                bool token_ok = it != model.end() && std::get<0>(it->second) == cred.token;
                bool may_write = !c.regime().user_write_permissioned || (token_ok && std::get<2>(it->second));
                bool may_read = !c.regime().user_read_permissioned || (token_ok && std::get<1>(it->second));

                auto werr = error_of([&] { c.submit(unit("w" + std::to_string(probe)), cred, 0); });
                CHECK((werr == Errc::PermissionDenied) == !may_write);
                CHECK((!werr.has_value()) == may_write);

                auto rerr = error_of([&] { c.read_ledger(LocalRef("BC1:L0"), cred); });
                // Nothing is confirmed, so an allowed read reports NotFound instead.
                CHECK((rerr == Errc::PermissionDenied) == !may_read);
            }
        }
    }
}
