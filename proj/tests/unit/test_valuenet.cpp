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
#include "interop/valuenet/valuenet.hpp"

#include "expect.hpp"
#include "fixtures.hpp"

#include <doctest.h>

#include <functional>

using namespace interop;
using namespace interop::valuenet;
using interop::testing::error_of;

namespace
{
    Denomination D(const std::string& s) { return Denomination(s); }
    ChainId C(const std::string& s) { return ChainId(s); }

    /// USD and EUR segments joined by one connector converting at 5/4.
    ValueNetwork usd_eur(Rational eur_reserve, Tick ttl = 50)
    {
        ValueNetwork net(ttl);
        net.add_segment(C("USDNET"), D("USD"));
        net.add_segment(C("EURNET"), D("EUR"));
        net.add_connector(ConnectorId("conn"), {C("USDNET"), C("EURNET")},
                          {{D("USD"), Rational(1000)}, {D("EUR"), eur_reserve}},
                          {{{D("USD"), D("EUR")}, Rational(5, 4)}, {{D("EUR"), D("USD")}, Rational(4, 5)}});
        return net;
    }

    // Brute-force route oracle: every simple path, fewest hops first, then
    // the lexicographically smallest step sequence.
    std::optional<std::vector<RouteStep>> brute_route(const ValueNetwork& net, const ChainId& from,
                                                      const ChainId& to)
    {
        std::vector<RouteStep> edges;
        for (const auto& [cid, c] : net.connectors())
            for (const auto& a : c.adjacent_chains)
                for (const auto& b : c.adjacent_chains)
                    if (a != b && c.rates.count({net.segments().at(a), net.segments().at(b)}))
                        edges.push_back({cid, a, b});

        std::optional<std::vector<RouteStep>> best;
        std::vector<RouteStep> cur;
        std::set<ChainId> seen{from};
        std::function<void(const ChainId&)> dfs = [&](const ChainId& at) {
            if (at == to)
            {
                if (!best || cur.size() < best->size() || (cur.size() == best->size() && cur < *best))
                    best = cur;
                return;
            }
            for (const auto& e : edges)
            {
                if (e.from_chain != at || seen.count(e.to_chain))
                    continue;
                seen.insert(e.to_chain);
                cur.push_back(e);
                dfs(e.to_chain);
                cur.pop_back();
                seen.erase(e.to_chain);
            }
        };
        dfs(from);
        return best;
    }

    // Replays settled hops against the initial reserves.
    using ReserveModel = std::map<ConnectorId, std::map<Denomination, Rational>>;
}

TEST_SUITE("valuenet")
{
    TEST_CASE("single hop reservation converts exactly")
    {
        auto net = usd_eur(Rational(100));
        auto p = net.build_path(PathId("p"), C("USDNET"), C("EURNET"), Rational(20), D("USD"), D("EUR"), 0);
        REQUIRE(p.hops.size() == 1);
        CHECK(p.hops[0].amount_in == Rational(20));
        CHECK(p.hops[0].amount_out == Rational(25));
        CHECK(p.state == PathState::Reserved);
        CHECK(net.connector(ConnectorId("conn")).reserved(D("EUR")) == Rational(25));
        CHECK(net.connector(ConnectorId("conn")).free(D("EUR")) == Rational(75));
    }

    TEST_CASE("settle moves reserves; release restores the snapshot")
    {
        auto net = usd_eur(Rational(100));
        auto before = net.connector(ConnectorId("conn")).reserves;
        net.build_path(PathId("r"), C("USDNET"), C("EURNET"), Rational(20), D("USD"), D("EUR"), 0);
        net.release_path(PathId("r"));
        CHECK(net.connector(ConnectorId("conn")).reserves == before);
        CHECK(net.reservation_set().empty());

        net.build_path(PathId("s"), C("USDNET"), C("EURNET"), Rational(20), D("USD"), D("EUR"), 0);
        auto s = net.settle_path(PathId("s"), 1);
        CHECK(s.state == PathState::Settled);
        const auto& after = net.connector(ConnectorId("conn")).reserves;
        CHECK(after.at(D("USD")) == before.at(D("USD")) + 20);
        CHECK(after.at(D("EUR")) == before.at(D("EUR")) - 25);
        CHECK(net.credited(C("EURNET"), D("EUR")) == Rational(25));

        CHECK(error_of([&] { net.settle_path(PathId("s"), 2); }) == Errc::AlreadyTerminal);
        CHECK(error_of([&] { net.release_path(PathId("r")); }) == Errc::AlreadyTerminal);
        CHECK(net.audit().empty());
    }

    TEST_CASE("overloaded connector rejects without residue")
    {
        auto net = usd_eur(Rational(10));
        CHECK(error_of([&] {
                  net.build_path(PathId("big"), C("USDNET"), C("EURNET"), Rational(20), D("USD"), D("EUR"), 0);
              }) == Errc::Overloaded);
        CHECK(net.reservation_set().empty());
        CHECK(net.paths().count(PathId("big")) == 0);
    }

    TEST_CASE("settling an open path frees the currency it brought in")
    {
        ValueNetwork net;
        net.add_segment(C("USDNET"), D("USD"));
        net.add_segment(C("EURNET"), D("EUR"));
        net.add_connector(ConnectorId("conn"), {C("USDNET"), C("EURNET")},
                          {{D("USD"), Rational(20)}, {D("EUR"), Rational(25)}},
                          {{{D("USD"), D("EUR")}, Rational(5, 4)}, {{D("EUR"), D("USD")}, Rational(4, 5)}});

        // a takes the whole EUR reserve; b needs 32 USD of the 20 held.
        net.build_path(PathId("a"), C("USDNET"), C("EURNET"), Rational(20), D("USD"), D("EUR"), 0);
        CHECK(net.connector(ConnectorId("conn")).free(D("EUR")) == 0);
        auto reserved = net.reservation_set();
        CHECK(error_of([&] {
                  net.build_path(PathId("b"), C("EURNET"), C("USDNET"), Rational(40), D("EUR"), D("USD"), 1);
              }) == Errc::Overloaded);
        CHECK(net.reservation_set() == reserved);

        net.settle_path(PathId("a"), 2);
        CHECK(net.connector(ConnectorId("conn")).reserves.at(D("USD")) == Rational(40));
        auto b = net.build_path(PathId("b"), C("EURNET"), C("USDNET"), Rational(40), D("EUR"), D("USD"), 3);
        CHECK(b.delivered() == Rational(32));
        CHECK(net.audit().empty());
    }

    TEST_CASE("expired paths release and refuse settlement")
    {
        auto net = usd_eur(Rational(100), 10);
        net.build_path(PathId("p"), C("USDNET"), C("EURNET"), Rational(20), D("USD"), D("EUR"), 0);
        CHECK(net.next_expiry() == Tick(10));
        CHECK(net.expire(9).empty());
        CHECK(net.expire(10) == std::vector<PathId>{PathId("p")});
        CHECK(net.reservation_set().empty());
        CHECK(net.path(PathId("p")).state == PathState::Released);
        CHECK(error_of([&] { net.settle_path(PathId("p"), 11); }) == Errc::PathExpired);

        net.build_path(PathId("q"), C("USDNET"), C("EURNET"), Rational(20), D("USD"), D("EUR"), 0);
        CHECK(error_of([&] { net.settle_path(PathId("q"), 10); }) == Errc::PathExpired);
    }

    TEST_CASE("route errors")
    {
        auto net = usd_eur(Rational(100));
        net.add_segment(C("JPYNET"), D("JPY"));
        CHECK(error_of([&] { net.route(C("USDNET"), C("JPYNET")); }) == Errc::NoRoute);
        CHECK(error_of([&] { net.route(C("USDNET"), C("NOWHERE")); }) == Errc::NoRoute);
        CHECK(error_of([&] {
                  net.build_path(PathId("x"), C("USDNET"), C("EURNET"), Rational(0), D("USD"), D("EUR"), 0);
              }) == Errc::InvalidArgument);
    }

    TEST_CASE("diamond tie-break picks the smaller connector sequence")
    {
        ValueNetwork net;
        for (const char* s : {"A", "B", "C", "D"})
            net.add_segment(C(s), D(std::string("d") + s));
        auto rates = [](std::initializer_list<const char*> chains) {
            std::map<DenomPair, Rational> r;
            for (const char* a : chains)
                for (const char* b : chains)
                    if (std::string(a) != b)
                        r[{D(std::string("d") + a), D(std::string("d") + b)}] = Rational(1);
            return r;
        };
        auto reserves = [](std::initializer_list<const char*> chains) {
            std::map<Denomination, Rational> r;
            for (const char* a : chains)
                r[D(std::string("d") + a)] = Rational(100);
            return r;
        };
        net.add_connector(ConnectorId("cz"), {C("A"), C("B")}, reserves({"A", "B"}), rates({"A", "B"}));
        net.add_connector(ConnectorId("cy"), {C("A"), C("C")}, reserves({"A", "C"}), rates({"A", "C"}));
        net.add_connector(ConnectorId("cx"), {C("B"), C("C"), C("D")}, reserves({"B", "C", "D"}),
                          rates({"B", "C", "D"}));
        auto r = net.route(C("A"), C("D"));
        REQUIRE(r.size() == 2);
        CHECK(r[0].connector_id == ConnectorId("cy"));
        CHECK(r[0].to_chain == C("C"));
        CHECK(r == *brute_route(net, C("A"), C("D")));
    }

    TEST_CASE("property: route matches exhaustive enumeration on random graphs")
    {
        Rng rng(11);
        const std::vector<std::string> chains{"A", "B", "C", "D", "E"};
        for (int run = 0; run < 300; ++run)
        {
            ValueNetwork net;
            for (const auto& c : chains)
                net.add_segment(C(c), D("d" + c));
            int connectors = static_cast<int>(rng.uniform(1, 5));
            for (int k = 0; k < connectors; ++k)
            {
                std::set<ChainId> adj;
                std::map<Denomination, Rational> res;
                while (adj.size() < 2)
                    adj.insert(C(chains[rng.uniform(0, 4)]));
                if (rng.chance(1, 3))
                    adj.insert(C(chains[rng.uniform(0, 4)]));
                std::map<DenomPair, Rational> rt;
                for (const auto& a : adj)
                {
                    res[D("d" + a.str())] = Rational(10);
                    for (const auto& b : adj)
                        if (a != b && rng.chance(2, 3))
                            rt[{D("d" + a.str()), D("d" + b.str())}] = Rational(1);
                }
                net.add_connector(ConnectorId("k" + std::to_string(rng.uniform(0, 9)) + std::to_string(k)), adj, res,
                                  rt);
            }
            auto from = C(chains[rng.uniform(0, 4)]);
            auto to = C(chains[rng.uniform(0, 4)]);
            if (from == to)
                continue;
            auto expect = brute_route(net, from, to);
            auto err = error_of([&] { net.route(from, to); });
            if (!expect)
            {
                CHECK(err == Errc::NoRoute);
                continue;
            }
            REQUIRE_FALSE(err.has_value());
            CHECK(net.route(from, to) == *expect);
        }
    }

    TEST_CASE("property: random reserve, settle, release and expiry conserve value")
    {
        Rng rng(2024);
        std::size_t overloads = 0;
        for (int run = 0; run < 200; ++run)
        {
            ValueNetwork net(static_cast<Tick>(rng.uniform(5, 30)));
            net.add_segment(C("USDNET"), D("USD"));
            net.add_segment(C("EURNET"), D("EUR"));
            net.add_segment(C("JPYNET"), D("JPY"));
            net.add_connector(ConnectorId("ue"), {C("USDNET"), C("EURNET")},
                              {{D("USD"), Rational(rng.uniform(50, 500))}, {D("EUR"), Rational(rng.uniform(50, 500))}},
                              {{{D("USD"), D("EUR")}, Rational(9, 10)}, {{D("EUR"), D("USD")}, Rational(10, 9)}});
            net.add_connector(ConnectorId("ej"), {C("EURNET"), C("JPYNET")},
                              {{D("EUR"), Rational(rng.uniform(50, 500))}, {D("JPY"), Rational(rng.uniform(5000, 50000))}},
                              {{{D("EUR"), D("JPY")}, Rational(160)}, {{D("JPY"), D("EUR")}, Rational(1, 160)}});

            ReserveModel model;
            for (const auto& [id, c] : net.connectors())
                model[id] = c.reserves;

            const std::vector<std::pair<std::string, std::string>> segs{
                {"USDNET", "USD"}, {"EURNET", "EUR"}, {"JPYNET", "JPY"}};
            std::vector<PathId> open;
            for (Tick t = 0; t < 60; ++t)
            {
                for (const auto& id : net.expire(t))
                    open.erase(std::remove(open.begin(), open.end(), id), open.end());
                int op = static_cast<int>(rng.uniform(0, 3));
                if (op <= 1 || open.empty())
                {
                    auto a = segs[rng.uniform(0, 2)];
                    auto b = segs[rng.uniform(0, 2)];
                    if (a == b)
                        continue;
                    PathId id("p" + std::to_string(t));
                    auto before = net.reservation_set();
                    Rational amount(rng.uniform(1, 200), rng.uniform(1, 7));
                    auto err = error_of([&] {
                        net.build_path(id, C(a.first), C(b.first), amount, D(a.second), D(b.second), t);
                    });
                    if (err)
                    {
                        CHECK(err == Errc::Overloaded);
                        CHECK(net.reservation_set() == before);
                        ++overloads;
                    }
                    else
                    {
                        open.push_back(id);
                    }
                }
                else
                {
                    PathId id = open[rng.uniform(0, open.size() - 1)];
                    open.erase(std::remove(open.begin(), open.end(), id), open.end());
                    if (op == 2)
                    {
                        auto p = net.settle_path(id, t);
                        for (const auto& h : p.hops)
                        {
                            model[h.connector_id][h.denom_in] += h.amount_in;
                            model[h.connector_id][h.denom_out] -= h.amount_out;
                            CHECK(h.amount_out == h.amount_in * net.connector(h.connector_id)
                                                                     .rates.at({h.denom_in, h.denom_out}));
                        }
                    }
                    else
                    {
                        net.release_path(id);
                    }
                }
                for (const auto& [cid, c] : net.connectors())
                {
                    CHECK(c.reserves == model[cid]);
                    for (const auto& [denom, amount] : c.reserves)
                    {
                        CHECK(amount >= 0);
                        CHECK(c.reserved(denom) <= amount);
                    }
                }
                REQUIRE(net.audit().empty());
            }
        }
        // The generator must actually exercise the overload path.
        CHECK(overloads > 0);
    }

    TEST_CASE("payments leave chain ledgers untouched")
    {
        auto with = testing::bundled("ilp_path");
        auto without = with;
        without.payments.clear();
        without.connectors.clear();
        simnet::World a(with), b(without);
        a.run();
        b.run();
        REQUIRE_FALSE(a.payments().empty());
        for (const auto& [id, c] : a.chains())
        {
            CAPTURE(id.str());
            CHECK(c->ledger().dump_entries() == b.chain(id).ledger().dump_entries());
            CHECK(c->ledger().dump_marks() == b.chain(id).ledger().dump_marks());
        }
        CHECK(a.audits_passed());
        CHECK(b.audits_passed());
    }
}
