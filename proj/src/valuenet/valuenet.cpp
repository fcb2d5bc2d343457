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

#include "interop/valuenet/valuenet.hpp"
#include "interop/common/error.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace interop::valuenet
{
    using interop::to_string;

    std::string_view to_string(PathState state)
    {
        switch (state)
        {
        case PathState::Reserved: return "RESERVED";
        case PathState::Settled: return "SETTLED";
        case PathState::Released: return "RELEASED";
        }
        return "?";
    }

    Rational Connector::reserved(const Denomination& denom) const
    {
        Rational sum = 0;
        for (const auto& r : reservations)
            if (r.denom_out == denom)
                sum += r.amount_out;
        return sum;
    }

    Rational Connector::free(const Denomination& denom) const
    {
        auto it = reserves.find(denom);
        Rational balance = it == reserves.end() ? Rational(0) : it->second;
        return balance - reserved(denom);
    }

    void ValueNetwork::add_segment(const ChainId& chain, const Denomination& denom)
    {
        if (!m_segments.emplace(chain, denom).second)
            fail(Errc::InvalidArgument, "segment " + chain.str() + " already registered");
    }

    void ValueNetwork::add_connector(const ConnectorId& id, std::set<ChainId> adjacent,
                                     std::map<Denomination, Rational> reserves, std::map<DenomPair, Rational> rates)
    {
        if (m_connectors.count(id))
            fail(Errc::InvalidArgument, "connector " + id.str() + " already registered");
        if (adjacent.size() < 2)
            fail(Errc::InvalidArgument, "connector " + id.str() + " must join at least two chains");
        for (const auto& c : adjacent)
            if (!m_segments.count(c))
                fail(Errc::InvalidArgument, "connector " + id.str() + " joins unknown segment " + c.str());
        for (const auto& [d, amount] : reserves)
            if (amount < 0)
                fail(Errc::InvalidArgument, "negative reserve of " + d.str() + " at " + id.str());
        for (const auto& [pair, rate] : rates)
            if (rate <= 0)
                fail(Errc::InvalidArgument, "non-positive rate at " + id.str());

        m_initial[id] = reserves;
        m_connectors.emplace(id, Connector{id, std::move(adjacent), std::move(reserves), std::move(rates), {}});
    }

    std::vector<RouteStep> ValueNetwork::route(const ChainId& sender, const ChainId& receiver) const
    {
        if (!m_segments.count(sender) || !m_segments.count(receiver))
            fail(Errc::NoRoute, "unknown segment");
        if (sender == receiver)
            fail(Errc::InvalidArgument, "sender and receiver are the same segment");

        // Outgoing edges per chain, in (connector, next chain) order.
        std::map<ChainId, std::vector<RouteStep>> out;
        for (const auto& [cid, c] : m_connectors)
            for (const auto& from : c.adjacent_chains)
                for (const auto& to : c.adjacent_chains)
                    if (from != to && c.rates.count({m_segments.at(from), m_segments.at(to)}))
                        out[from].push_back({cid, from, to});
        for (auto& [_, edges] : out)
            std::sort(edges.begin(), edges.end());

        // Hop distance to the receiver over reversed edges.
        std::map<ChainId, std::size_t> dist;
        dist[receiver] = 0;
        std::deque<ChainId> queue{receiver};
        while (!queue.empty())
        {
            ChainId cur = queue.front();
            queue.pop_front();
            for (const auto& [from, edges] : out)
                for (const auto& e : edges)
                    if (e.to_chain == cur && !dist.count(from))
                    {
                        dist[from] = dist[cur] + 1;
                        queue.push_back(from);
                    }
        }
        if (!dist.count(sender))
            fail(Errc::NoRoute, "no connector route " + sender.str() + "->" + receiver.str());

        std::vector<RouteStep> steps;
        ChainId cur = sender;
        while (cur != receiver)
        {
            for (const auto& e : out[cur])
            {
                auto it = dist.find(e.to_chain);
                if (it != dist.end() && it->second + 1 == dist[cur])
                {
                    steps.push_back(e);
                    cur = e.to_chain;
                    break;
                }
            }
        }
        return steps;
    }

    PaymentPath ValueNetwork::build_path(const PathId& id, const ChainId& sender, const ChainId& receiver,
                                         const Rational& amount, const Denomination& denom_in,
                                         const Denomination& denom_out, Tick now)
    {
        if (m_paths.count(id))
            fail(Errc::InvalidArgument, "path id " + id.str() + " already used");
        if (amount <= 0)
            fail(Errc::InvalidArgument, "payment amount must be positive");
        auto s = m_segments.find(sender);
        auto r = m_segments.find(receiver);
        if (s == m_segments.end() || r == m_segments.end())
            fail(Errc::NoRoute, "unknown segment");
        if (s->second != denom_in || r->second != denom_out)
            fail(Errc::InvalidArgument, "denominations do not match the end segments");

        auto steps = route(sender, receiver);

        PaymentPath path;
        path.path_id = id;
        path.sender_chain = sender;
        path.receiver_chain = receiver;
        path.created_tick = now;
        path.expiry_tick = now + m_ttl;

        Rational carried = amount;
        for (const auto& step : steps)
        {
            Connector& c = connector_mut(step.connector_id);
            Hop hop{step.connector_id, step.from_chain, step.to_chain, m_segments.at(step.from_chain),
                    m_segments.at(step.to_chain), carried, 0};
            hop.amount_out = carried * c.rates.at({hop.denom_in, hop.denom_out});

            if (c.free(hop.denom_out) < hop.amount_out)
            {
                drop_reservations(id);
                fail(Errc::Overloaded, "connector " + c.connector_id.str() + " cannot cover " +
                                           to_string(hop.amount_out) + " " + hop.denom_out.str());
            }
            c.reservations.push_back({id, hop.denom_in, hop.denom_out, hop.amount_out, path.expiry_tick});
            carried = hop.amount_out;
            path.hops.push_back(std::move(hop));
        }

        m_paths.emplace(id, path);
        return path;
    }

    PaymentPath ValueNetwork::settle_path(const PathId& id, Tick now)
    {
        auto it = m_paths.find(id);
        if (it == m_paths.end())
            fail(Errc::NotFound, "no path " + id.str());
        PaymentPath& path = it->second;
        if (path.state != PathState::Reserved)
            fail(path.expired ? Errc::PathExpired : Errc::AlreadyTerminal, "path " + id.str() + " is " +
                                                                                std::string(to_string(path.state)));
        if (now >= path.expiry_tick)
        {
            drop_reservations(id);
            path.state = PathState::Released;
            path.expired = true;
            fail(Errc::PathExpired, "path " + id.str() + " expired at " + std::to_string(path.expiry_tick));
        }

        for (const auto& hop : path.hops)
        {
            Connector& c = connector_mut(hop.connector_id);
            c.reserves[hop.denom_in] += hop.amount_in;
            c.reserves[hop.denom_out] -= hop.amount_out;
            m_settled.push_back(hop);
        }
        drop_reservations(id);
        m_credits[{path.receiver_chain, path.hops.back().denom_out}] += path.delivered();
        path.state = PathState::Settled;
        return path;
    }

    PaymentPath ValueNetwork::release_path(const PathId& id)
    {
        auto it = m_paths.find(id);
        if (it == m_paths.end())
            fail(Errc::NotFound, "no path " + id.str());
        if (it->second.state != PathState::Reserved)
            fail(it->second.expired ? Errc::PathExpired : Errc::AlreadyTerminal, "path " + id.str() + " is " +
                                         std::string(to_string(it->second.state)));
        drop_reservations(id);
        it->second.state = PathState::Released;
        return it->second;
    }

    std::vector<PathId> ValueNetwork::expire(Tick now)
    {
        std::vector<PathId> released;
        for (auto& [id, path] : m_paths)
        {
            if (path.state == PathState::Reserved && now >= path.expiry_tick)
            {
                drop_reservations(id);
                path.state = PathState::Released;
                path.expired = true;
                released.push_back(id);
            }
        }
        return released;
    }

    std::optional<Tick> ValueNetwork::next_expiry() const
    {
        std::optional<Tick> best;
        for (const auto& [_, path] : m_paths)
            if (path.state == PathState::Reserved && (!best || path.expiry_tick < *best))
                best = path.expiry_tick;
        return best;
    }

    const Connector& ValueNetwork::connector(const ConnectorId& id) const
    {
        auto it = m_connectors.find(id);
        if (it == m_connectors.end())
            fail(Errc::NotFound, "no connector " + id.str());
        return it->second;
    }

    Connector& ValueNetwork::connector_mut(const ConnectorId& id)
    {
        return const_cast<Connector&>(connector(id));
    }

    const PaymentPath& ValueNetwork::path(const PathId& id) const
    {
        auto it = m_paths.find(id);
        if (it == m_paths.end())
            fail(Errc::NotFound, "no path " + id.str());
        return it->second;
    }

    Rational ValueNetwork::credited(const ChainId& chain, const Denomination& denom) const
    {
        auto it = m_credits.find({chain, denom});
        return it == m_credits.end() ? Rational(0) : it->second;
    }

    void ValueNetwork::drop_reservations(const PathId& id)
    {
        for (auto& [_, c] : m_connectors)
            std::erase_if(c.reservations, [&](const Reservation& r) { return r.path_id == id; });
    }

    std::vector<std::string> ValueNetwork::reservation_set() const
    {
        std::vector<std::string> out;
        for (const auto& [cid, c] : m_connectors)
            for (const auto& r : c.reservations)
                out.push_back(cid.str() + "|" + r.path_id.str() + "|" + r.denom_out.str() + "|" +
                              to_string(r.amount_out));
        std::sort(out.begin(), out.end());
        return out;
    }

    std::vector<std::string> ValueNetwork::audit() const
    {
        std::vector<std::string> problems;
        for (const auto& [cid, c] : m_connectors)
        {
            std::map<Denomination, Rational> expected = m_initial.at(cid);
            for (const auto& hop : m_settled)
            {
                if (hop.connector_id != cid)
                    continue;
                expected[hop.denom_in] += hop.amount_in;
                expected[hop.denom_out] -= hop.amount_out;
            }

            std::set<Denomination> denoms;
            for (const auto& [d, _] : expected)
                denoms.insert(d);
            for (const auto& [d, _] : c.reserves)
                denoms.insert(d);

            for (const auto& d : denoms)
            {
                Rational actual = c.reserves.count(d) ? c.reserves.at(d) : Rational(0);
                Rational want = expected.count(d) ? expected.at(d) : Rational(0);
                if (actual != want)
                    problems.push_back(cid.str() + ": " + d.str() + " reserve " + to_string(actual) +
                                       " != conserved " + to_string(want));
                if (actual < 0)
                    problems.push_back(cid.str() + ": negative " + d.str() + " reserve");
                if (c.reserved(d) > actual)
                    problems.push_back(cid.str() + ": " + d.str() + " over-reserved");
            }
        }
        return problems;
    }
}
