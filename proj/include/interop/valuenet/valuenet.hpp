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

#include "interop/common/rational.hpp"
#include "interop/common/types.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace interop::valuenet
{
    using DenomPair = std::pair<Denomination, Denomination>;

    struct Reservation
    {
        PathId path_id;
        Denomination denom_in;
        Denomination denom_out;
        Rational amount_out;
        Tick expiry_tick = 0;
    };

    struct Connector
    {
        ConnectorId connector_id;
        std::set<ChainId> adjacent_chains;
        std::map<Denomination, Rational> reserves;
        std::map<DenomPair, Rational> rates;
        std::vector<Reservation> reservations;

        Rational reserved(const Denomination& denom) const;
        Rational free(const Denomination& denom) const;
    };

    struct Hop
    {
        ConnectorId connector_id;
        ChainId from_chain;
        ChainId to_chain;
        Denomination denom_in;
        Denomination denom_out;
        Rational amount_in;
        Rational amount_out;
    };

    enum class PathState
    {
        Reserved,
        Settled,
        Released,
    };

    std::string_view to_string(PathState state);

    struct PaymentPath
    {
        PathId path_id;
        std::vector<Hop> hops;
        ChainId sender_chain;
        ChainId receiver_chain;
        PathState state = PathState::Reserved;
        Tick created_tick = 0;
        Tick expiry_tick = 0;
        bool expired = false;

        const Rational& delivered() const { return hops.back().amount_out; }
    };

    /// One step of a route: cross `connector` from one chain segment to the next.
    struct RouteStep
    {
        ConnectorId connector_id;
        ChainId from_chain;
        ChainId to_chain;

        auto operator<=>(const RouteStep&) const = default;
        bool operator==(const RouteStep&) const = default;
    };

    /// Connector network over currency chain segments. All arithmetic is
    /// exact; connectors charge no fee.
    class ValueNetwork
    {
    public:
        explicit ValueNetwork(Tick reservation_ttl = 50) : m_ttl(reservation_ttl) {}

        void add_segment(const ChainId& chain, const Denomination& denom);
        void add_connector(const ConnectorId& id, std::set<ChainId> adjacent,
                           std::map<Denomination, Rational> reserves, std::map<DenomPair, Rational> rates);

        /// Fewest hops; ties go to the lexicographically smallest
        /// (connector, next chain) sequence. Throws NoRoute.
        std::vector<RouteStep> route(const ChainId& sender, const ChainId& receiver) const;

        /// Reserves every hop or none. Throws NoRoute, Overloaded, InvalidArgument.
        PaymentPath build_path(const PathId& id, const ChainId& sender, const ChainId& receiver,
                               const Rational& amount, const Denomination& denom_in, const Denomination& denom_out,
                               Tick now);

        /// Throws PathExpired, AlreadyTerminal, NotFound.
        PaymentPath settle_path(const PathId& id, Tick now);
        PaymentPath release_path(const PathId& id);

        /// Releases every reserved path whose expiry has arrived.
        std::vector<PathId> expire(Tick now);
        std::optional<Tick> next_expiry() const;

        const Connector& connector(const ConnectorId& id) const;
        const std::map<ConnectorId, Connector>& connectors() const noexcept { return m_connectors; }
        const PaymentPath& path(const PathId& id) const;
        const std::map<PathId, PaymentPath>& paths() const noexcept { return m_paths; }
        const std::map<ChainId, Denomination>& segments() const noexcept { return m_segments; }

        Rational credited(const ChainId& chain, const Denomination& denom) const;

        /// Flattened (connector, path, denom_out, amount) of every live reservation.
        std::vector<std::string> reservation_set() const;

        /// Conservation against initial reserves, non-negativity and
        /// reservation coverage. Empty means healthy.
        std::vector<std::string> audit() const;

    private:
        void drop_reservations(const PathId& id);
        Connector& connector_mut(const ConnectorId& id);

        Tick m_ttl;
        std::map<ChainId, Denomination> m_segments;
        std::map<ConnectorId, Connector> m_connectors;
        std::map<ConnectorId, std::map<Denomination, Rational>> m_initial;
        std::map<PathId, PaymentPath> m_paths;
        std::map<std::pair<ChainId, Denomination>, Rational> m_credits;
        std::vector<Hop> m_settled;
    };
}
