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


#include "interop/scenario/loader.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace interop::scenario
{
    namespace
    {
        using nlohmann::json;

        std::string join(const std::vector<std::string>& items)
        {
            std::string out;
            for (const auto& s : items)
                out += "\n  " + s;
            return out;
        }

        /// Walks one JSON object, collecting type errors instead of throwing,
        /// and reporting keys nobody asked for.
        class Fields
        {
        public:
            Fields(const json& node, std::string path, std::vector<std::string>& errors)
                : m_node(node)
                , m_path(std::move(path))
                , m_errors(errors)
            {
                if (!node.is_object())
                    error("", "expected an object");
            }

            ~Fields()
            {
                if (!m_node.is_object())
                    return;
                for (const auto& [key, value] : m_node.items())
                    if (!m_seen.count(key))
                        m_errors.push_back(at(key) + ": unknown field");
            }

            std::string at(const std::string& key) const { return m_path.empty() ? key : m_path + "." + key; }

            void error(const std::string& key, const std::string& what)
            {
                m_errors.push_back((key.empty() ? m_path : at(key)) + ": " + what);
            }

            const json* get(const std::string& key, bool required)
            {
                m_seen.insert(key);
                if (!m_node.is_object())
                    return nullptr;
                auto it = m_node.find(key);
                if (it == m_node.end() || it->is_null())
                {
                    if (required)
                        error(key, "required");
                    return nullptr;
                }
                return &*it;
            }

            template <class T>
            void integer(const std::string& key, T& out, bool required = false)
            {
                if (const json* v = get(key, required))
                {
                    if (v->is_number_integer())
                        out = v->get<T>();
                    else
                        error(key, "expected an integer");
                }
            }

            template <class T>
            void integer(const std::string& key, std::optional<T>& out)
            {
                if (const json* v = get(key, false))
                {
                    if (v->is_number_integer())
                        out = v->get<T>();
                    else
                        error(key, "expected an integer");
                }
            }

            void boolean(const std::string& key, bool& out)
            {
                if (const json* v = get(key, false))
                {
                    if (v->is_boolean())
                        out = v->get<bool>();
                    else
                        error(key, "expected true or false");
                }
            }

            void text(const std::string& key, std::string& out, bool required = false)
            {
                if (const json* v = get(key, required))
                {
                    if (v->is_string() && !v->get<std::string>().empty())
                        out = v->get<std::string>();
                    else
                        error(key, "expected a non-empty string");
                }
            }

            template <class IdT>
            void id(const std::string& key, IdT& out, bool required = true)
            {
                std::string s;
                text(key, s, required);
                if (!s.empty())
                    out = IdT(s);
            }

            template <class IdT>
            void id(const std::string& key, std::optional<IdT>& out)
            {
                std::string s;
                text(key, s, false);
                if (!s.empty())
                    out = IdT(s);
            }

            void rational(const std::string& key, Rational& out, bool required = false)
            {
                if (const json* v = get(key, required))
                    out = parse_rational_value(*v, at(key));
            }

            Rational parse_rational_value(const json& v, const std::string& where)
            {
                try
                {
                    if (v.is_number_integer())
                        return Rational(v.get<std::int64_t>());
                    if (v.is_string())
                        return parse_rational(v.get<std::string>());
                }
                catch (const Error&)
                {
                }
                m_errors.push_back(where + ": expected an exact number such as 3, \"1.25\" or \"5/4\"");
                return Rational(0);
            }

            template <class IdT>
            void id_list(const std::string& key, std::vector<IdT>& out, bool required = false)
            {
                const json* v = get(key, required);
                if (!v)
                    return;
                if (!v->is_array())
                {
                    error(key, "expected a list");
                    return;
                }
                for (std::size_t i = 0; i < v->size(); ++i)
                {
                    const json& e = (*v)[i];
                    if (e.is_string() && !e.get<std::string>().empty())
                        out.emplace_back(e.get<std::string>());
                    else
                        m_errors.push_back(at(key) + "[" + std::to_string(i) + "]: expected a non-empty string");
                }
            }

            void semantic(const std::string& key, chain::SemanticType& out)
            {
                std::string s;
                text(key, s);
                if (s.empty())
                    return;
                if (auto t = chain::parse_semantic_type(s))
                    out = *t;
                else
                    error(key, "unknown semantic type '" + s + "'");
            }

            /// Calls fn(element, path) for every element of a list field.
            template <class Fn>
            void each(const std::string& key, Fn&& fn)
            {
                const json* v = get(key, false);
                if (!v)
                    return;
                if (!v->is_array())
                {
                    error(key, "expected a list");
                    return;
                }
                for (std::size_t i = 0; i < v->size(); ++i)
                    fn((*v)[i], at(key) + "[" + std::to_string(i) + "]");
            }

            std::vector<std::string>& errors() { return m_errors; }

        private:
            const json& m_node;
            std::string m_path;
            std::vector<std::string>& m_errors;
            std::set<std::string> m_seen;
        };

        simnet::FaultKind parse_fault_kind(const std::string& s, bool& ok)
        {
            ok = true;
            if (s == "partition")
                return simnet::FaultKind::Partition;
            if (s == "node_crash")
                return simnet::FaultKind::NodeCrash;
            if (s == "gateway_crash")
                return simnet::FaultKind::GatewayCrash;
            if (s == "heal")
                return simnet::FaultKind::Heal;
            ok = false;
            return simnet::FaultKind::Partition;
        }

        ScenarioConfig decode(const json& root, std::vector<std::string>& errors)
        {
            ScenarioConfig cfg;
            Fields top(root, "", errors);
            top.text("name", cfg.name);
            top.integer("seed", cfg.seed);
            top.integer("horizon", cfg.horizon, true);

            if (const json* n = top.get("network", false))
            {
                Fields f(*n, "network", errors);
                auto& net = cfg.network;
                f.integer("inter_chain_latency", net.inter_chain_latency);
                f.integer("intra_chain_latency", net.intra_chain_latency);
                f.integer("client_latency", net.client_latency);
                f.integer("latency_jitter", net.latency_jitter);
                f.integer("advertise_interval", net.advertise_interval);
                f.integer("retransmit_interval", net.retransmit_interval);
                f.integer("reservation_ttl", net.reservation_ttl);
                Rational loss{0};
                f.rational("loss_rate", loss);
                if (loss != 0)
                    f.error("loss_rate", "background loss is reserved and must be 0; use faults");
            }

            top.each("chains", [&](const json& e, const std::string& path) {
                Fields f(e, path, errors);
                ChainSpec c;
                f.id("id", c.id);
                f.text("path", c.path);
                f.integer("nodes", c.nodes);
                f.integer("gateways", c.gateways);
                f.rational("quorum", c.quorum);
                f.integer("latency", c.latency);
                f.semantic("semantic_type", c.semantic);
                f.id("denomination", c.denomination);
                if (const json* r = f.get("regime", false))
                {
                    Fields g(*r, f.at("regime"), errors);
                    g.boolean("node", c.regime.node_permissioned);
                    g.boolean("consensus", c.regime.consensus_permissioned);
                    g.boolean("user_write", c.regime.user_write_permissioned);
                    g.boolean("user_read", c.regime.user_read_permissioned);
                }
                cfg.chains.push_back(std::move(c));
            });

            top.each("apps", [&](const json& e, const std::string& path) {
                Fields f(e, path, errors);
                AppSpec a;
                f.id("id", a.id);
                f.each("access", [&](const json& x, const std::string& p) {
                    Fields g(x, p, errors);
                    AccessSpec acc;
                    g.id("chain", acc.chain);
                    g.boolean("read", acc.read);
                    g.boolean("write", acc.write);
                    a.access.push_back(acc);
                });
                cfg.apps.push_back(std::move(a));
            });

            top.each("assets", [&](const json& e, const std::string& path) {
                Fields f(e, path, errors);
                AssetSpec a;
                f.text("name", a.name, true);
                f.id("chain", a.chain);
                f.id("owner", a.owner);
                f.integer("at", a.at);
                cfg.assets.push_back(std::move(a));
            });

            top.each("peering", [&](const json& e, const std::string& path) {
                Fields f(e, path, errors);
                PeeringSpec p;
                f.id("id", p.id);
                f.id_list("parties", p.parties);
                f.boolean("open", p.open);
                f.each("semantics", [&](const json& x, const std::string& where) {
                    auto t = x.is_string() ? chain::parse_semantic_type(x.get<std::string>()) : std::nullopt;
                    if (t)
                        p.semantics.push_back(*t);
                    else
                        errors.push_back(where + ": unknown semantic type");
                });
                f.rational("fee", p.fee);
                f.integer("at", p.at);
                f.integer("revoke_at", p.revoke_at);
                cfg.peering.push_back(std::move(p));
            });

            top.each("connectors", [&](const json& e, const std::string& path) {
                Fields f(e, path, errors);
                ConnectorSpec c;
                f.id("id", c.id);
                f.id_list("chains", c.chains, true);
                if (const json* r = f.get("reserves", true))
                {
                    if (!r->is_object())
                        f.error("reserves", "expected an object of denomination to amount");
                    else
                        for (const auto& [denom, amount] : r->items())
                            c.reserves[Denomination(denom)] =
                                f.parse_rational_value(amount, f.at("reserves") + "." + denom);
                }
                f.each("rates", [&](const json& x, const std::string& where) {
                    Fields g(x, where, errors);
                    Denomination in, out;
                    Rational rate{0};
                    g.id("in", in);
                    g.id("out", out);
                    g.rational("rate", rate, true);
                    c.rates[{in, out}] = rate;
                });
                cfg.connectors.push_back(std::move(c));
            });

            top.each("app_txns", [&](const json& e, const std::string& path) {
                Fields f(e, path, errors);
                AppTxnSpec t;
                f.id("id", t.id);
                f.id("app", t.app);
                f.integer("start", t.start);
                f.each("sub_txns", [&](const json& x, const std::string& where) {
                    Fields g(x, where, errors);
                    SubTxnSpec s;
                    g.text("payload", s.payload, true);
                    g.id_list("candidates", s.candidates, true);
                    g.integer("timeout", s.timeout);
                    g.id("peer", s.peer);
                    t.subs.push_back(std::move(s));
                });
                cfg.app_txns.push_back(std::move(t));
            });

            top.each("transfers", [&](const json& e, const std::string& path) {
                Fields f(e, path, errors);
                TransferSpec t;
                f.id("id", t.id);
                f.text("asset", t.asset, true);
                f.id("source", t.source);
                f.id("dest", t.dest);
                f.id("beneficiary", t.beneficiary);
                f.integer("start", t.start);
                f.integer("deadline", t.deadline);
                std::optional<std::uint32_t> both;
                f.integer("threshold", both);
                f.integer("source_threshold", t.source_threshold);
                f.integer("dest_threshold", t.dest_threshold);
                if (both)
                {
                    if (!t.source_threshold)
                        t.source_threshold = both;
                    if (!t.dest_threshold)
                        t.dest_threshold = both;
                }
                std::vector<GatewayId> pair;
                f.id_list("pairing", pair);
                if (pair.size() == 2)
                    t.pairing = std::make_pair(pair[0], pair[1]);
                else if (!pair.empty())
                    f.error("pairing", "expected [source gateway, destination gateway]");
                cfg.transfers.push_back(std::move(t));
            });

            top.each("payments", [&](const json& e, const std::string& path) {
                Fields f(e, path, errors);
                PaymentSpec p;
                f.id("id", p.id);
                f.id("sender", p.sender);
                f.id("receiver", p.receiver);
                f.rational("amount", p.amount, true);
                f.id("denom_in", p.denom_in);
                f.id("denom_out", p.denom_out);
                f.integer("start", p.start);
                f.integer("settle_at", p.settle_at);
                f.integer("release_at", p.release_at);
                cfg.payments.push_back(std::move(p));
            });

            top.each("grants", [&](const json& e, const std::string& path) {
                Fields f(e, path, errors);
                GrantSpec g;
                f.id("id", g.id);
                f.id("grantor", g.grantor);
                f.id("grantee", g.grantee);
                f.text("asset", g.asset, true);
                f.integer("at", g.at);
                f.integer("expiry", g.expiry, true);
                cfg.grants.push_back(std::move(g));
            });

            top.each("reads", [&](const json& e, const std::string& path) {
                Fields f(e, path, errors);
                ReadSpec r;
                f.text("id", r.id, true);
                f.id("requester", r.requester);
                f.id("grant", r.grant);
                f.text("asset", r.asset, true);
                f.integer("at", r.at);
                f.id("via", r.via);
                cfg.reads.push_back(std::move(r));
            });

            top.each("probes", [&](const json& e, const std::string& path) {
                Fields f(e, path, errors);
                ProbeSpec p;
                f.id("chain", p.chain);
                f.integer("at", p.at);
                cfg.probes.push_back(p);
            });

            top.each("lookups", [&](const json& e, const std::string& path) {
                Fields f(e, path, errors);
                LookupSpec l;
                f.text("asset", l.asset, true);
                f.integer("at", l.at);
                cfg.lookups.push_back(l);
            });

            top.each("faults", [&](const json& e, const std::string& path) {
                Fields f(e, path, errors);
                simnet::FaultSpec s;
                f.text("id", s.id, true);
                std::string kind;
                f.text("kind", kind, true);
                bool ok = true;
                if (!kind.empty())
                {
                    s.kind = parse_fault_kind(kind, ok);
                    if (!ok)
                        f.error("kind", "unknown fault kind '" + kind + "'");
                }
                std::vector<ChainId> chains;
                f.id_list("chains", chains);
                for (const auto& c : chains)
                    s.domains.push_back(c.str());
                f.each("links", [&](const json& x, const std::string& where) {
                    if (x.is_array() && x.size() == 2 && x[0].is_string() && x[1].is_string())
                        s.links.emplace_back(x[0].get<std::string>(), x[1].get<std::string>());
                    else
                        errors.push_back(where + ": expected a pair of domain names");
                });
                f.id("chain", s.chain, false);
                f.id_list("nodes", s.nodes);
                f.integer("count", s.count);
                f.id("gateway", s.gateway, false);
                f.text("target", s.target);
                f.integer("at", s.at_tick);
                f.integer("until", s.until_tick);
                cfg.faults.push_back(std::move(s));
            });

            return cfg;
        }

        std::size_t line_of(const std::string& text, std::size_t byte)
        {
            byte = std::min(byte, text.size());
            return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
        }
    }

    ScenarioError::ScenarioError(Errc code, std::vector<std::string> problems)
        : Error(code, std::to_string(problems.size()) + " problem(s):" + join(problems))
        , m_problems(std::move(problems))
    {
    }

    ScenarioConfig parse(const std::string& text)
    {
        json root;
        try
        {
            root = json::parse(text);
        }
        catch (const json::parse_error& e)
        {
            std::string msg = e.what();
            if (auto pos = msg.find("syntax error"); pos != std::string::npos)
                msg = msg.substr(pos);
            throw ScenarioError(Errc::ParseError, {"line " + std::to_string(line_of(text, e.byte)) + ": " + msg});
        }

        std::vector<std::string> errors;
        ScenarioConfig cfg = decode(root, errors);
        if (errors.empty())
            errors = validate(cfg);
        if (!errors.empty())
            throw ScenarioError(Errc::ValidationError, std::move(errors));
        return cfg;
    }

    ScenarioConfig load(const std::filesystem::path& path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw ScenarioError(Errc::IoError, {path.string() + ": cannot open"});
        std::ostringstream buf;
        buf << in.rdbuf();
        return parse(buf.str());
    }

    std::vector<std::string> validate(const ScenarioConfig& cfg)
    {
        std::vector<std::string> errors;
        auto err = [&](const std::string& path, const std::string& what) { errors.push_back(path + ": " + what); };
        auto idx = [](const std::string& list, std::size_t i) { return list + "[" + std::to_string(i) + "]"; };

        if (cfg.horizon <= 0)
            err("horizon", "must be positive");
        const auto& net = cfg.network;
        if (net.inter_chain_latency < 0 || net.intra_chain_latency < 0 || net.client_latency < 0 ||
            net.latency_jitter < 0)
            err("network", "latencies must not be negative");
        if (net.advertise_interval < 0 || net.retransmit_interval < 0)
            err("network", "intervals must not be negative");
        if (net.reservation_ttl <= 0)
            err("network.reservation_ttl", "must be positive");

        std::map<ChainId, const ChainSpec*> chains;
        std::set<std::string> paths;
        std::set<GatewayId> gateways;
        for (std::size_t i = 0; i < cfg.chains.size(); ++i)
        {
            const auto& c = cfg.chains[i];
            std::string p = idx("chains", i);
            if (c.id.empty())
                continue;
            if (c.id.str() == simnet::kClientDomain)
                err(p + ".id", "'client' is reserved");
            if (c.id.str().find_first_of(" ~:") != std::string::npos)
                err(p + ".id", "must not contain spaces, '~' or ':'");
            if (!chains.emplace(c.id, &c).second)
                err(p + ".id", "duplicate chain '" + c.id.str() + "'");
            std::string path = c.path.empty() ? c.id.str() : c.path;
            if (!paths.insert(path).second)
                err(p + ".path", "duplicate path '" + path + "'");
            if (path.find_first_of(" ~") != std::string::npos)
                err(p + ".path", "must not contain spaces or '~'");
            if (c.nodes == 0 || c.nodes > 10000)
                err(p + ".nodes", "must lie in [1, 10000]");
            if (c.gateways > 1000)
                err(p + ".gateways", "at most 1000");
            if (c.quorum <= 0 || c.quorum > 1)
                err(p + ".quorum", "must lie in (0, 1]");
            if (c.latency <= 0)
                err(p + ".latency", "must be positive");
            if (!c.regime.valid())
                err(p + ".regime", "node-permissioned chains must be consensus-permissioned");
            for (std::size_t g = 0; g < c.gateways; ++g)
                gateways.insert(GatewayId(gateway_name(c.id, g)));
        }
        auto chain_ok = [&](const ChainId& id, const std::string& path) {
            if (id.empty())
                return false;
            if (!chains.count(id))
            {
                err(path, "unknown chain '" + id.str() + "'");
                return false;
            }
            return true;
        };
        auto gateway_count = [&](const ChainId& id) -> std::size_t {
            auto it = chains.find(id);
            return it == chains.end() ? 0 : it->second->gateways;
        };
        auto tick_ok = [&](Tick t, const std::string& path) {
            if (t < 0 || t > cfg.horizon)
                err(path, "must lie within [0, horizon]");
        };

        std::set<AppId> apps;
        for (std::size_t i = 0; i < cfg.apps.size(); ++i)
        {
            const auto& a = cfg.apps[i];
            std::string p = idx("apps", i);
            if (!a.id.empty() && !apps.insert(a.id).second)
                err(p + ".id", "duplicate app '" + a.id.str() + "'");
            for (std::size_t j = 0; j < a.access.size(); ++j)
                chain_ok(a.access[j].chain, idx(p + ".access", j) + ".chain");
        }
        auto app_ok = [&](const AppId& id, const std::string& path) {
            if (!id.empty() && !apps.count(id))
                err(path, "unknown app '" + id.str() + "'");
        };

        std::set<std::string> assets;
        for (std::size_t i = 0; i < cfg.assets.size(); ++i)
        {
            const auto& a = cfg.assets[i];
            std::string p = idx("assets", i);
            if (!a.name.empty() && !assets.insert(a.name).second)
                err(p + ".name", "duplicate asset '" + a.name + "'");
            chain_ok(a.chain, p + ".chain");
            app_ok(a.owner, p + ".owner");
            tick_ok(a.at, p + ".at");
        }
        auto asset_ok = [&](const std::string& name, const std::string& path) {
            if (!name.empty() && !assets.count(name))
                err(path, "unknown asset '" + name + "'");
        };

        std::set<AgreementId> agreements;
        for (std::size_t i = 0; i < cfg.peering.size(); ++i)
        {
            const auto& a = cfg.peering[i];
            std::string p = idx("peering", i);
            if (!a.id.empty() && !agreements.insert(a.id).second)
                err(p + ".id", "duplicate agreement '" + a.id.str() + "'");
            for (std::size_t j = 0; j < a.parties.size(); ++j)
                chain_ok(a.parties[j], idx(p + ".parties", j));
            if (!a.open && std::set<ChainId>(a.parties.begin(), a.parties.end()).size() < 2)
                err(p + ".parties", "a closed agreement needs at least two distinct parties");
            if (a.fee < 0)
                err(p + ".fee", "must not be negative");
            tick_ok(a.at, p + ".at");
            if (a.revoke_at && *a.revoke_at < a.at)
                err(p + ".revoke_at", "must not precede establishment");
        }

        std::set<ConnectorId> connectors;
        for (std::size_t i = 0; i < cfg.connectors.size(); ++i)
        {
            const auto& c = cfg.connectors[i];
            std::string p = idx("connectors", i);
            if (!c.id.empty() && !connectors.insert(c.id).second)
                err(p + ".id", "duplicate connector '" + c.id.str() + "'");
            if (c.chains.size() < 2)
                err(p + ".chains", "a connector joins at least two chains");
            std::set<Denomination> denoms;
            for (std::size_t j = 0; j < c.chains.size(); ++j)
            {
                std::string cp = idx(p + ".chains", j);
                if (!chain_ok(c.chains[j], cp))
                    continue;
                if (const auto& d = chains.at(c.chains[j])->denomination)
                    denoms.insert(*d);
                else
                    err(cp, "chain '" + c.chains[j].str() + "' has no denomination");
            }
            for (const auto& [d, amount] : c.reserves)
            {
                if (!denoms.count(d))
                    err(p + ".reserves." + d.str(), "not a denomination of an adjacent chain");
                if (amount < 0)
                    err(p + ".reserves." + d.str(), "must not be negative");
            }
            std::size_t j = 0;
            for (const auto& [pair, rate] : c.rates)
            {
                std::string rp = idx(p + ".rates", j++);
                if (!denoms.count(pair.first) || !denoms.count(pair.second))
                    err(rp, "rate between unknown denominations");
                if (rate <= 0)
                    err(rp + ".rate", "must be positive");
            }
        }

        std::set<AppTxnId> txns;
        for (std::size_t i = 0; i < cfg.app_txns.size(); ++i)
        {
            const auto& t = cfg.app_txns[i];
            std::string p = idx("app_txns", i);
            if (!t.id.empty() && !txns.insert(t.id).second)
                err(p + ".id", "duplicate app transaction '" + t.id.str() + "'");
            app_ok(t.app, p + ".app");
            tick_ok(t.start, p + ".start");
            if (t.subs.empty())
                err(p + ".sub_txns", "at least one sub-transaction");
            for (std::size_t j = 0; j < t.subs.size(); ++j)
            {
                const auto& s = t.subs[j];
                std::string sp = idx(p + ".sub_txns", j);
                if (s.candidates.empty())
                    err(sp + ".candidates", "at least one candidate chain");
                std::set<ChainId> seen;
                std::optional<chain::SemanticType> type;
                for (std::size_t k = 0; k < s.candidates.size(); ++k)
                {
                    std::string cp = idx(sp + ".candidates", k);
                    if (!chain_ok(s.candidates[k], cp))
                        continue;
                    if (!seen.insert(s.candidates[k]).second)
                        err(cp, "candidate listed twice");
                    auto st = chains.at(s.candidates[k])->semantic;
                    if (type && *type != st)
                        err(cp, "candidates must share one semantic type");
                    type = type.value_or(st);
                }
                if (s.timeout && *s.timeout <= 0)
                    err(sp + ".timeout", "must be positive");
                if (s.peer)
                    app_ok(*s.peer, sp + ".peer");
            }
        }

        std::set<TransferId> transfers;
        for (std::size_t i = 0; i < cfg.transfers.size(); ++i)
        {
            const auto& t = cfg.transfers[i];
            std::string p = idx("transfers", i);
            if (!t.id.empty() && !transfers.insert(t.id).second)
                err(p + ".id", "duplicate transfer '" + t.id.str() + "'");
            asset_ok(t.asset, p + ".asset");
            bool src = chain_ok(t.source, p + ".source");
            bool dst = chain_ok(t.dest, p + ".dest");
            if (src && dst && t.source == t.dest)
                err(p + ".dest", "must differ from source");
            app_ok(t.beneficiary, p + ".beneficiary");
            tick_ok(t.start, p + ".start");
            if (t.deadline <= 0)
                err(p + ".deadline", "must be positive");
            else if (t.start + t.deadline > cfg.horizon)
                err(p + ".deadline", "start + deadline must not exceed the horizon");
            if (t.source_threshold && (*t.source_threshold == 0 || (src && *t.source_threshold > gateway_count(t.source))))
                err(p + ".source_threshold", "must lie in [1, gateways of source]");
            if (t.dest_threshold && (*t.dest_threshold == 0 || (dst && *t.dest_threshold > gateway_count(t.dest))))
                err(p + ".dest_threshold", "must lie in [1, gateways of destination]");
            if (src && gateway_count(t.source) == 0)
                err(p + ".source", "chain has no gateways");
            if (dst && gateway_count(t.dest) == 0)
                err(p + ".dest", "chain has no gateways");
            if (t.pairing)
            {
                if (!gateways.count(t.pairing->first) || t.pairing->first.str().rfind(t.source.str() + ".", 0) != 0)
                    err(p + ".pairing[0]", "not a gateway of the source chain");
                if (!gateways.count(t.pairing->second) || t.pairing->second.str().rfind(t.dest.str() + ".", 0) != 0)
                    err(p + ".pairing[1]", "not a gateway of the destination chain");
            }
        }

        std::set<PathId> payments;
        for (std::size_t i = 0; i < cfg.payments.size(); ++i)
        {
            const auto& pay = cfg.payments[i];
            std::string p = idx("payments", i);
            if (!pay.id.empty() && !payments.insert(pay.id).second)
                err(p + ".id", "duplicate payment '" + pay.id.str() + "'");
            chain_ok(pay.sender, p + ".sender");
            chain_ok(pay.receiver, p + ".receiver");
            if (pay.amount <= 0)
                err(p + ".amount", "must be positive");
            tick_ok(pay.start, p + ".start");
            if (pay.settle_at && *pay.settle_at < pay.start)
                err(p + ".settle_at", "must not precede start");
            if (pay.release_at && *pay.release_at < pay.start)
                err(p + ".release_at", "must not precede start");
            if (pay.settle_at && pay.release_at)
                err(p, "settle_at and release_at are exclusive");
        }

        std::set<GrantId> grants;
        for (std::size_t i = 0; i < cfg.grants.size(); ++i)
        {
            const auto& g = cfg.grants[i];
            std::string p = idx("grants", i);
            if (!g.id.empty() && !grants.insert(g.id).second)
                err(p + ".id", "duplicate grant '" + g.id.str() + "'");
            app_ok(g.grantor, p + ".grantor");
            app_ok(g.grantee, p + ".grantee");
            asset_ok(g.asset, p + ".asset");
            tick_ok(g.at, p + ".at");
            if (g.expiry <= g.at)
                err(p + ".expiry", "must be later than at");
        }

        std::set<std::string> reads;
        for (std::size_t i = 0; i < cfg.reads.size(); ++i)
        {
            const auto& r = cfg.reads[i];
            std::string p = idx("reads", i);
            if (!r.id.empty() && !reads.insert(r.id).second)
                err(p + ".id", "duplicate read '" + r.id + "'");
            app_ok(r.requester, p + ".requester");
            if (r.grant && !grants.count(*r.grant))
                err(p + ".grant", "unknown grant '" + r.grant->str() + "'");
            asset_ok(r.asset, p + ".asset");
            tick_ok(r.at, p + ".at");
            if (r.via && !gateways.count(*r.via))
                err(p + ".via", "unknown gateway '" + r.via->str() + "'");
        }

        for (std::size_t i = 0; i < cfg.probes.size(); ++i)
        {
            chain_ok(cfg.probes[i].chain, idx("probes", i) + ".chain");
            tick_ok(cfg.probes[i].at, idx("probes", i) + ".at");
        }
        for (std::size_t i = 0; i < cfg.lookups.size(); ++i)
        {
            asset_ok(cfg.lookups[i].asset, idx("lookups", i) + ".asset");
            tick_ok(cfg.lookups[i].at, idx("lookups", i) + ".at");
        }

        std::map<std::string, Tick> faults;
        auto domain_ok = [&](const std::string& d, const std::string& path) {
            if (d != simnet::kClientDomain && !chains.count(ChainId(d)))
                err(path, "unknown domain '" + d + "'");
        };
        for (std::size_t i = 0; i < cfg.faults.size(); ++i)
        {
            const auto& f = cfg.faults[i];
            std::string p = idx("faults", i);
            if (!f.id.empty() && faults.count(f.id))
                err(p + ".id", "duplicate fault '" + f.id + "'");
            tick_ok(f.at_tick, p + ".at");
            if (f.until_tick && *f.until_tick < f.at_tick)
                err(p + ".until", "must not precede at");
            switch (f.kind)
            {
            case simnet::FaultKind::Partition:
                if (f.domains.empty() == f.links.empty())
                    err(p, "a partition names either chains or links");
                for (std::size_t j = 0; j < f.domains.size(); ++j)
                    domain_ok(f.domains[j], idx(p + ".chains", j));
                for (std::size_t j = 0; j < f.links.size(); ++j)
                {
                    domain_ok(f.links[j].first, idx(p + ".links", j));
                    domain_ok(f.links[j].second, idx(p + ".links", j));
                }
                break;
            case simnet::FaultKind::NodeCrash:
                if (!chain_ok(f.chain, p + ".chain"))
                    break;
                if (f.nodes.empty() && f.count == 0)
                    err(p, "name nodes or a positive count");
                if (f.count > chains.at(f.chain)->nodes)
                    err(p + ".count", "more than the chain's nodes");
                for (std::size_t j = 0; j < f.nodes.size(); ++j)
                {
                    bool found = false;
                    for (std::size_t n = 0; n < chains.at(f.chain)->nodes; ++n)
                        found = found || f.nodes[j].str() == node_name(f.chain, n);
                    if (!found)
                        err(idx(p + ".nodes", j), "unknown node '" + f.nodes[j].str() + "'");
                }
                break;
            case simnet::FaultKind::GatewayCrash:
                if (!gateways.count(f.gateway))
                    err(p + ".gateway", "unknown gateway '" + f.gateway.str() + "'");
                break;
            case simnet::FaultKind::Heal:
            {
                auto it = faults.find(f.target);
                if (it == faults.end())
                    err(p + ".target", "must name an earlier fault");
                else if (it->second > f.at_tick)
                    err(p + ".at", "heal precedes its target");
                break;
            }
            }
            if (!f.id.empty())
                faults.emplace(f.id, f.at_tick);
        }

        return errors;
    }
}
