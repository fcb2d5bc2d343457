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
#include "interop/common/error.hpp"

#include <algorithm>
#include <sstream>

namespace interop::simnet
{
    using interop::to_string;

    namespace
    {
        const char* const kAudits[] = {
            "single_authority",   "no_lost_assets",    "attestation_necessity", "transition_validity",
            "mask_bijection",     "append_only",       "quorum_soundness",      "semantic_gating",
            "partition_delivery", "clock_monotonic",   "reservation_atomicity", "value_conservation",
            "opacity",            "attempt_order",     "workload_outcomes",     "internal",
        };

        std::string strip_prefix(const std::string& text, const std::string& prefix)
        {
            return text.rfind(prefix, 0) == 0 ? text.substr(prefix.size()) : text;
        }

        std::string err_name(const Error& e)
        {
            return std::string(to_string(e.code()));
        }
    }

    World::World(scenario::ScenarioConfig config)
        : m_config(std::move(config))
        , m_kernel(m_config.seed)
        , m_network(LatencyConfig{m_config.network.inter_chain_latency, m_config.network.intra_chain_latency,
                                  m_config.network.client_latency, m_config.network.latency_jitter})
        , m_value(m_config.network.reservation_ttl)
        , m_survivor(*this)
        , m_transfers(*this, gateway::TransferOptions{m_config.network.retransmit_interval})
    {
        for (const char* name : kAudits)
            m_audits.push_back(AuditResult{name, 0, {}});
        try
        {
            build();
        }
        catch (const Error& e)
        {
            fail(Errc::ScenarioInvalid, e.what());
        }
    }

    void World::build()
    {
        for (const auto& spec : m_config.chains)
        {
            if (m_chains.count(spec.id))
                fail(Errc::InvalidArgument, "duplicate chain " + spec.id.str());
            chain::ChainConfig cc;
            cc.id = spec.id;
            cc.path = spec.path.empty() ? spec.id.str() : spec.path;
            cc.node_count = spec.nodes;
            cc.regime = spec.regime;
            cc.confirm_quorum_fraction = spec.quorum;
            cc.confirm_latency_ticks = spec.latency;
            cc.semantic_type = spec.semantic;
            for (std::size_t i = 0; i < spec.gateways; ++i)
                cc.gateways.emplace_back(scenario::gateway_name(spec.id, i));

            auto c = std::make_unique<chain::Chain>(cc);
            for (const auto& gid : cc.gateways)
            {
                gateway::Gateway gw;
                gw.gateway_id = gid;
                gw.home_chain = spec.id;
                m_kernel.rng().fill(gw.signing_key);
                m_registry.add(gw);
            }
            m_resolver.register_chain(c->path(), spec.id);
            m_network.add_domain(spec.id.str());
            if (spec.denomination)
                m_value.add_segment(spec.id, *spec.denomination);
            m_ledger_dumps[spec.id] = "";
            m_chains.emplace(spec.id, std::move(c));
        }

        for (const auto& app : m_config.apps)
            for (const auto& a : app.access)
                chain(a.chain).access().grant(app.id, scenario::credential_token(app.id, a.chain),
                                              chain::Rights{a.read, a.write});

        for (const auto& c : m_config.connectors)
            m_value.add_connector(c.id, std::set<ChainId>(c.chains.begin(), c.chains.end()), c.reserves, c.rates);
    }

    chain::Chain& World::chain(const ChainId& id)
    {
        auto it = m_chains.find(id);
        if (it == m_chains.end())
            fail(Errc::UnknownTarget, "no chain " + id.str());
        return *it->second;
    }

    const chain::Chain& World::chain(const ChainId& id) const
    {
        return const_cast<World*>(this)->chain(id);
    }

    std::optional<identity::CrossId> World::asset_id(const std::string& name) const
    {
        auto it = m_assets.find(name);
        if (it == m_assets.end())
            return std::nullopt;
        return it->second;
    }

    // ---- event plumbing

    std::function<void()> World::guarded(std::string what, std::function<void()> action)
    {
        return [this, what = std::move(what), action = std::move(action)] {
            try
            {
                action();
            }
            catch (const Error& e)
            {
                m_kernel.record("error", what, e.what());
            }
            catch (const std::exception& e)
            {
                m_kernel.record("error", what, e.what());
                check("internal", false, what + ": " + e.what());
            }
        };
    }

    void World::deliver(const std::string& from, const std::string& to, std::string subject, std::string detail,
                        std::function<bool()> receiver_up, std::function<void()> action)
    {
        Tick delay = m_network.latency(from, to, m_kernel.rng());
        std::string route = from + "->" + to;
        auto body = [this, from, to, route, subject, detail, receiver_up = std::move(receiver_up),
                     action = std::move(action)]() {
            if (!m_network.connected(from, to))
            {
                m_kernel.record("drop", subject, detail + " link=" + route + " reason=partition");
                return;
            }
            if (receiver_up && !receiver_up())
            {
                m_kernel.record("drop", subject, detail + " link=" + route + " reason=receiver-down");
                return;
            }
            check("partition_delivery", !cut_by_active_fault(from, to), subject + " delivered across a cut link");
            m_kernel.record("deliver", subject, detail + " link=" + route);
            action();
        };
        m_kernel.schedule(EventKind::Deliver, subject, detail, delay, guarded(subject, std::move(body)));
    }

    // Independent of Network: re-derives cuts from the active fault specs.
    bool World::cut_by_active_fault(const std::string& a, const std::string& b) const
    {
        if (a == b)
            return false;
        for (const auto& [id, f] : m_partitions)
        {
            if (!f.domains.empty())
            {
                bool in_a = std::find(f.domains.begin(), f.domains.end(), a) != f.domains.end();
                bool in_b = std::find(f.domains.begin(), f.domains.end(), b) != f.domains.end();
                if (in_a != in_b)
                    return true;
            }
            for (const auto& [x, y] : f.links)
                if ((x == a && y == b) || (x == b && y == a))
                    return true;
        }
        return false;
    }

    // ---- TransferHost

    void World::submit_record(const GatewayId& via, const chain::TransferUnit& unit, const TransferId& owner,
                              gateway::TransferEvent on_confirm)
    {
        const auto* gw = m_registry.find(via);
        if (!gw)
            fail(Errc::UnknownTarget, "no gateway " + via.str());
        ChainId home = gw->home_chain;
        watch(home, unit.idempotency_key, owner, std::move(on_confirm));
        deliver(
            home.str(), home.str(), owner.str(), "submit key=" + unit.idempotency_key + " via=" + via.str(),
            [this, via] { return m_registry.at(via).live; },
            [this, via, home, unit] { chain(home).submit_as_gateway(via, unit, now()); });
    }

    void World::watch(const ChainId& chain_id, const std::string& key, const TransferId& owner,
                      gateway::TransferEvent on_confirm)
    {
        auto& c = chain(chain_id);
        if (auto ref = c.find_by_key(key); ref && c.ledger().find(*ref))
        {
            fire(Watcher{owner, std::move(on_confirm)}, *ref);
            return;
        }
        auto& list = m_watchers[{chain_id, key}];
        for (const auto& w : list)
            if (w.owner == owner && w.event.kind == on_confirm.kind)
                return;
        list.push_back(Watcher{owner, std::move(on_confirm)});
    }

    void World::fire(const Watcher& w, const LocalRef& ref)
    {
        gateway::TransferEvent ev = w.event;
        ev.ref = ref;
        TransferId owner = w.owner;
        m_kernel.schedule(EventKind::Timer, owner.str(), std::string(gateway::to_string(ev.kind)), 0,
                          guarded(owner.str(), [this, owner, ev] { m_transfers.handle(owner, ev); }));
    }

    void World::send(const GatewayId& from, const GatewayId& to, const TransferId& owner, gateway::TransferEvent ev)
    {
        const auto& src = m_registry.at(from);
        const auto& dst = m_registry.at(to);
        std::string detail = std::string(gateway::to_string(ev.kind)) + " from=" + from.str() + " to=" + to.str();
        if (!src.live)
        {
            m_kernel.record("drop", owner.str(), detail + " reason=sender-down");
            return;
        }
        deliver(
            src.home_chain.str(), dst.home_chain.str(), owner.str(), detail,
            [this, to] { return m_registry.at(to).live; },
            [this, owner, ev = std::move(ev)] { m_transfers.handle(owner, ev); });
    }

    void World::arm(const TransferId& owner, Tick at, gateway::TransferEvent ev)
    {
        std::string detail(gateway::to_string(ev.kind));
        m_kernel.schedule_at(EventKind::Timer, owner.str(), detail, at,
                             guarded(owner.str(), [this, owner, ev = std::move(ev)] { m_transfers.handle(owner, ev); }));
    }

    void World::on_transition(const gateway::CrossDomainTransfer& t, const gateway::TransitionRecord& rec)
    {
        std::string detail = std::string(gateway::to_string(rec.from)) + "->" + std::string(gateway::to_string(rec.to)) +
                             " actor=" + rec.actor.str();
        if (!rec.note.empty())
            detail += " note=\"" + rec.note + "\"";
        m_kernel.record("transition", t.transfer_id.str(), detail);
        log_marks(t, rec.to);

        bool created = rec.from == gateway::TransferState::Initiated && rec.to == gateway::TransferState::Initiated &&
                       t.transitions.size() == 1;
        check("transition_validity", created || gateway::is_allowed_transition(rec.from, rec.to),
              t.transfer_id.str() + " " + detail);

        if (rec.to == gateway::TransferState::Aborted)
        {
            bool home_ok = m_resolver.home(t.asset) == t.source_chain;
            auto holder = chain(t.source_chain).lock_holder(t.source_ref);
            bool released = !holder || *holder != t.transfer_id;
            check("no_lost_assets", home_ok && released && !t.lock_held,
                  t.transfer_id.str() + " aborted without authority retained and lock released at source");
        }
        if (rec.to == gateway::TransferState::Finalized)
        {
            bool vouched_before = rec.from == gateway::TransferState::Vouched;
            bool both = t.source_attestation && t.dest_attestation &&
                        gateway::verify_attestation(*t.source_attestation, m_registry) &&
                        gateway::verify_attestation(*t.dest_attestation, m_registry);
            check("attestation_necessity", vouched_before && both,
                  t.transfer_id.str() + " finalized without two valid attestations");
            check("no_lost_assets", m_resolver.home(t.asset) == t.dest_chain,
                  t.transfer_id.str() + " finalized but asset not homed at destination");
        }
    }

    void World::log_marks(const gateway::CrossDomainTransfer& t, gateway::TransferState to)
    {
        auto log_mark = [&](const ChainId& c, const LocalRef& ref) {
            if (const auto* m = chain(c).ledger().mark_of(ref))
                m_kernel.record("mark", c.str(), "ref=" + ref.str() + " " + chain::describe(*m));
        };
        if (to == gateway::TransferState::Finalized)
        {
            std::string subject = t.asset.str();
            for (const auto& [name, id] : m_assets)
                if (id == t.asset)
                    subject = name;
            const auto& ptr = m_resolver.history(t.asset).back();
            m_kernel.record("resolver", subject,
                            "rebind " + t.asset.str() + " home=" + ptr.home_chain.str() +
                                " from=" + (ptr.forwarded_from ? ptr.forwarded_from->str() : "-"));
            log_mark(t.source_chain, t.source_ref);
        }
        if (to == gateway::TransferState::Aborted && t.dest_record)
            log_mark(t.dest_chain, *t.dest_record);
    }

    void World::on_note(const gateway::CrossDomainTransfer& t, const std::string& note)
    {
        m_kernel.record(note.rfind("repair", 0) == 0 ? "repair" : "note", t.transfer_id.str(), note);
    }

    // ---- SurvivorHost

    Tick World::confirm_latency(const ChainId& id) const
    {
        return chain(id).confirm_latency();
    }

    void World::submit(const AppId& app, const ChainId& chain_id, const chain::TransferUnit& unit)
    {
        m_app_keys.insert(unit.idempotency_key);
        client_submit(app, chain_id, unit);
    }

    void World::client_submit(const AppId& app, const ChainId& chain_id, const chain::TransferUnit& unit)
    {
        deliver(kClientDomain, chain_id.str(), app.str(), "submit key=" + unit.idempotency_key, {},
                [this, app, chain_id, unit] {
                    try
                    {
                        chain(chain_id).submit(
                            unit, chain::Credential{app, scenario::credential_token(app, chain_id)}, now());
                    }
                    catch (const Error& e)
                    {
                        m_kernel.record("app", app.str(),
                                        "rejected key=" + unit.idempotency_key + " chain=" + chain_id.str() +
                                            " error=" + err_name(e));
                    }
                });
    }

    void World::arm_timer(const AppTxnId& txn, std::size_t sub, std::size_t attempt, Tick at)
    {
        std::string detail = "sub=" + std::to_string(sub) + " attempt=" + std::to_string(attempt);
        m_kernel.schedule_at(EventKind::Timer, txn.str(), detail, at,
                             guarded(txn.str(), [this, txn, sub, attempt] { m_survivor.on_timer(txn, sub, attempt); }));
    }

    std::vector<survivor::ScannedEntry> World::scan(const ChainId& chain_id, const std::string& key) const
    {
        std::vector<survivor::ScannedEntry> out;
        const auto& c = chain(chain_id);
        if (auto ref = c.find_by_key(key))
            if (const auto* e = c.ledger().find(*ref))
                out.push_back({e->local_ref, e->confirmed_tick});
        return out;
    }

    void World::on_attempt(const survivor::AppTransaction& txn, std::size_t sub, const survivor::Attempt& a)
    {
        m_kernel.record("app", txn.app_txn_id.str(),
                        "sub=" + std::to_string(sub) + " chain=" + a.chain.str() +
                            " attempt=" + std::string(survivor::to_string(a.outcome)));
    }

    void World::on_outcome(const survivor::AppOutcome& outcome)
    {
        m_kernel.record("app", outcome.app_txn_id.str(), "state=" + std::string(survivor::to_string(outcome.state)));
    }

    // ---- consensus and wakeups

    void World::on_tick(Tick now)
    {
        for (auto& [id, c] : m_chains)
        {
            for (const auto& entry : c->advance_consensus(now))
            {
                m_kernel.record("append", id.str(),
                                "ref=" + entry.local_ref.str() + " kind=" + std::string(chain::to_string(entry.unit.kind)) +
                                    " key=" + entry.unit.idempotency_key +
                                    " votes=" + std::to_string(entry.confirming_nodes.size()));
                dispatch(*c, entry);
            }
        }
        for (const auto& id : m_value.expire(now))
        {
            m_kernel.record("path", id.str(), "state=RELEASED reason=expired");
            auto& out = m_payments[id];
            out.id = id;
            out.state = "EXPIRED";
            out.tick = now;
        }
        audit_ledgers();
    }

    std::optional<Tick> World::next_wakeup(Tick after) const
    {
        std::optional<Tick> best;
        auto offer = [&](Tick t) {
            t = std::max(t, after + 1);
            if (!best || t < *best)
                best = t;
        };
        for (const auto& [id, c] : m_chains)
            if (c->quorum_met())
                if (auto due = c->earliest_due())
                    offer(*due);
        if (auto e = m_value.next_expiry())
            offer(*e);
        return best;
    }

    void World::dispatch(const chain::Chain& c, const chain::LedgerEntry& entry)
    {
        const std::string& key = entry.unit.idempotency_key;

        if (auto it = m_watchers.find({c.id(), key}); it != m_watchers.end())
        {
            auto list = std::move(it->second);
            m_watchers.erase(it);
            for (const auto& w : list)
                fire(w, entry.local_ref);
        }

        if (auto it = m_asset_keys.find(key); it != m_asset_keys.end() && !m_assets.count(it->second))
        {
            auto id = identity::mint_cross_id(chain(c.id()), entry.local_ref, m_kernel.rng(), m_resolver, now());
            m_assets.emplace(it->second, id);
            m_kernel.record("resolver", it->second, "register " + id.str() + " home=" + c.id().str());
        }

        if (m_app_keys.count(key))
        {
            ChainId chain_id = c.id();
            LocalRef ref = entry.local_ref;
            deliver(chain_id.str(), kClientDomain, "client", "confirmed key=" + key, {},
                    [this, chain_id, key, ref] { m_survivor.on_confirmed(chain_id, key, ref); });
        }
    }

    // ---- faults

    void World::inject(const FaultSpec& f)
    {
        if (m_faults.count(f.id))
            fail(Errc::InvalidArgument, "fault id reused: " + f.id);
        CrashRecord rec;
        std::string detail;
        switch (f.kind)
        {
        case FaultKind::Partition:
            if (!f.domains.empty())
                m_network.isolate(f.id, f.domains);
            else
                m_network.cut(f.id, f.links);
            rec.partition = true;
            m_partitions[f.id] = f;
            detail = "partition";
            for (const auto& d : f.domains)
                detail += " " + d;
            for (const auto& [a, b] : f.links)
                detail += " " + a + "-" + b;
            break;

        case FaultKind::NodeCrash:
        {
            auto& c = chain(f.chain);
            std::vector<NodeId> victims = f.nodes;
            if (victims.empty())
            {
                const auto& nodes = c.nodes();
                for (auto it = nodes.rbegin(); it != nodes.rend() && victims.size() < f.count; ++it)
                    if (it->live)
                        victims.push_back(it->id);
            }
            for (const auto& n : victims)
                c.set_node_live(n, false);
            rec.chain = f.chain;
            rec.nodes = victims;
            detail = "node_crash " + f.chain.str() + " count=" + std::to_string(victims.size());
            break;
        }

        case FaultKind::GatewayCrash:
            m_registry.set_live(f.gateway, false);
            rec.gateway = f.gateway;
            detail = "gateway_crash " + f.gateway.str();
            break;

        case FaultKind::Heal:
            heal(f.target);
            return;
        }

        m_faults.emplace(f.id, rec);
        m_kernel.record("fault", f.id, detail);
        if (rec.gateway)
            m_transfers.gateway_down(*rec.gateway);
    }

    void World::heal(const std::string& fault_id)
    {
        auto it = m_faults.find(fault_id);
        if (it == m_faults.end())
            fail(Errc::UnknownTarget, "no active fault " + fault_id);
        const auto& rec = it->second;
        if (rec.partition)
        {
            m_network.heal(fault_id);
            m_partitions.erase(fault_id);
        }
        for (const auto& n : rec.nodes)
            chain(rec.chain).set_node_live(n, true);
        if (rec.gateway)
            m_registry.set_live(*rec.gateway, true);
        m_faults.erase(it);
        m_kernel.record("fault", fault_id, "healed");
    }

    // ---- workload

    void World::run()
    {
        if (m_ran)
            fail(Errc::InvalidArgument, "world already ran");
        m_ran = true;
        schedule_workload();

        Kernel::Hooks hooks;
        hooks.on_tick = [this](Tick t) { on_tick(t); };
        hooks.next_wakeup = [this](Tick after) { return next_wakeup(after); };
        hooks.after_event = [this] { audit_event(); };
        m_kernel.run(m_config.horizon, hooks);
        finalize_audits();
    }

    void World::schedule_workload()
    {
        auto at = [this](Tick t, EventKind kind, std::string subject, std::string detail, std::function<void()> fn) {
            std::string what = subject;
            m_kernel.schedule_at(kind, std::move(subject), std::move(detail), t, guarded(what, std::move(fn)));
        };

        for (const auto& p : m_config.peering)
        {
            at(p.at, EventKind::Timer, p.id.str(), "establish", [this, p] {
                std::set<chain::SemanticType> sem(p.semantics.begin(), p.semantics.end());
                m_peering.establish(p.id, std::set<ChainId>(p.parties.begin(), p.parties.end()), sem, p.fee, p.open);
            });
            if (p.revoke_at)
                at(*p.revoke_at, EventKind::Timer, p.id.str(), "revoke", [this, id = p.id] { m_peering.revoke(id); });
        }

        for (const auto& a : m_config.assets)
        {
            at(a.at, EventKind::Timer, a.name, "create", [this, a] {
                std::string key = "asset/" + a.name;
                m_asset_keys[key] = a.name;
                const auto& c = chain(a.chain);
                auto unit = chain::make_unit("asset:" + a.name, c.semantic_type(), key);
                unit.kind = chain::RecordKind::Asset;
                unit.subject = a.name;
                client_submit(a.owner, a.chain, unit);
            });
        }

        for (const auto& f : m_config.faults)
        {
            EventKind kind = EventKind::Fault;
            at(f.at_tick, kind, f.id, std::string(to_string(f.kind)), [this, f] { inject(f); });
            if (f.until_tick && f.kind != FaultKind::Heal)
                at(*f.until_tick, kind, f.id, "until", [this, id = f.id] {
                    if (m_faults.count(id))
                        heal(id);
                });
        }

        for (const auto& txn : m_config.app_txns)
        {
            at(txn.start, EventKind::Timer, txn.id.str(), "submit", [this, txn] {
                survivor::AppTransaction app;
                app.app_txn_id = txn.id;
                app.app = txn.app;
                for (std::size_t i = 0; i < txn.subs.size(); ++i)
                {
                    const auto& s = txn.subs[i];
                    survivor::SubTxn sub;
                    chain::SemanticType type =
                        s.candidates.empty() ? chain::SemanticType::GenericRecord : chain(s.candidates.front()).semantic_type();
                    sub.unit = chain::make_unit(s.payload, type, "app/" + txn.id.str() + "/" + std::to_string(i), s.peer);
                    sub.candidate_chains = s.candidates;
                    sub.per_chain_timeout = s.timeout;
                    app.sub_txns.push_back(std::move(sub));
                }
                m_survivor.submit_app_txn(std::move(app));
            });
        }

        for (const auto& t : m_config.transfers)
        {
            at(t.start, EventKind::Timer, t.id.str(), "initiate", [this, t] {
                auto asset = asset_id(t.asset);
                try
                {
                    if (!asset)
                        fail(Errc::NotFound, "asset " + t.asset + " has not been created");
                    gateway::InitiateRequest req;
                    req.id = t.id;
                    req.asset = *asset;
                    req.source = t.source;
                    req.dest = t.dest;
                    req.beneficiary = t.beneficiary;
                    req.deadline_ticks = t.deadline;
                    req.source_threshold = t.source_threshold;
                    req.dest_threshold = t.dest_threshold;
                    req.pairing = t.pairing;
                    m_transfers.initiate(req);
                }
                catch (const Error& e)
                {
                    m_refused[t.id] = err_name(e);
                    m_kernel.record("transition", t.id.str(), "refused error=" + err_name(e));
                }
            });
        }

        for (const auto& p : m_config.payments)
        {
            at(p.start, EventKind::Timer, p.id.str(), "build", [this, p] { run_payment_start(p); });
            if (p.settle_at)
                at(*p.settle_at, EventKind::Timer, p.id.str(), "settle", [this, id = p.id] {
                    auto& out = m_payments[id];
                    if (out.state != "RESERVED")
                        return;
                    try
                    {
                        auto path = m_value.settle_path(id, now());
                        out.state = "SETTLED";
                        out.tick = now();
                        m_kernel.record("path", id.str(), "state=SETTLED delivered=" + to_string(path.delivered()));
                    }
                    catch (const Error& e)
                    {
                        out.error = err_name(e);
                        m_kernel.record("path", id.str(), "settle refused error=" + err_name(e));
                    }
                });
            if (p.release_at)
                at(*p.release_at, EventKind::Timer, p.id.str(), "release", [this, id = p.id] {
                    auto& out = m_payments[id];
                    if (out.state != "RESERVED")
                        return;
                    m_value.release_path(id);
                    out.state = "RELEASED";
                    out.tick = now();
                    m_kernel.record("path", id.str(), "state=RELEASED");
                });
        }

        for (const auto& g : m_config.grants)
        {
            at(g.at, EventKind::Timer, g.id.str(), "grant", [this, g] {
                auto asset = asset_id(g.asset);
                if (!asset)
                    fail(Errc::NotFound, "asset " + g.asset + " has not been created");
                m_grants[g.id] = gateway::issue_grant(g.id, g.grantor, g.grantee, *asset, now(), g.expiry);
                m_kernel.record("grant", g.id.str(),
                                g.grantor.str() + "->" + g.grantee.str() + " expiry=" + std::to_string(g.expiry));
            });
        }

        for (const auto& r : m_config.reads)
            at(r.at, EventKind::Timer, r.id, "read", [this, r] { run_read(r); });
        for (const auto& l : m_config.lookups)
            at(l.at, EventKind::Probe, l.asset, "lookup", [this, l] { run_lookup(l); });
        for (const auto& p : m_config.probes)
            at(p.at, EventKind::Probe, p.chain.str(), "status", [this, p] { run_probe(p); });

        if (!m_chains.empty() && m_config.network.advertise_interval > 0)
            schedule_advertising(m_config.network.advertise_interval);
    }

    void World::schedule_advertising(Tick at)
    {
        if (at > m_config.horizon)
            return;
        m_kernel.schedule_at(EventKind::Timer, "advertise", "", at, guarded("advertise", [this, at] {
                                 advertise_all();
                                 schedule_advertising(at + m_config.network.advertise_interval);
                             }));
    }

    void World::advertise_all()
    {
        std::set<ChainId> known;
        for (const auto& [id, c] : m_chains)
            known.insert(id);
        for (const auto& [gid, gw] : m_registry.all())
        {
            auto advert = gateway::advertise(gw, m_resolver, m_registry, m_peering.peers_of(gw.home_chain, known), now());
            if (advert)
                m_kernel.record("advert", gid.str(), strip_prefix(advert->transcript(), "advert "));
        }
    }

    void World::run_payment_start(const scenario::PaymentSpec& p)
    {
        auto& out = m_payments[p.id];
        out.id = p.id;
        out.tick = now();
        auto before = m_value.reservation_set();
        try
        {
            auto path = m_value.build_path(p.id, p.sender, p.receiver, p.amount, p.denom_in, p.denom_out, now());
            out.state = "RESERVED";
            std::string hops;
            for (const auto& h : path.hops)
                hops += (hops.empty() ? "" : ",") + h.connector_id.str() + ":" + h.from_chain.str() + ">" +
                        h.to_chain.str();
            m_kernel.record("path", p.id.str(),
                            "state=RESERVED hops=" + hops + " out=" + to_string(path.delivered()) +
                                " expiry=" + std::to_string(path.expiry_tick));
        }
        catch (const Error& e)
        {
            out.state = "REJECTED";
            out.error = err_name(e);
            m_kernel.record("path", p.id.str(), "state=REJECTED error=" + err_name(e));
            check("reservation_atomicity", m_value.reservation_set() == before,
                  p.id.str() + " left residual reservations after a failed build");
        }
    }

    void World::run_read(const scenario::ReadSpec& r)
    {
        ReadOutcome out{r.id, now(), false, {}};
        try
        {
            auto asset = asset_id(r.asset);
            if (!asset)
                fail(Errc::NotFound, "asset " + r.asset + " has not been created");
            const ChainId& home = m_resolver.home(*asset);
            if (!m_network.connected(kClientDomain, home.str()))
                fail(Errc::Unreachable, "home chain " + home.str() + " is not reachable");
            if (r.grant)
            {
                auto g = m_grants.find(*r.grant);
                if (g == m_grants.end())
                    fail(Errc::GrantMismatch, "no grant " + r.grant->str());
                GatewayId via;
                if (r.via)
                {
                    via = *r.via;
                }
                else
                {
                    auto live = m_registry.live_gateways(home);
                    if (live.empty())
                        fail(Errc::Unreachable, "no live gateway on " + home.str());
                    via = live.front();
                }
                auto view = gateway::mediated_read(m_registry.at(via), g->second, *asset, r.requester, chain(home),
                                                   m_resolver, now());
                if (!gateway::verify_attestation(view.attestation, m_registry))
                    fail(Errc::InvalidProof, "mediated read attestation does not verify");
            }
            else
            {
                chain(home).read_ledger(*asset,
                                        chain::Credential{r.requester, scenario::credential_token(r.requester, home)});
            }
            out.ok = true;
        }
        catch (const Error& e)
        {
            out.error = err_name(e);
        }
        m_kernel.record("read", r.id, out.ok ? "ok" : "error=" + out.error);
        m_reads.push_back(out);
    }

    identity::Resolution World::resolve(const identity::CrossId& id)
    {
        auto res = m_resolver.resolve(id, m_registry);
        m_kernel.record("resolve", id.str(), strip_prefix(res.transcript(), "resolve " + id.str() + " "));
        return res;
    }

    void World::run_lookup(const scenario::LookupSpec& l)
    {
        LookupOutcome out{l.asset, now(), std::nullopt, {}};
        try
        {
            auto asset = asset_id(l.asset);
            if (!asset)
                fail(Errc::NotFound, "asset " + l.asset + " has not been created");
            out.home = resolve(*asset).home;
        }
        catch (const Error& e)
        {
            out.error = err_name(e);
            m_kernel.record("resolve", l.asset, "error=" + out.error);
        }
        m_lookups.push_back(out);
    }

    void World::run_probe(const scenario::ProbeSpec& p)
    {
        ProbeOutcome out{p.chain, now(), std::nullopt, {}};
        try
        {
            out.status = chain(p.chain).probe_status(m_network.connected(kClientDomain, p.chain.str()));
            std::ostringstream s;
            s << "live=" << out.status->live_node_count << " pending=" << out.status->pending_count
              << " latency=" << out.status->mean_confirm_latency;
            m_kernel.record("status", p.chain.str(), s.str());
        }
        catch (const Error& e)
        {
            out.error = err_name(e);
            m_kernel.record("status", p.chain.str(), "error=" + out.error);
        }
        m_probes.push_back(out);
    }

    // ---- audits

    AuditResult& World::audit_mut(const std::string& name)
    {
        for (auto& a : m_audits)
            if (a.name == name)
                return a;
        m_audits.push_back(AuditResult{name, 0, {}});
        return m_audits.back();
    }

    const AuditResult* World::audit(const std::string& name) const
    {
        for (const auto& a : m_audits)
            if (a.name == name)
                return &a;
        return nullptr;
    }

    bool World::audits_passed() const
    {
        return std::all_of(m_audits.begin(), m_audits.end(), [](const AuditResult& a) { return a.passed(); });
    }

    void World::check(const std::string& name, bool ok, const std::string& what)
    {
        auto& a = audit_mut(name);
        ++a.checks;
        if (!ok && a.violations.size() < 20)
            a.violations.push_back("t=" + std::to_string(now()) + " " + what);
    }

    void World::audit_event()
    {
        auto resolver_issues = m_resolver.audit();
        check("single_authority", resolver_issues.empty(),
              resolver_issues.empty() ? std::string() : resolver_issues.front());

        for (const auto& [name, id] : m_assets)
        {
            const ChainId& home = m_resolver.home(id);
            std::set<ChainId> in_flight;
            for (const auto& [tid, t] : m_transfers.all())
                if (!t.terminal() && t.asset == id)
                    in_flight.insert(t.dest_chain);

            for (const auto& [cid, c] : m_chains)
            {
                auto ref = c->masks().find_ref(id);
                bool active = ref && c->ledger().find(*ref) && !c->ledger().mark_of(*ref);
                if (cid == home)
                    check("single_authority", active, name + " has no active entry at its home " + cid.str());
                else if (active)
                    check("single_authority", in_flight.count(cid) != 0,
                          name + " is active on non-home chain " + cid.str());
            }
        }
    }

    void World::audit_ledgers()
    {
        for (const auto& [id, c] : m_chains)
        {
            std::string dump = c->ledger().dump_entries();
            auto& prev = m_ledger_dumps[id];
            check("append_only", dump.compare(0, prev.size(), prev) == 0, id.str() + " ledger prefix changed");
            prev = std::move(dump);
        }
    }

    void World::finalize_audits()
    {
        audit_ledgers();

        for (const auto& [id, c] : m_chains)
        {
            check("mask_bijection", c->masks().is_bijection(), id.str() + " mask table is not a bijection");
            for (const auto& e : c->ledger().entries())
            {
                check("quorum_soundness", static_cast<std::int64_t>(e.confirming_nodes.size()) >= c->quorum_size(),
                      e.local_ref.str() + " confirmed by fewer than a quorum");
                check("semantic_gating", e.unit.semantic_type == c->semantic_type(),
                      e.local_ref.str() + " semantic type differs from its chain");
            }
        }

        Tick last = 0;
        for (const auto& r : m_kernel.log().records())
        {
            check("clock_monotonic", r.tick >= last, "log tick went backwards at seq " + std::to_string(r.seq));
            last = std::max(last, r.tick);
            if (r.kind == "advert" || r.kind == "resolve")
            {
                for (const auto& [id, c] : m_chains)
                {
                    bool leaks = r.detail.find(id.str() + ".node") != std::string::npos ||
                                 r.detail.find(id.str() + ":L") != std::string::npos;
                    check("opacity", !leaks, r.kind + " record " + std::to_string(r.seq) + " exposes internals");
                }
            }
        }

        auto value_issues = m_value.audit();
        check("value_conservation", value_issues.empty(), value_issues.empty() ? "" : value_issues.front());

        for (const auto& [id, txn] : m_survivor.all())
        {
            for (const auto& sub : txn.sub_txns)
            {
                bool ordered = sub.attempts.size() <= sub.candidate_chains.size();
                for (std::size_t i = 0; ordered && i < sub.attempts.size(); ++i)
                    ordered = sub.attempts[i].chain == sub.candidate_chains[i];
                check("attempt_order", ordered, id.str() + " attempts leave candidate order");
            }
        }

        for (const auto& t : m_config.transfers)
        {
            const auto* x = m_transfers.find(t.id);
            check("workload_outcomes", m_refused.count(t.id) || (x && x->terminal()),
                  "transfer " + t.id.str() + " has no terminal outcome");
        }

        // Each asset must be homed where its last finalized transfer took it,
        // or where it was created if none finalized.
        for (const auto& spec : m_config.assets)
        {
            auto id = asset_id(spec.name);
            if (!id)
                continue;
            ChainId expected = spec.chain;
            Tick when = -1;
            for (const auto& [tid, x] : m_transfers.all())
                if (x.asset == *id && x.state == gateway::TransferState::Finalized &&
                    x.transitions.back().tick >= when)
                {
                    when = x.transitions.back().tick;
                    expected = x.dest_chain;
                }
            check("no_lost_assets", m_resolver.home(*id) == expected,
                  spec.name + " homed at " + m_resolver.home(*id).str() + ", expected " + expected.str());
        }
        for (const auto& a : m_config.app_txns)
        {
            bool done = false;
            if (m_survivor.all().count(a.id))
                done = m_survivor.outcome(a.id).state != survivor::AppState::Pending;
            check("workload_outcomes", done, "app transaction " + a.id.str() + " has no terminal outcome");
        }
        for (const auto& p : m_config.payments)
            check("workload_outcomes", m_payments.count(p.id) != 0, "payment " + p.id.str() + " never started");

    }
}
