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


#include "interop/scenario/runner.hpp"
#include "interop/common/error.hpp"

#include <fstream>
#include <sstream>

namespace interop::scenario
{
    using interop::to_string;

    using nlohmann::json;

    namespace
    {
        std::vector<std::string> split_lines(const std::string& text)
        {
            std::vector<std::string> lines;
            std::string cur;
            for (char c : text)
            {
                if (c == '\n')
                {
                    lines.push_back(std::move(cur));
                    cur.clear();
                }
                else
                {
                    cur += c;
                }
            }
            if (!cur.empty())
                lines.push_back(std::move(cur));
            return lines;
        }

        void write_file(const std::filesystem::path& path, const std::string& text)
        {
            std::ofstream out(path, std::ios::binary | std::ios::trunc);
            if (!out || !(out << text) || !out.flush())
                fail(Errc::IoError, "cannot write " + path.string());
        }

        json app_txn_report(const simnet::World& world, const survivor::AppTransaction& txn)
        {
            json j;
            j["state"] = std::string(survivor::to_string(txn.state));
            j["started"] = txn.started_tick;
            if (txn.state != survivor::AppState::Pending)
                j["finished"] = txn.finished_tick;
            json subs = json::array();
            for (const auto& sub : txn.sub_txns)
            {
                json s;
                json attempts = json::array();
                for (const auto& a : sub.attempts)
                    attempts.push_back({{"chain", a.chain.str()},
                                        {"outcome", std::string(survivor::to_string(a.outcome))},
                                        {"started", a.started},
                                        {"ended", a.ended}});
                s["attempts"] = attempts;
                json confirmations = json::array();
                for (const auto& c : sub.confirmations)
                    confirmations.push_back({{"chain", c.chain.str()}, {"tick", c.tick}});
                s["confirmations"] = confirmations;
                s["key"] = sub.unit.idempotency_key;
                subs.push_back(s);
            }
            j["sub_txns"] = subs;
            json dups = json::array();
            for (const auto& d : world.survivor().poll_duplicates(txn.app_txn_id).duplicates)
                dups.push_back({{"sub", d.sub_index},
                                {"chain", d.chain.str()},
                                {"ref", d.local_ref.str()},
                                {"confirmed", d.confirmed_tick}});
            j["duplicates"] = dups;
            return j;
        }

        json transfer_report(const gateway::CrossDomainTransfer& t)
        {
            json j;
            j["state"] = std::string(gateway::to_string(t.state));
            j["asset"] = t.asset.str();
            j["source"] = t.source_chain.str();
            j["dest"] = t.dest_chain.str();
            j["initiated"] = t.initiated_tick;
            j["deadline"] = t.deadline_tick;
            j["pairing"] = {t.paired_gateways.first.str(), t.paired_gateways.second.str()};
            j["thresholds"] = {t.source_threshold, t.dest_threshold};
            if (t.terminal())
                j["ended"] = t.transitions.back().tick;
            if (!t.abort_reason.empty())
                j["abort_reason"] = t.abort_reason;
            json steps = json::array();
            for (const auto& r : t.transitions)
                steps.push_back(std::to_string(r.tick) + " " + std::string(gateway::to_string(r.to)));
            j["transitions"] = steps;
            return j;
        }
    }

    json build_report(const simnet::World& world)
    {
        json report;
        report["scenario"] = world.config().name;
        report["seed"] = world.config().seed;
        report["final_tick"] = world.kernel().now();
        report["events"] = world.kernel().executed();

        json apps = json::object();
        for (const auto& [id, txn] : world.survivor().all())
            apps[id.str()] = app_txn_report(world, txn);
        report["app_txns"] = apps;

        json transfers = json::object();
        for (const auto& [id, t] : world.transfers().all())
            transfers[id.str()] = transfer_report(t);
        for (const auto& [id, error] : world.refused_transfers())
            transfers[id.str()] = {{"state", "REFUSED"}, {"error", error}};
        report["transfers"] = transfers;

        json payments = json::object();
        for (const auto& [id, p] : world.payments())
        {
            json j{{"state", p.state}, {"tick", p.tick}};
            if (!p.error.empty())
                j["error"] = p.error;
            if (world.value_network().paths().count(id))
                j["delivered"] = to_string(world.value_network().path(id).delivered());
            payments[id.str()] = j;
        }
        report["payments"] = payments;

        json reads = json::object();
        for (const auto& r : world.reads())
            reads[r.id] = r.ok ? json{{"ok", true}, {"tick", r.tick}} : json{{"ok", false}, {"error", r.error}, {"tick", r.tick}};
        report["reads"] = reads;

        json lookups = json::array();
        for (const auto& l : world.lookups())
        {
            json j{{"asset", l.asset}, {"tick", l.tick}};
            if (l.home)
                j["home"] = l.home->str();
            else
                j["error"] = l.error;
            lookups.push_back(j);
        }
        report["lookups"] = lookups;

        json probes = json::array();
        for (const auto& p : world.probes())
        {
            json j{{"chain", p.chain.str()}, {"tick", p.tick}};
            if (p.status)
            {
                j["live_node_count"] = p.status->live_node_count;
                j["pending_count"] = p.status->pending_count;
                j["mean_confirm_latency"] = p.status->mean_confirm_latency;
            }
            else
            {
                j["error"] = p.error;
            }
            probes.push_back(j);
        }
        report["probes"] = probes;

        json settlement;
        json tallies = json::object();
        for (const auto& [pair, fee] : world.peering().tallies())
            tallies[pair.first.str() + "|" + pair.second.str()] = to_string(fee);
        settlement["peering"] = tallies;
        json reserves = json::object();
        for (const auto& [id, c] : world.value_network().connectors())
            for (const auto& [d, amount] : c.reserves)
                reserves[id.str()][d.str()] = to_string(amount);
        settlement["connector_reserves"] = reserves;
        json credits = json::object();
        for (const auto& [chain_id, denom] : world.value_network().segments())
            credits[chain_id.str()] = {{"denomination", denom.str()},
                                       {"credited", to_string(world.value_network().credited(chain_id, denom))}};
        settlement["credits"] = credits;
        report["settlement"] = settlement;

        json assets = json::object();
        for (const auto& spec : world.config().assets)
            if (auto id = world.asset_id(spec.name))
                assets[spec.name] = {{"id", id->str()}, {"home", world.resolver().home(*id).str()}};
        report["assets"] = assets;

        json audits = json::object();
        for (const auto& a : world.audits())
            audits[a.name] = {{"passed", a.passed()}, {"checks", a.checks}, {"violations", a.violations}};
        report["audits"] = audits;
        report["passed"] = world.audits_passed();
        return report;
    }

    RunArtifacts execute(const ScenarioConfig& config, std::optional<std::uint64_t> seed)
    {
        ScenarioConfig cfg = config;
        if (seed)
            cfg.seed = *seed;
        simnet::World world(cfg);
        world.run();
        RunArtifacts out;
        out.log = world.log().serialize();
        out.report = build_report(world);
        out.resolver_dump = world.resolver().dump();
        out.audits_passed = world.audits_passed();
        return out;
    }

    void write_artifacts(const RunArtifacts& artifacts, const std::filesystem::path& dir)
    {
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec)
            fail(Errc::IoError, "cannot create " + dir.string() + ": " + ec.message());
        write_file(dir / "run.log", artifacts.log);
        write_file(dir / "report", artifacts.report.dump(2) + "\n");
        write_file(dir / "resolver.dump", artifacts.resolver_dump);
    }

    std::string LogDiff::describe() const
    {
        if (identical)
            return "";
        std::string out = "first divergence at record " + std::to_string(record) + "\n";
        out += "< " + left.value_or("(missing)") + "\n";
        out += "> " + right.value_or("(missing)") + "\n";
        return out;
    }

    LogDiff replay_diff(const std::string& a, const std::string& b)
    {
        LogDiff diff;
        if (a == b)
            return diff;
        diff.identical = false;
        auto la = split_lines(a);
        auto lb = split_lines(b);
        std::size_t n = std::max(la.size(), lb.size());
        for (std::size_t i = 0; i < n; ++i)
        {
            bool ha = i < la.size();
            bool hb = i < lb.size();
            if (ha && hb && la[i] == lb[i])
                continue;
            diff.record = i;
            if (ha)
                diff.left = la[i];
            if (hb)
                diff.right = lb[i];
            return diff;
        }
        // Same lines, different bytes (trailing newline).
        diff.record = n;
        return diff;
    }

    std::string read_file(const std::filesystem::path& path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            fail(Errc::IoError, "cannot open " + path.string());
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    }

    LogDiff replay_diff_files(const std::filesystem::path& a, const std::filesystem::path& b)
    {
        return replay_diff(read_file(a), read_file(b));
    }
}
