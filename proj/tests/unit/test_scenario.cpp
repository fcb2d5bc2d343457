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
#include "interop/scenario/runner.hpp"

#include "fixtures.hpp"

#include <doctest.h>

#include <fstream>

using namespace interop;
using namespace interop::scenario;
using interop::testing::bundled;
using interop::testing::source_path;

namespace
{
    const char* const kBundled[] = {"fig2_fallback", "fig4_transfer", "ilp_path", "gateway_crash", "abort_partition"};

    /// Problems reported for the text, or nothing when it loads.
    std::vector<std::string> problems_of(const std::string& text, Errc* code = nullptr)
    {
        try
        {
            parse(text);
        }
        catch (const ScenarioError& e)
        {
            if (code)
                *code = e.code();
            return e.problems();
        }
        return {};
    }

    bool mentions(const std::vector<std::string>& problems, const std::string& needle)
    {
        for (const auto& p : problems)
            if (p.find(needle) != std::string::npos)
                return true;
        return false;
    }

    std::string fig2_with(const std::string& from, const std::string& to)
    {
        auto text = read_file(source_path("scenarios/fig2_fallback.json"));
        auto pos = text.find(from);
        REQUIRE(pos != std::string::npos);
        return text.replace(pos, from.size(), to);
    }
}

TEST_SUITE("scenario")
{
    TEST_CASE("bundled fallback scenario loads with its declared shape")
    {
        auto cfg = bundled("fig2_fallback");
        CHECK(cfg.name == "fig2_fallback");
        CHECK(cfg.seed == 42);
        CHECK(cfg.chains.size() == 2);
        CHECK(cfg.app_txns.size() == 1);
        REQUIRE(cfg.app_txns[0].subs.size() == 1);
        CHECK(cfg.app_txns[0].subs[0].candidates == std::vector<ChainId>{ChainId("BC1"), ChainId("BC2")});
        CHECK(cfg.app_txns[0].subs[0].timeout == Tick(10));
        CHECK(cfg.chains[1].latency == 4);
        REQUIRE(cfg.faults.size() == 1);
        CHECK(cfg.faults[0].kind == simnet::FaultKind::Partition);
        for (const char* name : kBundled)
            CHECK(validate(bundled(name)).empty());
    }

    TEST_CASE("unknown candidate chain names the offending field")
    {
        Errc code{};
        auto problems = problems_of(fig2_with(R"("candidates": ["BC1", "BC2"])", R"("candidates": ["BC1", "BC7"])"),
                                    &code);
        CHECK(code == Errc::ValidationError);
        REQUIRE(problems.size() == 1);
        CHECK(problems[0].find("app_txns[0].sub_txns[0].candidates[1]") == 0);
        CHECK(problems[0].find("BC7") != std::string::npos);
    }

    TEST_CASE("syntax problems are parse errors with a line number")
    {
        Errc code{};
        auto problems = problems_of("", &code);
        CHECK(code == Errc::ParseError);
        CHECK(problems.size() == 1);

        problems = problems_of("{\n  \"name\": \"x\",\n  \"seed\": \n}", &code);
        CHECK(code == Errc::ParseError);
        REQUIRE(problems.size() == 1);
        CHECK(problems[0].find("line 4") == 0);

        try
        {
            load(source_path("scenarios/does-not-exist.json"));
            FAIL("expected an IoError");
        }
        catch (const Error& e)
        {
            CHECK(e.code() == Errc::IoError);
        }
    }

    TEST_CASE("every problem is reported, not just the first")
    {
        auto text = read_file(source_path("scenarios/fig4_transfer.json"));
        auto cfg = parse(text);
        cfg.transfers[0].source_threshold = 0;
        cfg.transfers[0].asset = "ghost";
        cfg.horizon = 0;
        auto problems = validate(cfg);
        CHECK(problems.size() >= 3);
        CHECK(mentions(problems, "horizon"));
        CHECK(mentions(problems, "transfers[0].asset"));
        CHECK(mentions(problems, "transfers[0].source_threshold"));
    }

    TEST_CASE("field-level checks")
    {
        Errc code{};
        // Zero threshold.
        auto p = problems_of(fig2_with(R"("timeout": 10)", R"("timeout": 0)"), &code);
        CHECK(code == Errc::ValidationError);
        CHECK(mentions(p, "timeout"));
        // Wrong type.
        p = problems_of(fig2_with(R"("seed": 42)", R"("seed": "many")"), &code);
        CHECK(code == Errc::ValidationError);
        CHECK(mentions(p, "seed"));
        // Unknown field.
        p = problems_of(fig2_with(R"("seed": 42)", R"("seed": 42, "sede": 1)"), &code);
        CHECK(mentions(p, "sede"));
        // Candidates of mixed semantics.
        p = problems_of(fig2_with(R"("semantic_type": "payments"},
    {"id": "BC2")",
                                  R"("semantic_type": "asset-registry"},
    {"id": "BC2")"));
        CHECK(mentions(p, "candidates"));
        // Empty candidate list.
        p = problems_of(fig2_with(R"(["BC1", "BC2"])", "[]"));
        CHECK(mentions(p, "candidates"));
    }

    TEST_CASE("replay diff locates the first divergent record")
    {
        std::string a = "0 0 timer x ev=0\n1 1 timer y ev=1\n";
        CHECK(replay_diff(a, a).identical);

        auto d = replay_diff(a, "0 0 timer x ev=0\n1 1 timer z ev=1\n");
        CHECK_FALSE(d.identical);
        CHECK(d.record == 1);
        CHECK(d.left == std::string("1 1 timer y ev=1"));
        CHECK(d.right == std::string("1 1 timer z ev=1"));
        CHECK(d.describe().find("record 1") != std::string::npos);

        d = replay_diff(a, "0 0 timer x ev=0\n");
        CHECK_FALSE(d.identical);
        CHECK(d.record == 1);
        CHECK(d.left.has_value());
        CHECK_FALSE(d.right.has_value());
    }

    TEST_CASE("runs are replayable: same seed, identical artifacts")
    {
        for (const char* name : kBundled)
        {
            CAPTURE(name);
            auto cfg = bundled(name);
            auto a = execute(cfg);
            auto b = execute(cfg);
            CHECK(a.audits_passed);
            CHECK(replay_diff(a.log, b.log).identical);
            CHECK(a.report.dump() == b.report.dump());
            CHECK(a.resolver_dump == b.resolver_dump);
        }
    }

    TEST_CASE("logs match the checked-in golden copies")
    {
        for (const char* name : kBundled)
        {
            CAPTURE(name);
            auto run = execute(bundled(name));
            auto golden = read_file(source_path(std::string("tests/golden/") + name + ".log"));
            auto d = replay_diff(golden, run.log);
            INFO(d.describe());
            CHECK(d.identical);
        }
    }

    TEST_CASE("report exposes outcomes and audit verdicts")
    {
        auto run = execute(bundled("fig4_transfer"));
        const auto& r = run.report;
        CHECK(r.at("scenario") == "fig4_transfer");
        CHECK(r.at("passed") == true);
        CHECK(r.at("transfers").at("move-deed").at("state") == "FINALIZED");
        for (const auto& [name, audit] : r.at("audits").items())
        {
            CAPTURE(name);
            CHECK(audit.at("violations").empty());
        }

        auto seeded = execute(bundled("fig4_transfer"), 99);
        CHECK(seeded.report.at("seed") == 99);
    }
}
