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


// Scenario builders shared by unit and acceptance tests.

#pragma once

#include "interop/scenario/config.hpp"
#include "interop/scenario/loader.hpp"

#include <string>

namespace interop::testing
{
    inline std::string source_path(const std::string& relative)
    {
        return std::string(INTEROP_SOURCE_DIR) + "/" + relative;
    }

    inline scenario::ScenarioConfig bundled(const std::string& name)
    {
        return scenario::load(source_path("scenarios/" + name + ".json"));
    }

    inline scenario::ChainSpec registry_chain(const std::string& id, std::size_t gateways = 3, Tick latency = 3)
    {
        scenario::ChainSpec c;
        c.id = ChainId(id);
        c.path = "registry." + id;
        c.gateways = gateways;
        c.latency = latency;
        c.semantic = chain::SemanticType::AssetRegistry;
        return c;
    }

    /// Two asset-registry chains with a bilateral agreement and one asset on
    /// BC1 per transfer; transfers all go BC1 -> BC2.
    inline scenario::ScenarioConfig two_chain_transfers(std::size_t transfers, std::size_t gateways = 3,
                                                        Tick start = 5, Tick deadline = 50)
    {
        scenario::ScenarioConfig cfg;
        cfg.name = "two-chain";
        cfg.seed = 1;
        cfg.horizon = start + deadline + 10;
        cfg.chains = {registry_chain("BC1", gateways), registry_chain("BC2", gateways)};
        cfg.apps = {{AppId("owner"), {{ChainId("BC1"), true, true}}}, {AppId("buyer"), {{ChainId("BC2"), true, true}}}};
        scenario::PeeringSpec p;
        p.id = AgreementId("bc1-bc2");
        p.parties = {ChainId("BC1"), ChainId("BC2")};
        p.semantics = {chain::SemanticType::AssetRegistry};
        cfg.peering.push_back(p);
        for (std::size_t i = 0; i < transfers; ++i)
        {
            std::string name = "asset" + std::to_string(i);
            cfg.assets.push_back({name, ChainId("BC1"), AppId("owner"), 0});
            scenario::TransferSpec t;
            t.id = TransferId("t" + std::to_string(i));
            t.asset = name;
            t.source = ChainId("BC1");
            t.dest = ChainId("BC2");
            t.beneficiary = AppId("buyer");
            t.start = start;
            t.deadline = deadline;
            cfg.transfers.push_back(t);
        }
        return cfg;
    }
}
