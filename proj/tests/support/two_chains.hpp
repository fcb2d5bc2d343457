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

// Two asset-registry chains with three gateways each, wired by hand
// without the simulator.

#pragma once

#include "interop/chain/chain.hpp"
#include "interop/common/rng.hpp"
#include "interop/gateway/attestation.hpp"
#include "interop/identity/resolver.hpp"

#include <map>
#include <memory>
#include <string>

namespace interop::testing
{
    struct TwoChains
    {
        Rng rng{7};
        gateway::GatewayRegistry registry;
        identity::Resolver resolver;
        std::map<ChainId, std::unique_ptr<chain::Chain>> chains;
        Tick now = 0;

        explicit TwoChains(std::size_t gateways = 3)
        {
            for (const char* name : {"BC1", "BC2"})
            {
                chain::ChainConfig cfg;
                cfg.id = ChainId(name);
                cfg.path = std::string("registry.") + name;
                cfg.regime = {true, true, true, true};
                cfg.semantic_type = chain::SemanticType::AssetRegistry;
                for (std::size_t i = 0; i < gateways; ++i)
                {
                    gateway::Gateway gw{GatewayId(std::string(name) + ".gw" + std::to_string(i)), cfg.id, {}, true};
                    rng.fill(gw.signing_key);
                    cfg.gateways.push_back(gw.gateway_id);
                    registry.add(gw);
                }
                resolver.register_chain(cfg.path, cfg.id);
                auto c = std::make_unique<chain::Chain>(cfg);
                c->access().grant(AppId("owner"), "cap:owner@" + std::string(name), {true, true});
                chains.emplace(cfg.id, std::move(c));
            }
        }

        chain::Chain& bc1() { return *chains.at(ChainId("BC1")); }
        chain::Chain& bc2() { return *chains.at(ChainId("BC2")); }

        chain::Credential owner(const chain::Chain& c) const
        {
            return {AppId("owner"), "cap:owner@" + c.id().str()};
        }

        /// Moves the clock forward, running consensus on both chains.
        void advance(Tick ticks)
        {
            for (Tick i = 0; i < ticks; ++i)
            {
                ++now;
                for (auto& [id, c] : chains)
                    c->advance_consensus(now);
            }
        }

        /// Submits, confirms and returns the local ref of a record.
        LocalRef confirmed_record(chain::Chain& c, const std::string& key)
        {
            auto unit = chain::make_unit("record " + key, c.semantic_type(), key);
            auto receipt = c.submit(unit, owner(c), now);
            advance(c.confirm_latency());
            return receipt.local_ref;
        }

        /// An asset homed at BC1 plus a confirmed copy on BC2 bound to the
        /// same identifier, ready for vouching on both sides.
        identity::CrossId asset_with_copy(const std::string& name)
        {
            auto ref = confirmed_record(bc1(), "asset/" + name);
            auto id = identity::mint_cross_id(bc1(), ref, rng, resolver, now);
            auto dest = confirmed_record(bc2(), "copy/" + name);
            bc2().masks().bind(id, dest);
            return id;
        }
    };
}
