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

#include "interop/identity/resolver.hpp"
#include "interop/common/error.hpp"

#include <sstream>

namespace interop::identity
{
    std::string Resolution::transcript() const
    {
        std::string out = "resolve " + id.str() + " home=" + home.str() + " gateways=";
        for (std::size_t i = 0; i < gateways.size(); ++i)
        {
            if (i)
                out += ',';
            out += gateways[i].str();
        }
        return out;
    }

    void Resolver::register_chain(const std::string& path, const ChainId& chain)
    {
        auto [it, inserted] = m_paths.emplace(path, chain);
        if (!inserted && it->second != chain)
            fail(Errc::InvalidArgument, "chain path " + path + " already registered");
    }

    std::optional<ChainId> Resolver::chain_for_path(const std::string& path) const
    {
        auto it = m_paths.find(path);
        if (it == m_paths.end())
            return std::nullopt;
        return it->second;
    }

    void Resolver::register_id(const CrossId& id, const ChainId& home, Tick now)
    {
        if (!m_paths.count(id.chain_path))
            fail(Errc::NotFound, "chain path " + id.chain_path + " is not registered");
        if (m_history.count(id))
            fail(Errc::InvalidArgument, "identifier " + id.str() + " already registered");
        m_history[id].push_back(AuthoritativePointer{id, home, std::nullopt, now});
    }

    const std::vector<AuthoritativePointer>& Resolver::history(const CrossId& id) const
    {
        auto it = m_history.find(id);
        if (it == m_history.end())
            fail(Errc::NotFound, "identifier " + id.str() + " is not registered");
        return it->second;
    }

    const ChainId& Resolver::home(const CrossId& id) const
    {
        return history(id).back().home_chain;
    }

    Resolution Resolver::resolve(const CrossId& id, const gateway::GatewayRegistry& registry) const
    {
        const ChainId& h = home(id);
        auto gws = registry.live_gateways(h);
        if (gws.empty())
            fail(Errc::Unreachable, "no live gateway for " + h.str());
        return Resolution{id, h, std::move(gws)};
    }

    AuthoritativePointer Resolver::rebind_authority(const CrossId& asset, const ChainId& from, const ChainId& to,
                                                    const AuthorityProof& proof,
                                                    const gateway::GatewayRegistry& registry, Tick now)
    {
        auto it = m_history.find(asset);
        if (it == m_history.end())
            fail(Errc::NotFound, "identifier " + asset.str() + " is not registered");
        if (it->second.back().home_chain != from)
            fail(Errc::StaleAuthority, asset.str() + " is homed at " + it->second.back().home_chain.str() +
                                           ", not " + from.str());
        if (from == to)
            fail(Errc::InvalidProof, "rebind to the same chain");

        const auto& [src, dst] = proof;
        auto src_claim = src.claim();
        auto dst_claim = dst.claim();
        if (!src_claim || !dst_claim)
            fail(Errc::InvalidProof, "undecodable claim");
        if (src_claim->chain_id != from || dst_claim->chain_id != to)
            fail(Errc::InvalidProof, "attestations do not cover both chains");
        if (!src_claim->confirmed || !dst_claim->confirmed)
            fail(Errc::InvalidProof, "attestation does not claim confirmation");
        if (dst_claim->id != asset)
            fail(Errc::InvalidProof, "destination attestation is about a different asset");
        if (!gateway::verify_attestation(src, registry) || !gateway::verify_attestation(dst, registry))
            fail(Errc::InvalidProof, "attestation failed verification");

        AuthoritativePointer ptr{asset, to, from, now};
        it->second.push_back(ptr);
        return ptr;
    }

    std::vector<CrossId> Resolver::ids_homed_at(const ChainId& chain) const
    {
        std::vector<CrossId> out;
        for (const auto& [id, hist] : m_history)
            if (hist.back().home_chain == chain)
                out.push_back(id);
        return out;
    }

    std::string Resolver::dump() const
    {
        std::ostringstream os;
        for (const auto& [id, hist] : m_history)
        {
            os << id.str() << " home=" << hist.back().home_chain << " history=";
            for (std::size_t i = 0; i < hist.size(); ++i)
            {
                if (i)
                    os << '>';
                os << hist[i].home_chain << '@' << hist[i].rebind_tick;
            }
            os << '\n';
        }
        return os.str();
    }

    std::vector<std::string> Resolver::audit() const
    {
        std::vector<std::string> problems;
        for (const auto& [id, hist] : m_history)
        {
            if (hist.empty())
            {
                problems.push_back(id.str() + ": no authoritative home");
                continue;
            }
            if (hist.front().forwarded_from)
                problems.push_back(id.str() + ": first record claims a predecessor");
            for (std::size_t i = 1; i < hist.size(); ++i)
            {
                // Each pointer forwards from the previous home, strictly later in
                // the sequence, so following the links terminates.
                if (!hist[i].forwarded_from || *hist[i].forwarded_from != hist[i - 1].home_chain)
                    problems.push_back(id.str() + ": broken forward link at step " + std::to_string(i));
                if (hist[i].rebind_tick < hist[i - 1].rebind_tick)
                    problems.push_back(id.str() + ": forward chain goes back in time");
                if (hist[i].home_chain == hist[i - 1].home_chain)
                    problems.push_back(id.str() + ": self-forward at step " + std::to_string(i));
            }
        }
        return problems;
    }

    CrossId mint_cross_id(chain::Chain& chain, const LocalRef& ref, Rng& rng, Resolver& resolver, Tick now)
    {
        if (!chain.ledger().find(ref))
            fail(Errc::NotFound, "no confirmed entry " + ref.str() + " on " + chain.id().str());
        if (auto existing = chain.masks().find_id(ref))
            return *existing;

        CrossId id;
        id.chain_path = chain.path();
        do
        {
            rng.fill(id.opaque_suffix);
        } while (resolver.contains(id));

        chain.masks().bind(id, ref);
        resolver.register_id(id, chain.id(), now);
        return id;
    }
}
