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

#include "interop/gateway/services.hpp"
#include "interop/identity/resolver.hpp"

#include "expect.hpp"
#include "two_chains.hpp"

#include <doctest.h>

#include <map>

using namespace interop;
using namespace interop::identity;
using interop::testing::error_of;
using interop::testing::TwoChains;

namespace
{
    // Longest common substring by dynamic programming.
    std::size_t longest_common(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b)
    {
        std::vector<std::vector<std::size_t>> dp(a.size() + 1, std::vector<std::size_t>(b.size() + 1, 0));
        std::size_t best = 0;
        for (std::size_t i = 1; i <= a.size(); ++i)
            for (std::size_t j = 1; j <= b.size(); ++j)
                if (a[i - 1] == b[j - 1])
                    best = std::max(best, dp[i][j] = dp[i - 1][j - 1] + 1);
        return best;
    }

    AuthorityProof vouch_both(TwoChains& w, const CrossId& id, std::uint32_t k = 2)
    {
        auto src = gateway::vouch(w.bc1(), id, k, w.registry, w.now);
        auto dst = gateway::vouch(w.bc2(), id, k, w.registry, w.now);
        return {src, dst};
    }
}

TEST_SUITE("identity")
{
    TEST_CASE("cross id text form round-trips and rejects malformed input")
    {
        CrossId id;
        id.chain_path = "community.bc1";
        for (std::size_t i = 0; i < kSuffixBytes; ++i)
            id.opaque_suffix[i] = static_cast<std::uint8_t>(i * 17);
        auto text = id.str();
        CHECK(text == "community.bc1~00112233445566778899aabbccddeeff");
        CHECK(CrossId::parse(text) == id);
        CHECK_FALSE(CrossId::parse("community.bc1").has_value());
        CHECK_FALSE(CrossId::parse("~00112233445566778899aabbccddeeff").has_value());
        CHECK_FALSE(CrossId::parse("x~0011").has_value());
        CHECK_FALSE(CrossId::parse("x~00112233445566778899aabbccddeeZZ").has_value());
    }

    TEST_CASE("minting is idempotent per ref and needs a confirmed entry")
    {
        TwoChains w;
        auto ref = w.confirmed_record(w.bc1(), "asset/a");
        auto first = mint_cross_id(w.bc1(), ref, w.rng, w.resolver, w.now);
        auto again = mint_cross_id(w.bc1(), ref, w.rng, w.resolver, w.now);
        CHECK(first == again);
        CHECK(first.chain_path == "registry.BC1");
        CHECK(w.resolver.size() == 1);
        CHECK(w.resolver.home(first) == ChainId("BC1"));
        CHECK(error_of([&] { mint_cross_id(w.bc1(), LocalRef("BC1:L77"), w.rng, w.resolver, w.now); }) ==
              Errc::NotFound);
    }

    TEST_CASE("suffixes share no 4-byte substring with the refs they mask")
    {
        TwoChains w;
        std::size_t worst = 0;
        for (int i = 0; i < 1000; ++i)
        {
            auto unit = chain::make_unit("r", w.bc1().semantic_type(), "k" + std::to_string(i));
            w.bc1().submit(unit, w.owner(w.bc1()), w.now);
        }
        w.advance(w.bc1().confirm_latency());
        REQUIRE(w.bc1().ledger().size() == 1000);
        for (const auto& e : w.bc1().ledger().entries())
        {
            auto id = mint_cross_id(w.bc1(), e.local_ref, w.rng, w.resolver, w.now);
            const auto& ref = e.local_ref.str();
            std::vector<std::uint8_t> ref_bytes(ref.begin(), ref.end());
            std::vector<std::uint8_t> suffix(id.opaque_suffix.begin(), id.opaque_suffix.end());
            worst = std::max(worst, longest_common(ref_bytes, suffix));
        }
        CHECK(worst < 4);
        CHECK(w.bc1().masks().is_bijection());
    }

    TEST_CASE("property: mask table stays a bijection under arbitrary binds")
    {
        Rng rng(5);
        for (int run = 0; run < 200; ++run)
        {
            MaskTable table(ChainId("BC1"));
            std::map<CrossId, LocalRef> forward;
            std::map<LocalRef, CrossId> reverse;
            for (int step = 0; step < 40; ++step)
            {
                CrossId id;
                id.chain_path = "p";
                id.opaque_suffix[0] = static_cast<std::uint8_t>(rng.uniform(0, 7));
                LocalRef ref("BC1:L" + std::to_string(rng.uniform(0, 7)));

                bool ref_taken = reverse.count(ref) && reverse.at(ref) != id;
                auto err = error_of([&] { table.bind(id, ref); });
                CHECK(err.has_value() == ref_taken);
                if (!ref_taken)
                {
                    if (auto it = forward.find(id); it != forward.end())
                    {
                        reverse.erase(it->second);
                        forward.erase(it);
                    }
                    forward[id] = ref;
                    reverse[ref] = id;
                }
                REQUIRE(table.is_bijection());
                CHECK(table.size() == forward.size());
                for (const auto& [fid, fref] : forward)
                {
                    CHECK(table.find_ref(fid) == fref);
                    CHECK(table.find_id(fref) == fid);
                }
            }
        }
    }

    TEST_CASE("resolve reports the home gateways and fails cleanly")
    {
        TwoChains w;
        auto id = w.asset_with_copy("deed");
        auto r = w.resolver.resolve(id, w.registry);
        CHECK(r.home == ChainId("BC1"));
        CHECK(r.gateways.size() == 3);

        auto t = r.transcript();
        CHECK(t.find("BC1:L") == std::string::npos);
        CHECK(t.find(".node") == std::string::npos);

        CrossId unknown = id;
        unknown.opaque_suffix[0] ^= 0xff;
        CHECK(error_of([&] { w.resolver.resolve(unknown, w.registry); }) == Errc::NotFound);

        for (const auto& gw : w.registry.gateways_of(ChainId("BC1")))
            w.registry.set_live(gw, false);
        CHECK(error_of([&] { w.resolver.resolve(id, w.registry); }) == Errc::Unreachable);
    }

    TEST_CASE("rebind moves authority once and leaves a forward pointer")
    {
        TwoChains w;
        auto id = w.asset_with_copy("deed");
        auto proof = vouch_both(w, id);
        // Still homed at the source until the rebind.
        CHECK(w.resolver.resolve(id, w.registry).home == ChainId("BC1"));

        auto ptr = w.resolver.rebind_authority(id, ChainId("BC1"), ChainId("BC2"), proof, w.registry, w.now);
        CHECK(ptr.home_chain == ChainId("BC2"));
        CHECK(ptr.forwarded_from == ChainId("BC1"));
        CHECK(w.resolver.resolve(id, w.registry).home == ChainId("BC2"));

        CHECK(error_of([&] {
                  w.resolver.rebind_authority(id, ChainId("BC1"), ChainId("BC2"), proof, w.registry, w.now);
              }) == Errc::StaleAuthority);
        CHECK(w.resolver.history(id).size() == 2);
        CHECK(w.resolver.audit().empty());
    }

    TEST_CASE("rebind rejects a proof below its threshold")
    {
        TwoChains w;
        auto id = w.asset_with_copy("deed");
        auto [src, dst] = vouch_both(w, id);
        src.signatures.resize(1);
        REQUIRE(src.threshold_k == 2);
        CHECK(error_of([&] {
                  w.resolver.rebind_authority(id, ChainId("BC1"), ChainId("BC2"), {src, dst}, w.registry, w.now);
              }) == Errc::InvalidProof);
        CHECK(w.resolver.home(id) == ChainId("BC1"));

        // Swapped sides do not cover the move either.
        auto [src2, dst2] = vouch_both(w, id);
        CHECK(error_of([&] {
                  w.resolver.rebind_authority(id, ChainId("BC1"), ChainId("BC2"), {dst2, src2}, w.registry, w.now);
              }) == Errc::InvalidProof);
    }

    TEST_CASE("property: forward links never cycle across repeated moves")
    {
        TwoChains w;
        auto id = w.asset_with_copy("deed");
        // Alternate the home back and forth; each move is a fresh proof.
        ChainId from("BC1"), to("BC2");
        for (int move = 0; move < 6; ++move)
        {
            chain::Chain& src = *w.chains.at(from);
            chain::Chain& dst = *w.chains.at(to);
            auto s = gateway::vouch(src, id, 2, w.registry, w.now);
            auto d = gateway::vouch(dst, id, 2, w.registry, w.now);
            w.resolver.rebind_authority(id, from, to, {s, d}, w.registry, w.now);
            w.advance(1);
            std::swap(from, to);
        }
        const auto& hist = w.resolver.history(id);
        CHECK(hist.size() == 7);
        // Walk the links backwards from the newest record; each step must
        // strictly decrease the index, so the walk ends.
        std::size_t steps = 0;
        for (std::size_t i = hist.size() - 1; i > 0; --i, ++steps)
            CHECK(hist[i].forwarded_from == hist[i - 1].home_chain);
        CHECK(steps == 6);
        CHECK_FALSE(hist.front().forwarded_from.has_value());
        CHECK(w.resolver.audit().empty());
    }
}
