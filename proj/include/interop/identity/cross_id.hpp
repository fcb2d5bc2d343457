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

#include "interop/common/types.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace interop::identity
{
    inline constexpr std::size_t kSuffixBytes = 16;

    /// Externally visible identifier: hierarchical chain path plus an
    /// opaque random suffix. Text form: "community.bc1~<32 hex>".
    struct CrossId
    {
        std::string chain_path;
        std::array<std::uint8_t, kSuffixBytes> opaque_suffix{};

        std::string str() const;
        static std::optional<CrossId> parse(const std::string& text);

        auto operator<=>(const CrossId&) const = default;
        bool operator==(const CrossId&) const = default;
    };

    /// Where an asset currently lives. forwarded_from is the previous home.
    struct AuthoritativePointer
    {
        CrossId asset_id;
        ChainId home_chain;
        std::optional<ChainId> forwarded_from;
        Tick rebind_tick = 0;

        bool operator==(const AuthoritativePointer&) const = default;
    };

    struct MaskEntry
    {
        CrossId cross_id;
        ChainId chain_id;
        LocalRef local_ref;
    };

    /// Per-chain bijection between cross-domain ids and local ledger refs.
    class MaskTable
    {
    public:
        explicit MaskTable(ChainId chain) : m_chain(std::move(chain)) {}

        /// Binds id to ref. A ref already bound to a different id is rejected;
        /// an id already bound elsewhere is moved, dropping its old ref.
        void bind(const CrossId& id, const LocalRef& ref);

        std::optional<LocalRef> find_ref(const CrossId& id) const;
        std::optional<CrossId> find_id(const LocalRef& ref) const;

        std::vector<MaskEntry> entries() const;
        std::size_t size() const noexcept { return m_forward.size(); }

        /// Exhaustive scan of both directions.
        bool is_bijection() const;

    private:
        ChainId m_chain;
        std::map<CrossId, LocalRef> m_forward;
        std::map<LocalRef, CrossId> m_reverse;
    };
}
