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

#include "interop/identity/cross_id.hpp"
#include "interop/common/digest.hpp"
#include "interop/common/error.hpp"

namespace interop::identity
{
    std::string CrossId::str() const
    {
        return chain_path + "~" + to_hex(opaque_suffix);
    }

    std::optional<CrossId> CrossId::parse(const std::string& text)
    {
        auto tilde = text.rfind('~');
        if (tilde == std::string::npos || tilde == 0)
            return std::nullopt;
        std::string hex = text.substr(tilde + 1);
        if (hex.size() != kSuffixBytes * 2)
            return std::nullopt;

        auto nibble = [](char c) -> int {
            if (c >= '0' && c <= '9') return c - '0';
            if (c >= 'a' && c <= 'f') return c - 'a' + 10;
            return -1;
        };

        CrossId id;
        id.chain_path = text.substr(0, tilde);
        for (std::size_t i = 0; i < kSuffixBytes; ++i)
        {
            int hi = nibble(hex[2 * i]);
            int lo = nibble(hex[2 * i + 1]);
            if (hi < 0 || lo < 0)
                return std::nullopt;
            id.opaque_suffix[i] = static_cast<std::uint8_t>((hi << 4) | lo);
        }
        return id;
    }

    void MaskTable::bind(const CrossId& id, const LocalRef& ref)
    {
        if (auto it = m_reverse.find(ref); it != m_reverse.end())
        {
            if (it->second == id)
                return;
            fail(Errc::InvalidArgument, "local ref " + ref.str() + " on " + m_chain.str() + " already masked");
        }
        if (auto it = m_forward.find(id); it != m_forward.end())
        {
            m_reverse.erase(it->second);
            m_forward.erase(it);
        }
        m_forward.emplace(id, ref);
        m_reverse.emplace(ref, id);
    }

    std::optional<LocalRef> MaskTable::find_ref(const CrossId& id) const
    {
        auto it = m_forward.find(id);
        if (it == m_forward.end())
            return std::nullopt;
        return it->second;
    }

    std::optional<CrossId> MaskTable::find_id(const LocalRef& ref) const
    {
        auto it = m_reverse.find(ref);
        if (it == m_reverse.end())
            return std::nullopt;
        return it->second;
    }

    std::vector<MaskEntry> MaskTable::entries() const
    {
        std::vector<MaskEntry> out;
        out.reserve(m_forward.size());
        for (const auto& [id, ref] : m_forward)
            out.push_back({id, m_chain, ref});
        return out;
    }

    bool MaskTable::is_bijection() const
    {
        if (m_forward.size() != m_reverse.size())
            return false;
        for (const auto& [id, ref] : m_forward)
        {
            auto it = m_reverse.find(ref);
            if (it == m_reverse.end() || it->second != id)
                return false;
        }
        return true;
    }
}
