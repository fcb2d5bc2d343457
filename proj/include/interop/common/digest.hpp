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

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace interop
{
    using Bytes = std::vector<std::uint8_t>;
    using Digest = std::array<std::uint8_t, 32>;

    Digest sha256(std::span<const std::uint8_t> data);
    Digest sha256(std::string_view text);

    /// Keyed digest used as the abstract signature scheme.
    Digest keyed_digest(std::span<const std::uint8_t> key, std::span<const std::uint8_t> data);

    std::string to_hex(std::span<const std::uint8_t> data);

    // Length-prefixed (u32 big-endian) canonical encoding helpers.
    void put_u8(Bytes& out, std::uint8_t v);
    void put_u32(Bytes& out, std::uint32_t v);
    void put_u64(Bytes& out, std::uint64_t v);
    void put_str(Bytes& out, std::string_view s);
    void put_raw(Bytes& out, std::span<const std::uint8_t> raw);

    /// Cursor over an encoded buffer; every getter returns false on underrun.
    class Reader
    {
    public:
        explicit Reader(std::span<const std::uint8_t> data) : m_data(data) {}

        bool u8(std::uint8_t& v);
        bool u32(std::uint32_t& v);
        bool u64(std::uint64_t& v);
        bool str(std::string& s);
        bool raw(std::span<std::uint8_t> out);

        std::size_t position() const noexcept { return m_pos; }
        bool done() const noexcept { return m_pos == m_data.size(); }

    private:
        std::span<const std::uint8_t> m_data;
        std::size_t m_pos = 0;
    };
}
