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

#include "interop/common/digest.hpp"

#include <openssl/evp.h>
#include <openssl/hmac.h>

namespace interop
{
    Digest sha256(std::span<const std::uint8_t> data)
    {
        Digest out{};
        unsigned int len = 0;
        EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr);
        return out;
    }

    Digest sha256(std::string_view text)
    {
        return sha256(std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
    }

    Digest keyed_digest(std::span<const std::uint8_t> key, std::span<const std::uint8_t> data)
    {
        Digest out{};
        unsigned int len = 0;
        HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), data.data(), data.size(), out.data(), &len);
        return out;
    }

    std::string to_hex(std::span<const std::uint8_t> data)
    {
        static constexpr char digits[] = "0123456789abcdef";
        std::string out;
        out.reserve(data.size() * 2);
        for (auto b : data)
        {
            out.push_back(digits[b >> 4]);
            out.push_back(digits[b & 0x0f]);
        }
        return out;
    }

    void put_u8(Bytes& out, std::uint8_t v) { out.push_back(v); }

    void put_u32(Bytes& out, std::uint32_t v)
    {
        for (int shift = 24; shift >= 0; shift -= 8)
            out.push_back(static_cast<std::uint8_t>(v >> shift));
    }

    void put_u64(Bytes& out, std::uint64_t v)
    {
        for (int shift = 56; shift >= 0; shift -= 8)
            out.push_back(static_cast<std::uint8_t>(v >> shift));
    }

    void put_str(Bytes& out, std::string_view s)
    {
        put_u32(out, static_cast<std::uint32_t>(s.size()));
        out.insert(out.end(), s.begin(), s.end());
    }

    void put_raw(Bytes& out, std::span<const std::uint8_t> raw)
    {
        out.insert(out.end(), raw.begin(), raw.end());
    }

    bool Reader::u8(std::uint8_t& v)
    {
        if (m_pos + 1 > m_data.size())
            return false;
        v = m_data[m_pos++];
        return true;
    }

    bool Reader::u32(std::uint32_t& v)
    {
        if (m_pos + 4 > m_data.size())
            return false;
        v = 0;
        for (int i = 0; i < 4; ++i)
            v = (v << 8) | m_data[m_pos++];
        return true;
    }

    bool Reader::u64(std::uint64_t& v)
    {
        if (m_pos + 8 > m_data.size())
            return false;
        v = 0;
        for (int i = 0; i < 8; ++i)
            v = (v << 8) | m_data[m_pos++];
        return true;
    }

    bool Reader::str(std::string& s)
    {
        std::uint32_t len = 0;
        if (!u32(len) || m_pos + len > m_data.size())
            return false;
        s.assign(reinterpret_cast<const char*>(m_data.data() + m_pos), len);
        m_pos += len;
        return true;
    }

    bool Reader::raw(std::span<std::uint8_t> out)
    {
        if (m_pos + out.size() > m_data.size())
            return false;
        std::copy_n(m_data.begin() + static_cast<std::ptrdiff_t>(m_pos), out.size(), out.begin());
        m_pos += out.size();
        return true;
    }
}
