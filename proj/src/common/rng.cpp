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

#include "interop/common/rng.hpp"

#include <limits>
#include <stdexcept>

namespace interop
{
    std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi)
    {
        if (hi < lo)
            throw std::invalid_argument("Rng::uniform: empty range");
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0)
            return static_cast<std::int64_t>(next());
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - (std::numeric_limits<std::uint64_t>::max() % span);
        std::uint64_t draw = next();
        while (draw >= limit)
            draw = next();
        return lo + static_cast<std::int64_t>(draw % span);
    }

    void Rng::fill(std::span<std::uint8_t> out)
    {
        std::size_t i = 0;
        while (i < out.size())
        {
            std::uint64_t word = next();
            for (int b = 0; b < 8 && i < out.size(); ++b, ++i)
            {
                out[i] = static_cast<std::uint8_t>(word & 0xff);
                word >>= 8;
            }
        }
    }
}
