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

#include <cstdint>
#include <random>
#include <span>

namespace interop
{
    /// Seeded PRNG stream. Only the raw engine output is used so runs
    /// replay identically across standard library implementations.
    class Rng
    {
    public:
        explicit Rng(std::uint64_t seed) : m_engine(seed) {}

        std::uint64_t next() { return m_engine(); }

        /// Uniform integer in [lo, hi], rejection sampled.
        std::int64_t uniform(std::int64_t lo, std::int64_t hi);

        bool chance(std::uint32_t numerator, std::uint32_t denominator)
        {
            return uniform(0, static_cast<std::int64_t>(denominator) - 1) < numerator;
        }

        void fill(std::span<std::uint8_t> out);

    private:
        std::mt19937_64 m_engine;
    };
}
