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

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace interop
{
    using Rational = boost::multiprecision::cpp_rational;

    /// Parses "20", "-3", "1.25" or "5/4" exactly. Throws Error(InvalidArgument).
    Rational parse_rational(std::string_view text);

    /// Canonical text: "25", "5/4", "-1/3".
    std::string to_string(const Rational& value);

    /// ceil(fraction * count), exact.
    std::int64_t ceil_mul(const Rational& fraction, std::int64_t count);
}
