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

// Error-code assertions.

#pragma once

#include "interop/common/error.hpp"

#include <optional>

namespace interop::testing
{
    /// Runs fn and returns the code of the interop::Error it throws, if any.
    template <class Fn>
    std::optional<Errc> error_of(Fn&& fn)
    {
        try
        {
            fn();
        }
        catch (const Error& e)
        {
            return e.code();
        }
        return std::nullopt;
    }
}
