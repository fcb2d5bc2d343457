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


#include "interop/scenario/config.hpp"

namespace interop::scenario
{
    std::string node_name(const ChainId& chain, std::size_t index)
    {
        return chain.str() + ".node" + std::to_string(index);
    }

    std::string gateway_name(const ChainId& chain, std::size_t index)
    {
        return chain.str() + ".gw" + std::to_string(index);
    }

    std::string credential_token(const AppId& app, const ChainId& chain)
    {
        return "cap:" + app.str() + "@" + chain.str();
    }
}
