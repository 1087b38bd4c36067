/*
// Copyright (c) 2026 The pcm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
*/

#include "pcm/provider.hpp"

namespace pcm
{

SubTree SubTreeCache::getSubTree(const std::string& interface)
{
    if (auto it = cache_.find(interface); it != cache_.end())
    {
        return it->second;
    }
    auto tree = inner_.getSubTree(interface);
    cache_.emplace(interface, tree);
    return tree;
}

PropertyValue SubTreeCache::getProperty(const std::string& service,
                                        const std::string& objectPath,
                                        const std::string& interface,
                                        const std::string& property)
{
    return inner_.getProperty(service, objectPath, interface, property);
}

} // namespace pcm
