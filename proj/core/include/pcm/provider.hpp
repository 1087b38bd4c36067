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
/// \file provider.hpp

#pragma once

#include "pcm/errors.hpp"
#include "pcm/property_value.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace pcm
{

inline constexpr const char* objectMapperService =
    "xyz.openbmc_project.ObjectMapper";
inline constexpr const char* objectMapperPath =
    "/xyz/openbmc_project/object_mapper";
inline constexpr const char* objectMapperInterface =
    "xyz.openbmc_project.ObjectMapper";
inline constexpr const char* propertiesInterface =
    "org.freedesktop.DBus.Properties";

struct SubTreeOwner
{
    std::string service;
    std::vector<std::string> interfaces;

    bool operator==(const SubTreeOwner&) const = default;
};

struct SubTreeEntry
{
    std::string objectPath;
    std::vector<SubTreeOwner> owners;

    bool operator==(const SubTreeEntry&) const = default;
};

using SubTree = std::vector<SubTreeEntry>;

/**
 * Hardware-identity query surface.
 *
 * Calls are synchronous. An instance serves one detection run at a time and
 * need not be thread-safe.
 */
class PropertyProvider
{
  public:
    virtual ~PropertyProvider() = default;

    /** Every object implementing `interface` with its owning services.
     *  Empty when nothing implements it; Transport if the source is
     *  unreachable. */
    virtual SubTree getSubTree(const std::string& interface) = 0;

    /** Throws ProviderError (NoSuchObject, NoSuchProperty, Transport). */
    virtual PropertyValue getProperty(const std::string& service,
                                      const std::string& objectPath,
                                      const std::string& interface,
                                      const std::string& property) = 0;

    /** Short backend label for logs and reports ("fixture", "live-bus"). */
    virtual std::string_view kind() const = 0;
};

/**
 * Memoizes getSubTree per interface for the lifetime of one run. Property
 * reads pass straight through.
 */
class SubTreeCache final : public PropertyProvider
{
  public:
    explicit SubTreeCache(PropertyProvider& inner) : inner_(inner) {}

    SubTree getSubTree(const std::string& interface) override;
    PropertyValue getProperty(const std::string& service,
                              const std::string& objectPath,
                              const std::string& interface,
                              const std::string& property) override;

    std::string_view kind() const override
    {
        return inner_.kind();
    }

  private:
    PropertyProvider& inner_;
    std::map<std::string, SubTree, std::less<>> cache_;
};

} // namespace pcm
