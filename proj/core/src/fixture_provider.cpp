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

#include "pcm/fixture_provider.hpp"

#include "json_util.hpp"

#include <map>

namespace pcm
{

namespace fs = std::filesystem;
using nlohmann::json;

namespace
{

[[noreturn]] void schemaError(const fs::path& source, const std::string& what)
{
    throw ConfigError(ConfigError::Kind::Schema, source, what);
}

const json& requireObject(const json& value, const std::string& where,
                          const fs::path& source)
{
    if (!value.is_object())
    {
        schemaError(source, where + ": expected object, got " +
                                std::string(value.type_name()));
    }
    return value;
}

void requireKey(const std::string& key, const std::string& where,
                const fs::path& source)
{
    if (key.empty())
    {
        schemaError(source, where + ": empty key");
    }
}

PropertyValue toPropertyValue(const json& value)
{
    switch (value.type())
    {
        case json::value_t::string:
            return PropertyValue(value.get<std::string>());
        case json::value_t::number_integer:
            return PropertyValue(value.get<std::int64_t>());
        case json::value_t::number_unsigned:
            return PropertyValue(value.get<std::uint64_t>());
        case json::value_t::boolean:
            return PropertyValue(value.get<bool>());
        case json::value_t::number_float:
            return PropertyValue(Unsupported{"double"});
        case json::value_t::array:
            return PropertyValue(Unsupported{"array"});
        case json::value_t::object:
            return PropertyValue(Unsupported{"dict"});
        default:
            return PropertyValue(Unsupported{value.type_name()});
    }
}

} // namespace

FixtureDocument parseFixture(const json& document, const fs::path& source)
{
    requireObject(document, "top level", source);
    for (const auto& item : document.items())
    {
        if (item.key() != "services")
        {
            schemaError(source, "unknown key \"" + item.key() + "\"");
        }
    }
    auto servicesIt = document.find("services");
    if (servicesIt == document.end())
    {
        schemaError(source, "missing required key \"services\"");
    }

    FixtureDocument fixture;
    const auto& services = requireObject(*servicesIt, "/services", source);
    for (const auto& [service, objects] : services.items())
    {
        auto serviceWhere = "/services/" + service;
        requireKey(service, "/services", source);
        auto& outObjects = fixture.services[service];
        for (const auto& [path, interfaces] :
             requireObject(objects, serviceWhere, source).items())
        {
            auto pathWhere = serviceWhere + "/" + path;
            requireKey(path, serviceWhere, source);
            auto& outInterfaces = outObjects[path];
            for (const auto& [interface, properties] :
                 requireObject(interfaces, pathWhere, source).items())
            {
                auto ifaceWhere = pathWhere + "/" + interface;
                requireKey(interface, pathWhere, source);
                auto& outProperties = outInterfaces[interface];
                for (const auto& [property, value] :
                     requireObject(properties, ifaceWhere, source).items())
                {
                    requireKey(property, ifaceWhere, source);
                    outProperties.emplace(property, toPropertyValue(value));
                }
            }
        }
    }
    return fixture;
}

FixtureDocument loadFixtureDocument(const fs::path& file)
{
    return parseFixture(detail::readJsonFile(file), file);
}

nlohmann::ordered_json toJson(const FixtureDocument& document)
{
    nlohmann::ordered_json services = nlohmann::ordered_json::object();
    for (const auto& [service, objects] : document.services)
    {
        auto& outObjects = services[service] = nlohmann::ordered_json::object();
        for (const auto& [path, interfaces] : objects)
        {
            auto& outInterfaces = outObjects[path] =
                nlohmann::ordered_json::object();
            for (const auto& [interface, properties] : interfaces)
            {
                auto& outProperties = outInterfaces[interface] =
                    nlohmann::ordered_json::object();
                for (const auto& [property, value] : properties)
                {
                    std::visit(
                        [&](const auto& v) {
                            using T = std::decay_t<decltype(v)>;
                            if constexpr (std::is_same_v<T, Unsupported>)
                            {
                                // Placeholders; only the type tag survives.
                                if (v.typeTag == "array")
                                {
                                    outProperties[property] =
                                        nlohmann::ordered_json::array();
                                }
                                else if (v.typeTag == "dict")
                                {
                                    outProperties[property] =
                                        nlohmann::ordered_json::object();
                                }
                                else if (v.typeTag == "double")
                                {
                                    outProperties[property] = 0.5;
                                }
                                else
                                {
                                    outProperties[property] = nullptr;
                                }
                            }
                            else
                            {
                                outProperties[property] = v;
                            }
                        },
                        value.storage());
                }
            }
        }
    }
    nlohmann::ordered_json out;
    out["services"] = std::move(services);
    return out;
}

const FixtureDocument& FixtureProvider::document() const
{
    if (!document_)
    {
        throw ProviderError(ProviderError::Kind::Transport,
                            "fixture provider has no document loaded");
    }
    return *document_;
}

SubTree FixtureProvider::getSubTree(const std::string& interface)
{
    const auto& doc = document();

    // path -> owners, both ordered
    std::map<std::string, std::vector<SubTreeOwner>> byPath;
    for (const auto& [service, objects] : doc.services)
    {
        for (const auto& [path, interfaces] : objects)
        {
            if (!interfaces.contains(interface))
            {
                continue;
            }
            SubTreeOwner owner{service, {}};
            for (const auto& [name, properties] : interfaces)
            {
                owner.interfaces.push_back(name);
            }
            byPath[path].push_back(std::move(owner));
        }
    }

    SubTree tree;
    for (auto& [path, owners] : byPath)
    {
        tree.push_back(SubTreeEntry{path, std::move(owners)});
    }
    return tree;
}

PropertyValue FixtureProvider::getProperty(const std::string& service,
                                           const std::string& objectPath,
                                           const std::string& interface,
                                           const std::string& property)
{
    const auto& doc = document();

    auto serviceIt = doc.services.find(service);
    if (serviceIt == doc.services.end())
    {
        throw ProviderError(ProviderError::Kind::NoSuchObject,
                            "no service " + service);
    }
    auto objectIt = serviceIt->second.find(objectPath);
    if (objectIt == serviceIt->second.end())
    {
        throw ProviderError(ProviderError::Kind::NoSuchObject,
                            "no object " + objectPath + " on " + service);
    }
    auto ifaceIt = objectIt->second.find(interface);
    if (ifaceIt == objectIt->second.end())
    {
        throw ProviderError(ProviderError::Kind::NoSuchObject,
                            objectPath + " does not implement " + interface);
    }
    auto propIt = ifaceIt->second.find(property);
    if (propIt == ifaceIt->second.end())
    {
        throw ProviderError(ProviderError::Kind::NoSuchProperty,
                            "no property " + property + " on " + objectPath);
    }
    return propIt->second;
}

FixtureProvider loadFixture(const fs::path& file)
{
    return FixtureProvider(loadFixtureDocument(file));
}

} // namespace pcm
