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
/// \file fixture_provider.hpp
///
/// File-backed provider used for tests and fleet simulation. The document
/// nests services -> object paths -> interfaces -> properties:
///
///   { "services": { "xyz.openbmc_project.FruDevice": {
///       "/xyz/openbmc_project/FruDevice/baseboard": {
///         "xyz.openbmc_project.FruDevice": {
///           "PRODUCT_PRODUCT_NAME": "Example Product Name" } } } } }

#pragma once

#include "pcm/provider.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <map>
#include <optional>
#include <string>

namespace pcm
{

struct FixtureDocument
{
    using Properties = std::map<std::string, PropertyValue>;
    using Interfaces = std::map<std::string, Properties>;
    using Objects = std::map<std::string, Interfaces>;

    std::map<std::string, Objects> services;

    bool operator==(const FixtureDocument&) const = default;
};

/** Throws ConfigError(Schema) with a JSON-pointer-like location. */
FixtureDocument parseFixture(const nlohmann::json& document,
                             const std::filesystem::path& source = {});

FixtureDocument loadFixtureDocument(const std::filesystem::path& file);

nlohmann::ordered_json toJson(const FixtureDocument& document);

class FixtureProvider final : public PropertyProvider
{
  public:
    /** An unloaded provider; every query fails with Transport. */
    FixtureProvider() = default;

    explicit FixtureProvider(FixtureDocument document) :
        document_(std::move(document))
    {}

    bool loaded() const noexcept
    {
        return document_.has_value();
    }

    SubTree getSubTree(const std::string& interface) override;
    PropertyValue getProperty(const std::string& service,
                              const std::string& objectPath,
                              const std::string& interface,
                              const std::string& property) override;

    std::string_view kind() const override
    {
        return "fixture";
    }

  private:
    const FixtureDocument& document() const;

    std::optional<FixtureDocument> document_;
};

FixtureProvider loadFixture(const std::filesystem::path& file);

} // namespace pcm
