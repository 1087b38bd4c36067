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
/// \file config.hpp
///
/// Platform configuration model. One JSON file describes one platform:
///
///   {
///     "Name": "Example Platform",
///     "rule": "MatchAll",                      (optional)
///     "Checks": [ { "rule", "objects", "interface", "property", "value" } ],
///     "Actions": [ { "variables": [ "KEY=VALUE", ... ] } ]
///   }
///
/// Everything is validated at load time so that a config which loads can
/// always be evaluated and written.

#pragma once

#include "pcm/property_value.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pcm::config
{

inline constexpr const char* defaultConfigDir =
    "/usr/share/nvidia-pcm/platform-configuration-files/";

/** Reserved filename designating the fallback configuration. */
inline constexpr const char* defaultConfigFilename = "plat_config_default.json";

/** Key written by the tool itself; configs may not assign it. */
inline constexpr const char* reservedNameKey = "NAME";

enum class Rule
{
    MatchAll,
    MatchOne,
};

std::string_view toString(Rule rule) noexcept;
std::optional<Rule> parseRule(std::string_view text) noexcept;

struct Check
{
    Rule rule = Rule::MatchAll;
    /** Empty means discover objects implementing `interface`. */
    std::vector<std::string> objects;
    std::string interface;
    std::string property;
    /** Expected value; only string, integer and boolean are accepted. */
    PropertyValue value;

    bool operator==(const Check&) const = default;
};

/** One `KEY=VALUE` line. */
struct EnvAssignment
{
    std::string key;
    std::string value;

    std::string text() const
    {
        return key + "=" + value;
    }

    bool operator==(const EnvAssignment&) const = default;
};

struct ActionGroup
{
    std::vector<EnvAssignment> variables;

    bool operator==(const ActionGroup&) const = default;
};

struct PlatformConfig
{
    std::string name;
    Rule rule = Rule::MatchAll;
    std::vector<Check> checks;
    std::vector<ActionGroup> actions;
    std::filesystem::path sourceFile;

    /** Structural equality; sourceFile is provenance, not content. */
    bool sameDefinition(const PlatformConfig& other) const
    {
        return name == other.name && rule == other.rule &&
               checks == other.checks && actions == other.actions;
    }
};

struct ConfigDirectory
{
    /** Matching order: filename ascending, byte-wise. */
    std::vector<PlatformConfig> configs;
    std::optional<PlatformConfig> defaultConfig;

    /** First config (ordered list, then default) whose name equals `name`. */
    const PlatformConfig* findByName(std::string_view name) const;
};

/**
 * Parses `KEY=VALUE`. KEY must match [A-Za-z_][A-Za-z0-9_]* and must not
 * be NAME; VALUE must not contain a line break.
 * Throws ConfigError(Schema) with `source` as the file.
 */
EnvAssignment parseAssignment(std::string_view text,
                              const std::filesystem::path& source = {});

/** Validates a platform name (non-empty, single line). */
void validateName(std::string_view name,
                  const std::filesystem::path& source = {});

PlatformConfig parseConfig(const nlohmann::json& document,
                           const std::filesystem::path& source);

PlatformConfig loadConfig(const std::filesystem::path& file);

/** Inverse of parseConfig; loading the result yields an equal definition. */
nlohmann::ordered_json toJson(const PlatformConfig& config);

/** All `*.json` regular files in `dir`, sorted by filename byte-wise. */
std::vector<std::filesystem::path>
    listConfigFiles(const std::filesystem::path& dir);

/**
 * Loads every config in `dir`, fail-fast on the first bad file.
 *
 * Without `defaultName`, the file named plat_config_default.json (if any)
 * becomes the default. With `defaultName`, the config carrying that Name
 * does instead, and it must exist exactly once.
 */
ConfigDirectory
    loadDirectory(const std::filesystem::path& dir,
                  const std::optional<std::string>& defaultName = std::nullopt);

} // namespace pcm::config
