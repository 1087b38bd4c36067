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
/// \file config.cpp

#include "pcm/config.hpp"

#include "json_util.hpp"
#include "pcm/errors.hpp"

#include <algorithm>
#include <array>
#include <system_error>

namespace pcm::config
{

namespace fs = std::filesystem;
using nlohmann::json;

namespace
{

constexpr std::array<std::string_view, 4> topLevelKeys = {"Name", "rule",
                                                          "Checks", "Actions"};
constexpr std::array<std::string_view, 5> checkKeys = {
    "rule", "objects", "interface", "property", "value"};
constexpr std::array<std::string_view, 1> actionKeys = {"variables"};

[[noreturn]] void schemaError(const fs::path& source, const std::string& what)
{
    throw ConfigError(ConfigError::Kind::Schema, source, what);
}

template <std::size_t N>
void rejectUnknownKeys(const json& object,
                       const std::array<std::string_view, N>& allowed,
                       const std::string& where, const fs::path& source)
{
    for (const auto& item : object.items())
    {
        if (std::find(allowed.begin(), allowed.end(), item.key()) ==
            allowed.end())
        {
            schemaError(source, where + "unknown key \"" + item.key() + "\"");
        }
    }
}

const json& require(const json& object, const char* key,
                    const std::string& where, const fs::path& source)
{
    auto it = object.find(key);
    if (it == object.end())
    {
        schemaError(source, where + "missing required key \"" + key + "\"");
    }
    return *it;
}

std::string requireString(const json& value, const std::string& where,
                          const fs::path& source, bool allowEmpty = false)
{
    if (!value.is_string())
    {
        schemaError(source, where + ": expected string, got " +
                                std::string(value.type_name()));
    }
    auto text = value.get<std::string>();
    if (!allowEmpty && text.empty())
    {
        schemaError(source, where + ": must not be empty");
    }
    return text;
}

Rule requireRule(const json& value, const std::string& where,
                 const fs::path& source)
{
    auto text = requireString(value, where, source, true);
    auto rule = parseRule(text);
    if (!rule)
    {
        schemaError(source, where + ": unknown rule \"" + text +
                                "\" (expected MatchAll or MatchOne)");
    }
    return *rule;
}

PropertyValue requireExpectedValue(const json& value, const std::string& where,
                                   const fs::path& source)
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
        default:
            schemaError(source,
                        where + ": expected string, integer or boolean, got " +
                            std::string(value.type_name()));
    }
}

Check parseCheck(const json& object, const std::string& where,
                 const fs::path& source)
{
    if (!object.is_object())
    {
        schemaError(source, where + ": expected object");
    }
    rejectUnknownKeys(object, checkKeys, where + ".", source);

    Check check;
    check.rule =
        requireRule(require(object, "rule", where + ": ", source),
                    where + ".rule", source);

    const auto& objects = require(object, "objects", where + ": ", source);
    if (!objects.is_array())
    {
        schemaError(source, where + ".objects: expected array");
    }
    for (std::size_t i = 0; i < objects.size(); ++i)
    {
        check.objects.push_back(requireString(
            objects[i], where + ".objects[" + std::to_string(i) + "]",
            source));
    }

    check.interface =
        requireString(require(object, "interface", where + ": ", source),
                      where + ".interface", source);
    check.property =
        requireString(require(object, "property", where + ": ", source),
                      where + ".property", source);
    check.value =
        requireExpectedValue(require(object, "value", where + ": ", source),
                             where + ".value", source);
    return check;
}

ActionGroup parseActionGroup(const json& object, const std::string& where,
                             const fs::path& source)
{
    if (!object.is_object())
    {
        schemaError(source, where + ": expected object");
    }
    rejectUnknownKeys(object, actionKeys, where + ".", source);

    const auto& variables =
        require(object, "variables", where + ": ", source);
    if (!variables.is_array())
    {
        schemaError(source, where + ".variables: expected array");
    }

    ActionGroup group;
    for (std::size_t i = 0; i < variables.size(); ++i)
    {
        auto entryWhere = where + ".variables[" + std::to_string(i) + "]";
        auto text = requireString(variables[i], entryWhere, source, true);
        try
        {
            group.variables.push_back(parseAssignment(text, source));
        }
        catch (const ConfigError& e)
        {
            schemaError(source, entryWhere + ": " + e.detail());
        }
    }
    return group;
}

bool isKeyStart(char c)
{
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

bool isKeyChar(char c)
{
    return isKeyStart(c) || (c >= '0' && c <= '9');
}

bool hasLineBreak(std::string_view text)
{
    return text.find_first_of("\r\n") != std::string_view::npos;
}

} // namespace

std::string_view toString(Rule rule) noexcept
{
    return rule == Rule::MatchOne ? "MatchOne" : "MatchAll";
}

std::optional<Rule> parseRule(std::string_view text) noexcept
{
    if (text == "MatchAll")
    {
        return Rule::MatchAll;
    }
    if (text == "MatchOne")
    {
        return Rule::MatchOne;
    }
    return std::nullopt;
}

const PlatformConfig* ConfigDirectory::findByName(std::string_view name) const
{
    for (const auto& config : configs)
    {
        if (config.name == name)
        {
            return &config;
        }
    }
    if (defaultConfig && defaultConfig->name == name)
    {
        return &*defaultConfig;
    }
    return nullptr;
}

EnvAssignment parseAssignment(std::string_view text, const fs::path& source)
{
    auto eq = text.find('=');
    if (eq == std::string_view::npos)
    {
        schemaError(source, "\"" + std::string(text) +
                                "\" is not a KEY=VALUE assignment");
    }
    auto key = text.substr(0, eq);
    auto value = text.substr(eq + 1);

    if (key.empty() || !isKeyStart(key.front()) ||
        !std::all_of(key.begin(), key.end(), isKeyChar))
    {
        schemaError(source, "invalid variable name \"" + std::string(key) +
                                "\" (expected [A-Za-z_][A-Za-z0-9_]*)");
    }
    if (key == reservedNameKey)
    {
        schemaError(source, "variable NAME is reserved for the platform name");
    }
    if (hasLineBreak(value))
    {
        schemaError(source, "value of " + std::string(key) +
                                " contains a line break");
    }
    return EnvAssignment{std::string(key), std::string(value)};
}

void validateName(std::string_view name, const fs::path& source)
{
    if (name.empty())
    {
        schemaError(source, "Name: must not be empty");
    }
    if (hasLineBreak(name))
    {
        schemaError(source, "Name: contains a line break");
    }
}

PlatformConfig parseConfig(const json& document, const fs::path& source)
{
    if (!document.is_object())
    {
        schemaError(source, "top level: expected object, got " +
                                std::string(document.type_name()));
    }
    rejectUnknownKeys(document, topLevelKeys, "", source);

    PlatformConfig config;
    config.sourceFile = source;
    config.name = requireString(require(document, "Name", "", source), "Name",
                                source, true);
    validateName(config.name, source);

    if (auto it = document.find("rule"); it != document.end())
    {
        config.rule = requireRule(*it, "rule", source);
    }

    const auto& checks = require(document, "Checks", "", source);
    if (!checks.is_array())
    {
        schemaError(source, "Checks: expected array");
    }
    for (std::size_t i = 0; i < checks.size(); ++i)
    {
        config.checks.push_back(
            parseCheck(checks[i], "Checks[" + std::to_string(i) + "]", source));
    }

    const auto& actions = require(document, "Actions", "", source);
    if (!actions.is_array())
    {
        schemaError(source, "Actions: expected array");
    }
    for (std::size_t i = 0; i < actions.size(); ++i)
    {
        config.actions.push_back(parseActionGroup(
            actions[i], "Actions[" + std::to_string(i) + "]", source));
    }
    return config;
}

PlatformConfig loadConfig(const fs::path& file)
{
    return parseConfig(detail::readJsonFile(file), file);
}

nlohmann::ordered_json toJson(const PlatformConfig& config)
{
    nlohmann::ordered_json out;
    out["Name"] = config.name;
    out["rule"] = toString(config.rule);

    auto checks = nlohmann::ordered_json::array();
    for (const auto& check : config.checks)
    {
        nlohmann::ordered_json item;
        item["rule"] = toString(check.rule);
        item["objects"] = check.objects;
        item["interface"] = check.interface;
        item["property"] = check.property;
        std::visit(
            [&item](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, Unsupported>)
                {
                    item["value"] = nullptr;
                }
                else
                {
                    item["value"] = v;
                }
            },
            check.value.storage());
        checks.push_back(std::move(item));
    }
    out["Checks"] = std::move(checks);

    auto actions = nlohmann::ordered_json::array();
    for (const auto& group : config.actions)
    {
        auto variables = nlohmann::ordered_json::array();
        for (const auto& assignment : group.variables)
        {
            variables.push_back(assignment.text());
        }
        nlohmann::ordered_json item;
        item["variables"] = std::move(variables);
        actions.push_back(std::move(item));
    }
    out["Actions"] = std::move(actions);
    return out;
}

std::vector<fs::path> listConfigFiles(const fs::path& dir)
{
    std::error_code ec;
    if (!fs::is_directory(dir, ec))
    {
        throw ConfigError(ConfigError::Kind::Io, dir,
                          "not a readable directory");
    }

    std::vector<fs::path> files;
    fs::directory_iterator it(dir, ec);
    if (ec)
    {
        throw ConfigError(ConfigError::Kind::Io, dir,
                          "cannot list directory: " + ec.message());
    }
    for (const auto& entry : it)
    {
        const auto filename = entry.path().filename().string();
        if (!filename.ends_with(".json") || !entry.is_regular_file(ec))
        {
            continue;
        }
        files.push_back(entry.path());
    }

    // Byte-wise on the filename alone; char_traits<char> compares as
    // unsigned char.
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) {
                  return a.filename().string() < b.filename().string();
              });
    return files;
}

ConfigDirectory loadDirectory(const fs::path& dir,
                              const std::optional<std::string>& defaultName)
{
    ConfigDirectory result;
    for (const auto& file : listConfigFiles(dir))
    {
        result.configs.push_back(loadConfig(file));
    }

    std::vector<PlatformConfig>::iterator designated = result.configs.end();
    if (defaultName)
    {
        auto count = std::count_if(
            result.configs.begin(), result.configs.end(),
            [&](const PlatformConfig& c) { return c.name == *defaultName; });
        if (count == 0)
        {
            throw ConfigError(ConfigError::Kind::Schema, dir,
                              "default config \"" + *defaultName +
                                  "\" not found");
        }
        if (count > 1)
        {
            throw ConfigError(ConfigError::Kind::Schema, dir,
                              "default config name \"" + *defaultName +
                                  "\" is not unique");
        }
        designated = std::find_if(
            result.configs.begin(), result.configs.end(),
            [&](const PlatformConfig& c) { return c.name == *defaultName; });
    }
    else
    {
        designated = std::find_if(
            result.configs.begin(), result.configs.end(),
            [](const PlatformConfig& c) {
                return c.sourceFile.filename() == defaultConfigFilename;
            });
    }

    if (designated != result.configs.end())
    {
        result.defaultConfig = std::move(*designated);
        result.configs.erase(designated);
    }
    return result;
}

} // namespace pcm::config
