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

#pragma once

#include "pcm/errors.hpp"

#include <nlohmann/json.hpp>

#include <cerrno>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace pcm::detail
{

/** Reads and parses a JSON file; ConfigError(Io) or ConfigError(Parse). */
inline nlohmann::json readJsonFile(const std::filesystem::path& file)
{
    std::error_code ec;
    if (std::filesystem::is_directory(file, ec))
    {
        throw ConfigError(ConfigError::Kind::Io, file, "is a directory");
    }
    std::ifstream in(file, std::ios::binary);
    if (!in)
    {
        throw ConfigError(ConfigError::Kind::Io, file,
                          std::string("cannot open: ") + std::strerror(errno));
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad())
    {
        throw ConfigError(ConfigError::Kind::Io, file, "read failed");
    }
    try
    {
        return nlohmann::json::parse(buffer.str());
    }
    catch (const nlohmann::json::parse_error& e)
    {
        throw ConfigError(ConfigError::Kind::Parse, file, e.what());
    }
}

} // namespace pcm::detail
