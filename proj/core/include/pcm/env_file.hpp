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
/// \file env_file.hpp

#pragma once

#include "pcm/config.hpp"

#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace pcm::env
{

inline constexpr const char* defaultEnvFile = "/etc/default/nvidia-pcm";

/** rw-rw-r-- */
inline constexpr std::filesystem::perms envFilePerms =
    std::filesystem::perms::owner_read | std::filesystem::perms::owner_write |
    std::filesystem::perms::group_read | std::filesystem::perms::group_write |
    std::filesystem::perms::others_read;

/** `NAME=<name>\n` followed by every variable of every group, in order. */
std::string render(std::string_view name,
                   std::span<const config::ActionGroup> actions);

enum class WriteStage
{
    TempCreated,
    LineWritten,
    Synced,
    PermissionsSet,
    BeforeRename,
    Renamed,
};

/** Observer invoked at each stage of writeEnvFile; used for fault
 *  injection in tests. */
using WriteObserver = std::function<void(WriteStage)>;

/**
 * Writes the environment file atomically: render into a temporary file in
 * the target directory, fsync, chmod 0664, rename over `path`. On failure
 * the previous file (if any) is left untouched. Throws IoError.
 */
void writeEnvFile(std::string_view name,
                  std::span<const config::ActionGroup> actions,
                  const std::filesystem::path& path,
                  const WriteObserver& observer = {});

/** Same, with pre-rendered content. */
void writeEnvBytes(std::string_view content, const std::filesystem::path& path,
                   const WriteObserver& observer = {});

/**
 * Value of the first `NAME=` line. nullopt when the file does not exist or
 * has no such line; IoError when it exists but cannot be read.
 */
std::optional<std::string> readEnvName(const std::filesystem::path& path);

/** Lowercase hex SHA-256 of `bytes`. */
std::string digest(std::string_view bytes);

} // namespace pcm::env
