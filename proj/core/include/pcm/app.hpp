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
/// \file app.hpp
///
/// Oneshot orchestration: wires config loading, a provider, the matcher and
/// the env writer together and maps every outcome to an exit code.

#pragma once

#include "pcm/config.hpp"
#include "pcm/env_file.hpp"
#include "pcm/log.hpp"
#include "pcm/provider.hpp"

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace pcm::app
{

enum class Mode
{
    Detect,
    SkipChecks,
    Validate,
    Simulate,
};

std::string_view toString(Mode mode) noexcept;

enum class ExitCode : int
{
    Success = 0,   // matched or default fallback; validate clean
    Usage = 1,     // bad command line or unexpected internal failure
    NoMatch = 2,   // nothing matched and no default
    Transport = 3, // provider unreachable
    Config = 4,    // config/fixture load error; validate errors
    Io = 5,        // env file write failed
    Shadowed = 6,  // validate: unconditional config hides later ones
};

struct RunOptions
{
    Mode mode = Mode::Detect;
    std::filesystem::path configDir = config::defaultConfigDir;
    std::filesystem::path envFile = env::defaultEnvFile;
    /** nullopt selects the live bus. */
    std::optional<std::filesystem::path> fixture;
    /** Empty keeps the built-in FRU service list. */
    std::vector<std::string> recognizedServices;
    std::optional<std::string> defaultName;
    /** Report destination; "-" for stderr. */
    std::optional<std::string> report;
    /** Simulate only: directory of fixture files. */
    std::filesystem::path fleetDir;
};

/** Throws std::invalid_argument on inconsistent options. */
void validateOptions(const RunOptions& options);

using ProviderFactory =
    std::function<std::unique_ptr<PropertyProvider>(const RunOptions&)>;

/** Fixture provider when options.fixture is set, else the live bus. */
std::unique_ptr<PropertyProvider> makeProvider(const RunOptions& options);

struct Context
{
    Logger& log;
    /** Standard output; only the simulate table goes here. */
    std::ostream& out;
    ProviderFactory providers = makeProvider;
};

ExitCode runDetect(const RunOptions& options, Context& context);

/** Re-applies the config named by the existing env file without touching
 *  the provider; any inconsistency falls back to runDetect. */
ExitCode runSkipChecks(const RunOptions& options, Context& context);

/** Lints a config directory for first-match hazards. */
ExitCode runValidate(const RunOptions& options, Context& context);

/** Runs detection once per fixture in options.fleetDir and prints
 *  `fixture name provenance digest` rows (tab-separated). */
ExitCode runSimulate(const RunOptions& options, Context& context);

/** Dispatches on options.mode. */
ExitCode run(const RunOptions& options, Context& context);

} // namespace pcm::app
