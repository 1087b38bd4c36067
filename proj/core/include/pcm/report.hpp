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
/// \file report.hpp
///
/// Machine-readable run report. Walks the configs in evaluation order and
/// records, for every check that ran, the expected value, the objects
/// queried and every observed value or error. Configs and checks that
/// selection never reached are listed with "evaluated": false.
/// Schema: docs/report-schema.md.

#pragma once

#include "pcm/config.hpp"
#include "pcm/matcher.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>

namespace pcm::report
{

inline constexpr int schemaVersion = 1;

struct RunReport
{
    std::string mode;
    std::filesystem::path configDir;
    std::string providerKind;
    /** "matched", "default-fallback", "no-match" or "skip-checks". */
    std::string outcomeKind;
    std::optional<std::string> selectedName;
    std::filesystem::path envFile;
    std::optional<std::string> envDigest;
    config::ConfigDirectory directory;
    /** Absent when no detection ran (skip-checks hit). */
    std::optional<matcher::MatchOutcome> outcome;
    std::string timestamp;
};

/** `YYYY-MM-DDTHH:MM:SSZ` */
std::string utcTimestamp(std::chrono::system_clock::time_point when =
                             std::chrono::system_clock::now());

nlohmann::ordered_json toJson(const RunReport& report);

/** Writes the report as one JSON document. `dest` "-" means stderr.
 *  Throws IoError. */
void emitReport(const RunReport& report, const std::string& dest);

} // namespace pcm::report
