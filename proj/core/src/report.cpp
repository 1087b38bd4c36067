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

#include "pcm/report.hpp"

#include "pcm/errors.hpp"

#include <ctime>
#include <fstream>
#include <iostream>

namespace pcm::report
{

using ojson = nlohmann::ordered_json;

namespace
{

ojson expectedValue(const PropertyValue& value)
{
    // Reported in canonical form: that is what observations compare to.
    return value.canonical();
}

ojson observationJson(const matcher::Observation& obs)
{
    ojson out;
    out["service"] = obs.service;
    out["object_path"] = obs.objectPath;
    if (obs.error)
    {
        out["error"] = std::string(matcher::toString(*obs.error));
        if (*obs.error == matcher::ObservationError::Unsupported)
        {
            out["value"] = obs.value;
        }
    }
    else
    {
        out["value"] = obs.value;
    }
    return out;
}

ojson checkJson(std::size_t index, const config::Check& check,
                const matcher::CheckEvaluation* evaluation)
{
    ojson out;
    out["index"] = index;
    out["evaluated"] = evaluation != nullptr;
    out["rule"] = std::string(config::toString(check.rule));
    out["interface"] = check.interface;
    out["property"] = check.property;
    out["expected"] = expectedValue(check.value);
    out["objects_source"] = check.objects.empty() ? "discovered" : "explicit";
    if (evaluation)
    {
        out["objects"] = evaluation->objects;
        auto observations = ojson::array();
        for (const auto& obs : evaluation->observed)
        {
            observations.push_back(observationJson(obs));
        }
        out["observations"] = std::move(observations);
        out["passed"] = evaluation->passed;
    }
    else
    {
        out["objects"] = check.objects;
        out["observations"] = ojson::array();
        out["passed"] = nullptr;
    }
    return out;
}

ojson configJson(const config::PlatformConfig& config,
                 const matcher::ConfigEvaluation* evaluation)
{
    const bool evaluated = evaluation && evaluation->evaluated;

    ojson out;
    out["name"] = config.name;
    out["source_file"] = config.sourceFile.string();
    out["rule"] = std::string(config::toString(config.rule));
    out["evaluated"] = evaluated;
    out["result"] = evaluated ? ojson(evaluation->passed) : ojson(nullptr);

    auto checks = ojson::array();
    for (std::size_t i = 0; i < config.checks.size(); ++i)
    {
        const matcher::CheckEvaluation* checkEval = nullptr;
        if (evaluated && i < evaluation->checks.size())
        {
            checkEval = &evaluation->checks[i];
        }
        checks.push_back(checkJson(i, config.checks[i], checkEval));
    }
    out["checks"] = std::move(checks);
    return out;
}

} // namespace

std::string utcTimestamp(std::chrono::system_clock::time_point when)
{
    std::time_t t = std::chrono::system_clock::to_time_t(when);
    std::tm tm{};
    ::gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

ojson toJson(const RunReport& report)
{
    ojson out;
    out["schema_version"] = schemaVersion;
    out["timestamp"] = report.timestamp;
    out["mode"] = report.mode;
    out["config_dir"] = report.configDir.string();
    out["provider"] = report.providerKind;

    ojson outcome;
    outcome["kind"] = report.outcomeKind;
    outcome["selected_name"] =
        report.selectedName ? ojson(*report.selectedName) : ojson(nullptr);
    outcome["matched_index"] =
        report.outcome && report.outcome->matchedIndex
            ? ojson(*report.outcome->matchedIndex)
            : ojson(nullptr);
    out["outcome"] = std::move(outcome);

    ojson envFile;
    envFile["path"] = report.envFile.string();
    envFile["digest"] =
        report.envDigest ? ojson(*report.envDigest) : ojson(nullptr);
    out["env_file"] = std::move(envFile);

    if (report.directory.defaultConfig)
    {
        ojson def;
        def["name"] = report.directory.defaultConfig->name;
        def["source_file"] =
            report.directory.defaultConfig->sourceFile.string();
        out["default_config"] = std::move(def);
    }
    else
    {
        out["default_config"] = nullptr;
    }

    auto configs = ojson::array();
    const auto& list = report.directory.configs;
    for (std::size_t i = 0; i < list.size(); ++i)
    {
        const matcher::ConfigEvaluation* evaluation = nullptr;
        if (report.outcome && i < report.outcome->evaluations.size())
        {
            evaluation = &report.outcome->evaluations[i];
        }
        configs.push_back(configJson(list[i], evaluation));
    }
    out["configs"] = std::move(configs);
    return out;
}

void emitReport(const RunReport& report, const std::string& dest)
{
    const std::string text = toJson(report).dump(2) + "\n";
    if (dest == "-")
    {
        std::cerr << text << std::flush;
        return;
    }
    std::ofstream out(dest, std::ios::binary | std::ios::trunc);
    if (!out)
    {
        throw IoError(dest, "cannot open report for writing");
    }
    out << text;
    out.flush();
    if (!out)
    {
        throw IoError(dest, "report write failed");
    }
}

} // namespace pcm::report
