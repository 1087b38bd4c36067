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
/// \file app.cpp

#include "pcm/app.hpp"

#include "pcm/bus_provider.hpp"
#include "pcm/fixture_provider.hpp"
#include "pcm/matcher.hpp"
#include "pcm/report.hpp"

#include <map>
#include <ostream>
#include <set>
#include <stdexcept>

namespace pcm::app
{

namespace fs = std::filesystem;

namespace
{

matcher::RecognizedServices recognizedFrom(const RunOptions& options)
{
    if (options.recognizedServices.empty())
    {
        return {};
    }
    return matcher::RecognizedServices(options.recognizedServices);
}

std::string providerLabel(const RunOptions& options)
{
    return options.fixture ? "fixture" : "live-bus";
}

void logConfigError(Logger& log, const ConfigError& e)
{
    log.error("config-error", {{"kind", std::string(toString(e.kind()))},
                               {"file", e.file().string()},
                               {"detail", e.detail()}});
}

std::string joinPaths(const std::vector<fs::path>& paths)
{
    std::string out;
    for (const auto& p : paths)
    {
        if (!out.empty())
        {
            out += ',';
        }
        out += p.filename().string();
    }
    return out;
}

void maybeEmitReport(const RunOptions& options, Context& context,
                     report::RunReport rep)
{
    if (!options.report)
    {
        return;
    }
    rep.mode = std::string(toString(options.mode));
    rep.configDir = options.configDir;
    rep.envFile = options.envFile;
    rep.timestamp = report::utcTimestamp();
    try
    {
        report::emitReport(rep, *options.report);
    }
    catch (const IoError& e)
    {
        // Non-fatal: the env file is what matters.
        context.log.warning("report-failed", {{"path", e.path().string()},
                                              {"detail", e.what()}});
    }
}

void logEvaluations(Logger& log, const config::ConfigDirectory& dir,
                    const matcher::MatchOutcome& outcome)
{
    for (std::size_t i = 0; i < outcome.evaluations.size(); ++i)
    {
        const auto& eval = outcome.evaluations[i];
        if (!eval.evaluated)
        {
            break;
        }
        log.debug("config-evaluated",
                  {{"name", dir.configs[i].name},
                   {"file", dir.configs[i].sourceFile.filename().string()},
                   {"result", eval.passed ? "pass" : "fail"},
                   {"checks", std::to_string(eval.checks.size())}});
    }
}

ExitCode writeSelected(const config::PlatformConfig& selected,
                       const RunOptions& options, Context& context,
                       std::string& digestOut)
{
    const auto bytes = env::render(selected.name, selected.actions);
    try
    {
        env::writeEnvBytes(bytes, options.envFile);
    }
    catch (const IoError& e)
    {
        context.log.error("env-write-failed", {{"path", e.path().string()},
                                               {"detail", e.what()}});
        return ExitCode::Io;
    }
    digestOut = env::digest(bytes);
    context.log.info("env-written", {{"path", options.envFile.string()},
                                     {"digest", digestOut}});
    return ExitCode::Success;
}

ExitCode detectWith(const config::ConfigDirectory& dir,
                    const RunOptions& options, Context& context)
{
    const auto recognized = recognizedFrom(options);

    matcher::MatchOutcome outcome;
    std::string kind;
    try
    {
        auto provider = context.providers(options);
        SubTreeCache cache(*provider);
        kind = std::string(provider->kind());
        outcome = matcher::selectPlatform(dir, cache, recognized);
    }
    catch (const ConfigError& e)
    {
        logConfigError(context.log, e);
        return ExitCode::Config;
    }
    catch (const ProviderError& e)
    {
        // A broken bus must not silently select the default.
        context.log.error("provider-failed",
                          {{"kind", std::string(toString(e.kind()))},
                           {"detail", e.what()}});
        return ExitCode::Transport;
    }
    logEvaluations(context.log, dir, outcome);

    report::RunReport rep;
    rep.providerKind = kind;
    rep.outcomeKind = std::string(matcher::toString(outcome.kind));
    rep.directory = dir;

    if (outcome.kind == matcher::MatchOutcome::Kind::NoMatch)
    {
        context.log.error("no-match",
                          {{"configs", std::to_string(dir.configs.size())},
                           {"config_dir", options.configDir.string()}});
        rep.outcome = std::move(outcome);
        maybeEmitReport(options, context, std::move(rep));
        return ExitCode::NoMatch;
    }

    const auto& selected = *outcome.config;
    const std::initializer_list<LogField> fields = {
        {"name", selected.name},
        {"file", selected.sourceFile.filename().string()},
        {"provenance", std::string(matcher::toString(outcome.kind))}};
    if (outcome.kind == matcher::MatchOutcome::Kind::DefaultFallback)
    {
        context.log.warning("default-fallback", fields);
    }
    else
    {
        context.log.info("matched", fields);
    }

    std::string digest;
    auto code = writeSelected(selected, options, context, digest);
    rep.selectedName = selected.name;
    if (code == ExitCode::Success)
    {
        rep.envDigest = digest;
    }
    rep.outcome = std::move(outcome);
    maybeEmitReport(options, context, std::move(rep));
    return code;
}

std::optional<config::ConfigDirectory> loadDir(const RunOptions& options,
                                               Context& context)
{
    try
    {
        return config::loadDirectory(options.configDir, options.defaultName);
    }
    catch (const ConfigError& e)
    {
        logConfigError(context.log, e);
        return std::nullopt;
    }
}

} // namespace

std::string_view toString(Mode mode) noexcept
{
    switch (mode)
    {
        case Mode::Detect:
            return "detect";
        case Mode::SkipChecks:
            return "skip-checks";
        case Mode::Validate:
            return "validate";
        case Mode::Simulate:
            return "simulate";
    }
    return "unknown";
}

void validateOptions(const RunOptions& options)
{
    if (options.configDir.empty())
    {
        throw std::invalid_argument("config directory must not be empty");
    }
    if (options.envFile.empty() || options.envFile.filename().empty())
    {
        throw std::invalid_argument("env file must name a file");
    }
    if (options.fixture && options.fixture->empty())
    {
        throw std::invalid_argument("fixture provider requires a path");
    }
    if (options.mode == Mode::Simulate && options.fleetDir.empty())
    {
        throw std::invalid_argument("simulate requires a fleet directory");
    }
    if (!options.recognizedServices.empty())
    {
        // Throws on empty names.
        matcher::RecognizedServices check(options.recognizedServices);
    }
    if (options.report && options.report->empty())
    {
        throw std::invalid_argument("report destination must not be empty");
    }
}

std::unique_ptr<PropertyProvider> makeProvider(const RunOptions& options)
{
    if (options.fixture)
    {
        return std::make_unique<FixtureProvider>(loadFixture(*options.fixture));
    }
    if (!busProviderAvailable())
    {
        throw ProviderError(ProviderError::Kind::Transport,
                            "built without live bus support; use --fixture");
    }
    return std::make_unique<BusProvider>();
}

ExitCode runDetect(const RunOptions& options, Context& context)
{
    context.log.info("start", {{"mode", std::string(toString(options.mode))},
                               {"config_dir", options.configDir.string()},
                               {"provider", providerLabel(options)}});
    auto dir = loadDir(options, context);
    if (!dir)
    {
        return ExitCode::Config;
    }
    return detectWith(*dir, options, context);
}

ExitCode runSkipChecks(const RunOptions& options, Context& context)
{
    context.log.info("start", {{"mode", std::string(toString(options.mode))},
                               {"config_dir", options.configDir.string()},
                               {"env_file", options.envFile.string()}});
    auto dir = loadDir(options, context);
    if (!dir)
    {
        return ExitCode::Config;
    }

    auto fallback = [&](std::string_view reason) {
        context.log.info("skip-checks-fallback",
                         {{"reason", std::string(reason)}});
        return detectWith(*dir, options, context);
    };

    std::optional<std::string> name;
    try
    {
        name = env::readEnvName(options.envFile);
    }
    catch (const IoError& e)
    {
        context.log.warning("env-read-failed", {{"path", e.path().string()},
                                                {"detail", e.what()}});
        return fallback("unreadable-env-file");
    }
    if (!name)
    {
        return fallback("no-previous-name");
    }

    const auto* config = dir->findByName(*name);
    if (!config)
    {
        return fallback("unknown-name");
    }

    context.log.info("matched", {{"name", config->name},
                                 {"file", config->sourceFile.filename().string()},
                                 {"provenance", "skip-checks"}});
    std::string digest;
    auto code = writeSelected(*config, options, context, digest);

    report::RunReport rep;
    rep.providerKind = "none";
    rep.outcomeKind = "skip-checks";
    rep.selectedName = config->name;
    if (code == ExitCode::Success)
    {
        rep.envDigest = digest;
    }
    rep.directory = *dir;
    maybeEmitReport(options, context, std::move(rep));
    return code;
}

ExitCode runValidate(const RunOptions& options, Context& context)
{
    auto& log = context.log;
    std::vector<fs::path> files;
    try
    {
        files = config::listConfigFiles(options.configDir);
    }
    catch (const ConfigError& e)
    {
        logConfigError(log, e);
        return ExitCode::Config;
    }

    int errors = 0;
    int hazards = 0;

    std::vector<config::PlatformConfig> loaded;
    for (const auto& file : files)
    {
        try
        {
            loaded.push_back(config::loadConfig(file));
        }
        catch (const ConfigError& e)
        {
            logConfigError(log, e);
            ++errors;
        }
    }

    // Default designation, as loadDirectory would do it.
    std::optional<std::size_t> defaultIndex;
    for (std::size_t i = 0; i < loaded.size(); ++i)
    {
        bool designated =
            options.defaultName
                ? loaded[i].name == *options.defaultName
                : loaded[i].sourceFile.filename() ==
                      config::defaultConfigFilename;
        if (designated && !defaultIndex)
        {
            defaultIndex = i;
        }
    }
    if (options.defaultName && !defaultIndex)
    {
        log.error("default-not-found", {{"name", *options.defaultName}});
        ++errors;
    }

    std::map<std::string, std::vector<fs::path>> byName;
    for (const auto& config : loaded)
    {
        byName[config.name].push_back(config.sourceFile);
    }
    for (const auto& [name, sources] : byName)
    {
        if (sources.size() > 1)
        {
            log.error("duplicate-name",
                      {{"name", name}, {"files", joinPaths(sources)}});
            ++errors;
        }
    }

    for (const auto& config : loaded)
    {
        std::set<std::string> keys;
        for (const auto& group : config.actions)
        {
            for (const auto& variable : group.variables)
            {
                if (!keys.insert(variable.key).second)
                {
                    log.error("duplicate-variable",
                              {{"name", config.name},
                               {"file", config.sourceFile.filename().string()},
                               {"key", variable.key}});
                    ++errors;
                }
            }
        }
    }

    std::vector<const config::PlatformConfig*> ordered;
    for (std::size_t i = 0; i < loaded.size(); ++i)
    {
        if (i != defaultIndex)
        {
            ordered.push_back(&loaded[i]);
        }
    }
    for (std::size_t i = 0; i + 1 < ordered.size(); ++i)
    {
        if (!ordered[i]->checks.empty())
        {
            continue;
        }
        std::vector<fs::path> shadowed;
        for (std::size_t j = i + 1; j < ordered.size(); ++j)
        {
            shadowed.push_back(ordered[j]->sourceFile);
        }
        log.warning("shadowing-hazard",
                    {{"name", ordered[i]->name},
                     {"file", ordered[i]->sourceFile.filename().string()},
                     {"unreachable", joinPaths(shadowed)}});
        ++hazards;
    }

    if (!defaultIndex)
    {
        log.info("no-default-config",
                 {{"expected", config::defaultConfigFilename}});
    }
    else if (!loaded[*defaultIndex].checks.empty())
    {
        log.info("default-checks-ignored",
                 {{"file", loaded[*defaultIndex].sourceFile.filename().string()}});
    }

    log.info("validate-summary",
             {{"files", std::to_string(files.size())},
              {"errors", std::to_string(errors)},
              {"hazards", std::to_string(hazards)},
              {"default", defaultIndex ? loaded[*defaultIndex].name : "none"}});

    if (errors > 0)
    {
        return ExitCode::Config;
    }
    return hazards > 0 ? ExitCode::Shadowed : ExitCode::Success;
}

ExitCode runSimulate(const RunOptions& options, Context& context)
{
    auto dir = loadDir(options, context);
    if (!dir)
    {
        return ExitCode::Config;
    }

    std::vector<fs::path> fixtures;
    try
    {
        fixtures = config::listConfigFiles(options.fleetDir);
    }
    catch (const ConfigError& e)
    {
        logConfigError(context.log, e);
        return ExitCode::Config;
    }

    const auto recognized = recognizedFrom(options);
    bool allResolved = true;
    std::string table = "fixture\tname\tprovenance\tdigest\n";
    for (const auto& file : fixtures)
    {
        matcher::MatchOutcome outcome;
        try
        {
            auto provider = loadFixture(file);
            SubTreeCache cache(provider);
            outcome = matcher::selectPlatform(*dir, cache, recognized);
        }
        catch (const ConfigError& e)
        {
            logConfigError(context.log, e);
            return ExitCode::Config;
        }

        const auto variant = file.filename().string();
        const auto provenance = std::string(matcher::toString(outcome.kind));
        if (!outcome.config)
        {
            allResolved = false;
            context.log.error("no-match", {{"fixture", variant}});
            table += variant + "\t-\t" + provenance + "\t-\n";
            continue;
        }
        if (outcome.kind == matcher::MatchOutcome::Kind::DefaultFallback)
        {
            context.log.warning("default-fallback",
                                {{"fixture", variant},
                                 {"name", outcome.config->name}});
        }
        const auto digest = env::digest(
            env::render(outcome.config->name, outcome.config->actions));
        table += variant + "\t" + outcome.config->name + "\t" + provenance +
                 "\t" + digest + "\n";
    }

    context.out << table << std::flush;
    return allResolved ? ExitCode::Success : ExitCode::NoMatch;
}

ExitCode run(const RunOptions& options, Context& context)
{
    try
    {
        validateOptions(options);
    }
    catch (const std::invalid_argument& e)
    {
        context.log.error("usage", {{"detail", e.what()}});
        return ExitCode::Usage;
    }

    switch (options.mode)
    {
        case Mode::Detect:
            return runDetect(options, context);
        case Mode::SkipChecks:
            return runSkipChecks(options, context);
        case Mode::Validate:
            return runValidate(options, context);
        case Mode::Simulate:
            return runSimulate(options, context);
    }
    return ExitCode::Usage;
}

} // namespace pcm::app
