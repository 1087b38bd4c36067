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

#include "cli.hpp"

#include <CLI11.hpp>

#include <ostream>

namespace pcm::cli
{

namespace
{

class Parser
{
  public:
    Parser()
    {
        auto& o = cmd_.options;
        app_.fallthrough();
        app_.require_subcommand(0, 1);

        app_.add_flag("--skip-checks", skipChecks_,
                      "Re-apply the config named by the existing env file "
                      "without querying the bus; falls back to detection");
        app_.add_option("--config-dir", o.configDir,
                        "Directory of plat_config_*.json files")
            ->capture_default_str();
        app_.add_option("--env-file", o.envFile, "Environment file to write")
            ->capture_default_str();
        app_.add_option("--fixture", fixture_,
                        "Answer queries from a fixture file instead of the bus");
        app_.add_option("--recognized-service", o.recognizedServices,
                        "FRU service whose objects are trusted (repeatable; "
                        "replaces the built-in list)");
        app_.add_option("--default-name", defaultName_,
                        "Designate the fallback config by Name instead of "
                        "plat_config_default.json");
        app_.add_option("--report", report_,
                        "Write a JSON run report to a path, or '-' for stderr");
        app_.add_flag("-v,--verbose", cmd_.verbose,
                      "Log per-config evaluation");

        validate_ = app_.add_subcommand(
            "validate", "Lint the config directory for first-match hazards");
        simulate_ = app_.add_subcommand(
            "simulate", "Run detection once per fixture in a fleet directory");
        simulate_->add_option("fleet-dir", fleet_, "Directory of fixture files")
            ->required();
    }

    CLI::App& app()
    {
        return app_;
    }

    CommandLine parse(int argc, const char* const* argv)
    {
        app_.parse(argc, argv);

        auto& o = cmd_.options;
        if (!fixture_.empty())
        {
            o.fixture = fixture_;
        }
        if (!defaultName_.empty())
        {
            o.defaultName = defaultName_;
        }
        if (!report_.empty())
        {
            o.report = report_;
        }

        if (validate_->parsed())
        {
            o.mode = app::Mode::Validate;
        }
        else if (simulate_->parsed())
        {
            o.mode = app::Mode::Simulate;
            o.fleetDir = fleet_;
        }
        else if (skipChecks_)
        {
            o.mode = app::Mode::SkipChecks;
        }

        if (skipChecks_ && o.mode != app::Mode::SkipChecks)
        {
            throw CLI::ValidationError("--skip-checks",
                                       "only applies to detection");
        }
        return cmd_;
    }

  private:
    CLI::App app_{"Platform configuration manager: detect the hardware "
                  "variant and export its environment file",
                  "pcm"};
    CLI::App* validate_ = nullptr;
    CLI::App* simulate_ = nullptr;
    CommandLine cmd_;
    std::string fixture_;
    std::string defaultName_;
    std::string report_;
    std::string fleet_;
    bool skipChecks_ = false;
};

} // namespace

CommandLine parseCommandLine(int argc, const char* const* argv)
{
    Parser parser;
    return parser.parse(argc, argv);
}

int runMain(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err)
{
    Parser parser;
    CommandLine cmd;
    try
    {
        cmd = parser.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        // Prints help to `out` for --help, the error to `err` otherwise.
        int rc = parser.app().exit(e, out, err);
        return rc == 0 ? 0 : static_cast<int>(app::ExitCode::Usage);
    }

    Logger log(err, cmd.verbose ? LogLevel::Debug : LogLevel::Info);
    app::Context context{log, out};
    try
    {
        return static_cast<int>(app::run(cmd.options, context));
    }
    catch (const std::exception& e)
    {
        log.error("internal-error", {{"detail", e.what()}});
        return static_cast<int>(app::ExitCode::Usage);
    }
}

} // namespace pcm::cli
