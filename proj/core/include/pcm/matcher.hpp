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
/// \file matcher.hpp
///
/// Check evaluation and first-match platform selection.
///
/// A check reads `property` from every object it targets and compares the
/// canonical string form against the expected value: MatchAll needs at
/// least one observation and every object equal, MatchOne needs any one
/// equal.
/// Objects are the explicit list, or, when that is empty, everything the
/// subtree query returns for `interface` owned by a recognized FRU service.
///
/// A config combines its checks under its own rule, evaluated in order with
/// short-circuit (MatchAll stops at the first failure, MatchOne at the first
/// pass). No checks at all means the config matches.

#pragma once

#include "pcm/config.hpp"
#include "pcm/provider.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pcm::matcher
{

/** Services whose objects are trusted as FRU identity sources. */
class RecognizedServices
{
  public:
    /** com.Nvidia.FruManager, xyz.openbmc_project.FruDevice */
    RecognizedServices();

    /** Keeps first occurrence order; throws std::invalid_argument if empty
     *  or if any name is empty. */
    explicit RecognizedServices(std::vector<std::string> services);

    const std::vector<std::string>& services() const noexcept
    {
        return services_;
    }

    bool contains(std::string_view service) const;

  private:
    std::vector<std::string> services_;
};

enum class ObservationError
{
    NoSuchObject,
    NoSuchProperty,
    Unsupported,
};

std::string_view toString(ObservationError error) noexcept;

struct Observation
{
    std::string service;
    std::string objectPath;
    /** Canonical value, or the unsupported placeholder when error is
     *  Unsupported; empty for the other errors. */
    std::string value;
    std::optional<ObservationError> error;

    /** Error observations never match. */
    bool matches(std::string_view expected) const
    {
        return !error && value == expected;
    }

    bool operator==(const Observation&) const = default;
};

/** The rule over a set of observations. Pure. Under MatchAll every
 *  distinct object path needs at least one matching observation. */
bool ruleHolds(config::Rule rule, const std::vector<Observation>& observed,
               std::string_view expected);

struct CheckEvaluation
{
    config::Check check;
    /** True when objects came from subtree discovery. */
    bool discovered = false;
    /** Object paths actually targeted, in query order, deduplicated. */
    std::vector<std::string> objects;
    std::vector<Observation> observed;
    bool passed = false;

    bool operator==(const CheckEvaluation&) const = default;
};

struct ConfigEvaluation
{
    /** Whether selection reached this config at all. */
    bool evaluated = false;
    bool passed = false;
    /** Evaluated checks only; a prefix of config.checks. */
    std::vector<CheckEvaluation> checks;

    bool operator==(const ConfigEvaluation&) const = default;
};

struct MatchOutcome
{
    enum class Kind
    {
        Matched,
        DefaultFallback,
        NoMatch,
    };

    Kind kind = Kind::NoMatch;
    std::optional<config::PlatformConfig> config;
    /** Index into ConfigDirectory::configs when kind is Matched. */
    std::optional<std::size_t> matchedIndex;
    /** One entry per ConfigDirectory::configs element, in order. */
    std::vector<ConfigEvaluation> evaluations;
};

std::string_view toString(MatchOutcome::Kind kind) noexcept;

/** Transport errors propagate; missing objects/properties become error
 *  observations. */
CheckEvaluation evaluateCheck(const config::Check& check,
                              PropertyProvider& provider,
                              const RecognizedServices& recognized);

ConfigEvaluation evaluateConfig(const config::PlatformConfig& config,
                                PropertyProvider& provider,
                                const RecognizedServices& recognized);

/** First matching config in directory order, else the default, else
 *  NoMatch. A Transport error aborts selection. */
MatchOutcome selectPlatform(const config::ConfigDirectory& directory,
                            PropertyProvider& provider,
                            const RecognizedServices& recognized);

} // namespace pcm::matcher
