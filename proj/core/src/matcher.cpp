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

#include "pcm/matcher.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace pcm::matcher
{

namespace
{

using Target = std::pair<std::string, std::string>; // service, object path

bool ownerImplements(const SubTreeOwner& owner, const std::string& interface)
{
    return std::find(owner.interfaces.begin(), owner.interfaces.end(),
                     interface) != owner.interfaces.end();
}

std::vector<Target> discoverTargets(const config::Check& check,
                                    PropertyProvider& provider,
                                    const RecognizedServices& recognized)
{
    std::vector<Target> targets;
    for (const auto& entry : provider.getSubTree(check.interface))
    {
        for (const auto& owner : entry.owners)
        {
            if (recognized.contains(owner.service) &&
                ownerImplements(owner, check.interface))
            {
                targets.emplace_back(owner.service, entry.objectPath);
            }
        }
    }
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    return targets;
}

// Listed paths go to the recognized services that own them according to the
// subtree; a path the subtree does not know is tried on every recognized
// service.
std::vector<Target> explicitTargets(const config::Check& check,
                                    PropertyProvider& provider,
                                    const RecognizedServices& recognized)
{
    const auto tree = provider.getSubTree(check.interface);

    std::vector<Target> targets;
    for (const auto& path : check.objects)
    {
        auto entry = std::find_if(tree.begin(), tree.end(),
                                  [&](const SubTreeEntry& e) {
                                      return e.objectPath == path;
                                  });
        for (const auto& service : recognized.services())
        {
            bool claims =
                entry == tree.end() ||
                std::any_of(entry->owners.begin(), entry->owners.end(),
                            [&](const SubTreeOwner& o) {
                                return o.service == service;
                            });
            if (claims)
            {
                targets.emplace_back(service, path);
            }
        }
    }
    return targets;
}

Observation observe(PropertyProvider& provider, const Target& target,
                    const config::Check& check)
{
    Observation obs{target.first, target.second, {}, std::nullopt};
    try
    {
        auto value = provider.getProperty(target.first, target.second,
                                          check.interface, check.property);
        obs.value = value.canonical();
        if (!value.supported())
        {
            obs.error = ObservationError::Unsupported;
        }
    }
    catch (const ProviderError& e)
    {
        switch (e.kind())
        {
            case ProviderError::Kind::Transport:
                throw;
            case ProviderError::Kind::NoSuchObject:
                obs.error = ObservationError::NoSuchObject;
                break;
            case ProviderError::Kind::NoSuchProperty:
                obs.error = ObservationError::NoSuchProperty;
                break;
        }
    }
    return obs;
}

} // namespace

RecognizedServices::RecognizedServices() :
    services_{"com.Nvidia.FruManager", "xyz.openbmc_project.FruDevice"}
{}

RecognizedServices::RecognizedServices(std::vector<std::string> services)
{
    for (auto& service : services)
    {
        if (service.empty())
        {
            throw std::invalid_argument("recognized service name is empty");
        }
        if (!contains(service))
        {
            services_.push_back(std::move(service));
        }
    }
    if (services_.empty())
    {
        throw std::invalid_argument("recognized service list is empty");
    }
}

bool RecognizedServices::contains(std::string_view service) const
{
    return std::find(services_.begin(), services_.end(), service) !=
           services_.end();
}

std::string_view toString(ObservationError error) noexcept
{
    switch (error)
    {
        case ObservationError::NoSuchObject:
            return "no-such-object";
        case ObservationError::NoSuchProperty:
            return "no-such-property";
        case ObservationError::Unsupported:
            return "unsupported-type";
    }
    return "unknown";
}

std::string_view toString(MatchOutcome::Kind kind) noexcept
{
    switch (kind)
    {
        case MatchOutcome::Kind::Matched:
            return "matched";
        case MatchOutcome::Kind::DefaultFallback:
            return "default-fallback";
        case MatchOutcome::Kind::NoMatch:
            return "no-match";
    }
    return "unknown";
}

bool ruleHolds(config::Rule rule, const std::vector<Observation>& observed,
               std::string_view expected)
{
    auto matches = [&](const Observation& o) { return o.matches(expected); };
    if (rule == config::Rule::MatchOne)
    {
        return std::any_of(observed.begin(), observed.end(), matches);
    }

    // No observations never passes: an absent FRU must not match.
    if (observed.empty())
    {
        return false;
    }
    // An object served by several recognized owners matches if any of
    // them reports the expected value.
    return std::all_of(observed.begin(), observed.end(),
                       [&](const Observation& o) {
                           return std::any_of(
                               observed.begin(), observed.end(),
                               [&](const Observation& other) {
                                   return other.objectPath == o.objectPath &&
                                          matches(other);
                               });
                       });
}

CheckEvaluation evaluateCheck(const config::Check& check,
                              PropertyProvider& provider,
                              const RecognizedServices& recognized)
{
    CheckEvaluation evaluation;
    evaluation.check = check;
    evaluation.discovered = check.objects.empty();

    auto targets = evaluation.discovered
                       ? discoverTargets(check, provider, recognized)
                       : explicitTargets(check, provider, recognized);

    for (const auto& target : targets)
    {
        if (std::find(evaluation.objects.begin(), evaluation.objects.end(),
                      target.second) == evaluation.objects.end())
        {
            evaluation.objects.push_back(target.second);
        }
        evaluation.observed.push_back(observe(provider, target, check));
    }

    evaluation.passed =
        ruleHolds(check.rule, evaluation.observed, check.value.canonical());
    return evaluation;
}

ConfigEvaluation evaluateConfig(const config::PlatformConfig& config,
                                PropertyProvider& provider,
                                const RecognizedServices& recognized)
{
    ConfigEvaluation evaluation;
    evaluation.evaluated = true;
    if (config.checks.empty())
    {
        evaluation.passed = true;
        return evaluation;
    }

    const bool all = config.rule == config::Rule::MatchAll;
    evaluation.passed = all;
    for (const auto& check : config.checks)
    {
        evaluation.checks.push_back(evaluateCheck(check, provider, recognized));
        if (evaluation.checks.back().passed != all)
        {
            evaluation.passed = !all;
            break;
        }
    }
    return evaluation;
}

MatchOutcome selectPlatform(const config::ConfigDirectory& directory,
                            PropertyProvider& provider,
                            const RecognizedServices& recognized)
{
    MatchOutcome outcome;
    outcome.evaluations.resize(directory.configs.size());

    for (std::size_t i = 0; i < directory.configs.size(); ++i)
    {
        outcome.evaluations[i] =
            evaluateConfig(directory.configs[i], provider, recognized);
        if (outcome.evaluations[i].passed)
        {
            outcome.kind = MatchOutcome::Kind::Matched;
            outcome.config = directory.configs[i];
            outcome.matchedIndex = i;
            return outcome;
        }
    }

    if (directory.defaultConfig)
    {
        outcome.kind = MatchOutcome::Kind::DefaultFallback;
        outcome.config = directory.defaultConfig;
    }
    return outcome;
}

} // namespace pcm::matcher
