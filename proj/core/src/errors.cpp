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

#include "pcm/errors.hpp"

namespace pcm
{

namespace
{

std::string prefixed(const std::filesystem::path& file, const std::string& what)
{
    if (file.empty())
    {
        return what;
    }
    return file.string() + ": " + what;
}

} // namespace

ConfigError::ConfigError(Kind kind, std::filesystem::path file,
                         const std::string& what) :
    std::runtime_error(prefixed(file, what)), kind_(kind),
    file_(std::move(file)), detail_(what)
{}

std::string_view toString(ConfigError::Kind kind) noexcept
{
    switch (kind)
    {
        case ConfigError::Kind::Parse:
            return "parse";
        case ConfigError::Kind::Schema:
            return "schema";
        case ConfigError::Kind::Io:
            return "io";
    }
    return "unknown";
}

std::string_view toString(ProviderError::Kind kind) noexcept
{
    switch (kind)
    {
        case ProviderError::Kind::Transport:
            return "transport";
        case ProviderError::Kind::NoSuchObject:
            return "no-such-object";
        case ProviderError::Kind::NoSuchProperty:
            return "no-such-property";
    }
    return "unknown";
}

IoError::IoError(std::filesystem::path path, const std::string& what) :
    std::runtime_error(prefixed(path, what)), path_(std::move(path))
{}

} // namespace pcm
