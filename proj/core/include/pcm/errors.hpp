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
/// \file errors.hpp

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pcm
{

/** Raised while loading configuration or fixture files. */
class ConfigError : public std::runtime_error
{
  public:
    enum class Kind
    {
        Parse,  // malformed JSON
        Schema, // well-formed JSON that violates the document schema
        Io,     // missing or unreadable file/directory
    };

    ConfigError(Kind kind, std::filesystem::path file, const std::string& what);

    Kind kind() const noexcept
    {
        return kind_;
    }

    const std::filesystem::path& file() const noexcept
    {
        return file_;
    }

    /** Message without the file prefix. */
    const std::string& detail() const noexcept
    {
        return detail_;
    }

  private:
    Kind kind_;
    std::filesystem::path file_;
    std::string detail_;
};

std::string_view toString(ConfigError::Kind kind) noexcept;

/** Raised by PropertyProvider implementations. */
class ProviderError : public std::runtime_error
{
  public:
    enum class Kind
    {
        Transport,
        NoSuchObject,
        NoSuchProperty,
    };

    ProviderError(Kind kind, const std::string& what) :
        std::runtime_error(what), kind_(kind)
    {}

    Kind kind() const noexcept
    {
        return kind_;
    }

  private:
    Kind kind_;
};

std::string_view toString(ProviderError::Kind kind) noexcept;

/** Raised when writing or reading the environment file fails. */
class IoError : public std::runtime_error
{
  public:
    IoError(std::filesystem::path path, const std::string& what);

    const std::filesystem::path& path() const noexcept
    {
        return path_;
    }

  private:
    std::filesystem::path path_;
};

} // namespace pcm
