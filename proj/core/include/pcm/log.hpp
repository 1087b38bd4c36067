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
/// \file log.hpp

#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

namespace pcm
{

enum class LogLevel
{
    Debug,
    Info,
    Warning,
    Error,
};

std::string_view toString(LogLevel level) noexcept;

using LogField = std::pair<std::string_view, std::string>;

/**
 * Single-line `key=value` records, e.g.
 *   level=info event=matched name="Example Platform" provenance=matched
 * Values containing spaces, quotes, '=' or control characters are quoted.
 */
class Logger
{
  public:
    explicit Logger(std::ostream& out, LogLevel threshold = LogLevel::Info) :
        out_(out), threshold_(threshold)
    {}

    void log(LogLevel level, std::string_view event,
             std::initializer_list<LogField> fields = {});

    void debug(std::string_view event, std::initializer_list<LogField> f = {})
    {
        log(LogLevel::Debug, event, f);
    }
    void info(std::string_view event, std::initializer_list<LogField> f = {})
    {
        log(LogLevel::Info, event, f);
    }
    void warning(std::string_view event, std::initializer_list<LogField> f = {})
    {
        log(LogLevel::Warning, event, f);
    }
    void error(std::string_view event, std::initializer_list<LogField> f = {})
    {
        log(LogLevel::Error, event, f);
    }

  private:
    std::ostream& out_;
    LogLevel threshold_;
};

/** Quotes `value` for a log record when needed. */
std::string logQuote(std::string_view value);

} // namespace pcm
