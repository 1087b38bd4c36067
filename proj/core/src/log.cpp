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

#include "pcm/log.hpp"

#include <cstdio>

namespace pcm
{

std::string_view toString(LogLevel level) noexcept
{
    switch (level)
    {
        case LogLevel::Debug:
            return "debug";
        case LogLevel::Info:
            return "info";
        case LogLevel::Warning:
            return "warning";
        case LogLevel::Error:
            return "error";
    }
    return "unknown";
}

std::string logQuote(std::string_view value)
{
    bool needsQuotes = value.empty();
    for (char c : value)
    {
        auto u = static_cast<unsigned char>(c);
        if (c == ' ' || c == '"' || c == '=' || c == '\\' || u < 0x20 ||
            u == 0x7f)
        {
            needsQuotes = true;
            break;
        }
    }
    if (!needsQuotes)
    {
        return std::string(value);
    }

    std::string out = "\"";
    for (char c : value)
    {
        auto u = static_cast<unsigned char>(c);
        if (c == '"' || c == '\\')
        {
            out += '\\';
            out += c;
        }
        else if (c == '\n')
        {
            out += "\\n";
        }
        else if (u < 0x20 || u == 0x7f)
        {
            char buf[8];
            std::snprintf(buf, sizeof(buf), "\\x%02x", u);
            out += buf;
        }
        else
        {
            out += c;
        }
    }
    out += '"';
    return out;
}

void Logger::log(LogLevel level, std::string_view event,
                 std::initializer_list<LogField> fields)
{
    if (level < threshold_)
    {
        return;
    }
    std::string line = "level=";
    line += toString(level);
    line += " event=";
    line += logQuote(event);
    for (const auto& [key, value] : fields)
    {
        line += ' ';
        line += key;
        line += '=';
        line += logQuote(value);
    }
    line += '\n';
    out_ << line << std::flush;
}

} // namespace pcm
