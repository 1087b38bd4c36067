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

#include "pcm/property_value.hpp"

#include <string>

namespace pcm
{

namespace
{

template <class... Ts>
struct Overloaded : Ts...
{
    using Ts::operator()...;
};

} // namespace

PropertyValue::Kind PropertyValue::kind() const noexcept
{
    return std::visit(
        Overloaded{
            [](const std::string&) { return Kind::String; },
            [](std::int64_t) { return Kind::Integer; },
            [](std::uint64_t) { return Kind::Integer; },
            [](bool) { return Kind::Boolean; },
            [](const Unsupported&) { return Kind::Unsupported; },
        },
        storage_);
}

std::string PropertyValue::canonical() const
{
    return std::visit(
        Overloaded{
            [](const std::string& v) { return v; },
            [](std::int64_t v) { return std::to_string(v); },
            [](std::uint64_t v) { return std::to_string(v); },
            [](bool v) { return std::string(v ? "true" : "false"); },
            [](const Unsupported& v) {
                return "<unsupported:" + v.typeTag + ">";
            },
        },
        storage_);
}

bool PropertyValue::operator==(const PropertyValue& other) const
{
    if (kind() == Kind::Integer && other.kind() == Kind::Integer)
    {
        return canonical() == other.canonical();
    }
    return storage_ == other.storage_;
}

std::string_view toString(PropertyValue::Kind kind) noexcept
{
    switch (kind)
    {
        case PropertyValue::Kind::String:
            return "string";
        case PropertyValue::Kind::Integer:
            return "integer";
        case PropertyValue::Kind::Boolean:
            return "boolean";
        case PropertyValue::Kind::Unsupported:
            return "unsupported";
    }
    return "unknown";
}

} // namespace pcm
