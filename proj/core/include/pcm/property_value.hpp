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
/// \file property_value.hpp

#pragma once

#include <concepts>
#include <cstdint>
#include <string>
#include <utility>
#include <variant>

namespace pcm
{

/** A bus value of a type the matcher does not compare (arrays, dicts,
 *  doubles, ...). typeTag is the bus signature or a short JSON type name. */
struct Unsupported
{
    std::string typeTag;

    bool operator==(const Unsupported&) const = default;
};

/**
 * Scalar property value as read from the bus or a fixture.
 *
 * Only strings, integers and booleans take part in matching. Signed and
 * unsigned 64-bit storage both count as "integer"; they render identically
 * for equal numeric values.
 */
class PropertyValue
{
  public:
    enum class Kind
    {
        String,
        Integer,
        Boolean,
        Unsupported,
    };

    using Storage = std::variant<std::string, std::int64_t, std::uint64_t, bool,
                                 Unsupported>;

    PropertyValue() : storage_(std::string{}) {}
    PropertyValue(std::string value) : storage_(std::move(value)) {}
    PropertyValue(const char* value) : storage_(std::string(value)) {}
    PropertyValue(bool value) : storage_(value) {}
    PropertyValue(Unsupported value) : storage_(std::move(value)) {}

    template <std::integral T>
        requires(!std::same_as<T, bool> && !std::same_as<T, char>)
    PropertyValue(T value)
    {
        if constexpr (std::is_signed_v<T>)
        {
            storage_ = static_cast<std::int64_t>(value);
        }
        else
        {
            storage_ = static_cast<std::uint64_t>(value);
        }
    }

    Kind kind() const noexcept;

    bool supported() const noexcept
    {
        return kind() != Kind::Unsupported;
    }

    /**
     * Canonical comparison form. Strings pass through verbatim, integers
     * render in base 10, booleans as `true`/`false`. Unsupported values
     * render as `<unsupported:TAG>` for diagnostics only; callers must check
     * supported() before comparing.
     */
    std::string canonical() const;

    const Storage& storage() const noexcept
    {
        return storage_;
    }

    /** Integers compare by numeric value whatever their signedness. */
    bool operator==(const PropertyValue& other) const;

  private:
    Storage storage_;
};

std::string_view toString(PropertyValue::Kind kind) noexcept;

} // namespace pcm
