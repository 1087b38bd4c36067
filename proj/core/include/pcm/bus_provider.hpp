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
/// \file bus_provider.hpp

#pragma once

#include "pcm/provider.hpp"

#include <chrono>
#include <memory>
#include <optional>
#include <string>

namespace pcm
{

/** Bounded retry for transport failures: `attempts` tries, sleeping
 *  step, 2*step, ... between them. */
struct RetryPolicy
{
    int attempts = 3;
    std::chrono::milliseconds step{200};
};

/**
 * Live message-bus backend (sd-bus).
 *
 * Subtrees come from the ObjectMapper's GetSubTree; properties from
 * org.freedesktop.DBus.Properties.Get on the owning service. The connection
 * is opened lazily on first use and re-opened after transport failures.
 */
class BusProvider final : public PropertyProvider
{
  public:
    /** `address` empty selects the system bus (DBUS_SYSTEM_BUS_ADDRESS is
     *  honoured). */
    explicit BusProvider(std::string address = {}, RetryPolicy retry = {});
    ~BusProvider() override;

    BusProvider(BusProvider&&) noexcept;
    BusProvider& operator=(BusProvider&&) noexcept;

    SubTree getSubTree(const std::string& interface) override;
    PropertyValue getProperty(const std::string& service,
                              const std::string& objectPath,
                              const std::string& interface,
                              const std::string& property) override;

    std::string_view kind() const override
    {
        return "live-bus";
    }

    /** Number of bus calls attempted, including retries. */
    int callAttempts() const noexcept;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/** Whether this build carries the live backend. */
bool busProviderAvailable() noexcept;

} // namespace pcm
