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
/// \file bus_provider_unavailable.cpp
///
/// Built instead of bus_provider.cpp when PCM_WITH_SDBUS is off.

#include "pcm/bus_provider.hpp"

namespace pcm
{

struct BusProvider::Impl
{
    int attempts = 0;
};

namespace
{

[[noreturn]] void unavailable()
{
    throw ProviderError(ProviderError::Kind::Transport,
                        "built without live bus support");
}

} // namespace

BusProvider::BusProvider(std::string, RetryPolicy) :
    impl_(std::make_unique<Impl>())
{}

BusProvider::~BusProvider() = default;
BusProvider::BusProvider(BusProvider&&) noexcept = default;
BusProvider& BusProvider::operator=(BusProvider&&) noexcept = default;

int BusProvider::callAttempts() const noexcept
{
    return impl_->attempts;
}

SubTree BusProvider::getSubTree(const std::string&)
{
    ++impl_->attempts;
    unavailable();
}

PropertyValue BusProvider::getProperty(const std::string&, const std::string&,
                                       const std::string&, const std::string&)
{
    ++impl_->attempts;
    unavailable();
}

bool busProviderAvailable() noexcept
{
    return false;
}

} // namespace pcm
