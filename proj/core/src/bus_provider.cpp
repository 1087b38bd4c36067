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
/// \file bus_provider.cpp

#include "pcm/bus_provider.hpp"

#include "sd_bus_api.hpp"

#include <array>
#include <cstring>
#include <string_view>
#include <thread>

namespace pcm
{

namespace
{

using BusPtr = std::unique_ptr<sd_bus, sdbus::BusDeleter>;
using MessagePtr = std::unique_ptr<sd_bus_message, sdbus::MessageDeleter>;

constexpr std::uint64_t callTimeoutUsec = 5'000'000;

constexpr std::array<std::string_view, 2> noSuchPropertyErrors = {
    "org.freedesktop.DBus.Error.UnknownProperty",
    "org.freedesktop.DBus.Error.InvalidArgs",
};

constexpr std::array<std::string_view, 6> noSuchObjectErrors = {
    "org.freedesktop.DBus.Error.UnknownObject",
    "org.freedesktop.DBus.Error.UnknownInterface",
    "org.freedesktop.DBus.Error.UnknownMethod",
    "org.freedesktop.DBus.Error.ServiceUnknown",
    "org.freedesktop.DBus.Error.NameHasNoOwner",
    "org.freedesktop.DBus.Error.FileNotFound",
};

// Object mapper replies for "nothing implements that interface".
constexpr std::array<std::string_view, 2> emptySubTreeErrors = {
    "xyz.openbmc_project.Common.Error.ResourceNotFound",
    "org.freedesktop.DBus.Error.FileNotFound",
};

template <std::size_t N>
bool oneOf(std::string_view name, const std::array<std::string_view, N>& set)
{
    for (auto candidate : set)
    {
        if (candidate == name)
        {
            return true;
        }
    }
    return false;
}

[[noreturn]] void transport(const std::string& what, int r)
{
    throw ProviderError(ProviderError::Kind::Transport,
                        what + ": " + std::strerror(-r));
}

void check(int r, const char* what)
{
    if (r < 0)
    {
        transport(std::string("malformed reply (") + what + ")", r);
    }
}

std::string describe(const sdbus::Error& error, int r)
{
    if (*error.name())
    {
        return std::string(error.name()) + ": " + error.message();
    }
    return std::strerror(-r);
}

// Reads the (already entered) variant payload.
PropertyValue readScalar(sd_bus_message* m, char type, const char* contents)
{
    switch (type)
    {
        case 's':
        case 'o':
        case 'g':
        {
            const char* s = nullptr;
            check(sd_bus_message_read_basic(m, type, &s), "string");
            return PropertyValue(std::string(s ? s : ""));
        }
        case 'b':
        {
            int b = 0;
            check(sd_bus_message_read_basic(m, type, &b), "boolean");
            return PropertyValue(b != 0);
        }
        case 'y':
        {
            std::uint8_t v = 0;
            check(sd_bus_message_read_basic(m, type, &v), "byte");
            return PropertyValue(static_cast<std::uint64_t>(v));
        }
        case 'n':
        {
            std::int16_t v = 0;
            check(sd_bus_message_read_basic(m, type, &v), "int16");
            return PropertyValue(static_cast<std::int64_t>(v));
        }
        case 'q':
        {
            std::uint16_t v = 0;
            check(sd_bus_message_read_basic(m, type, &v), "uint16");
            return PropertyValue(static_cast<std::uint64_t>(v));
        }
        case 'i':
        {
            std::int32_t v = 0;
            check(sd_bus_message_read_basic(m, type, &v), "int32");
            return PropertyValue(static_cast<std::int64_t>(v));
        }
        case 'u':
        {
            std::uint32_t v = 0;
            check(sd_bus_message_read_basic(m, type, &v), "uint32");
            return PropertyValue(static_cast<std::uint64_t>(v));
        }
        case 'x':
        {
            std::int64_t v = 0;
            check(sd_bus_message_read_basic(m, type, &v), "int64");
            return PropertyValue(v);
        }
        case 't':
        {
            std::uint64_t v = 0;
            check(sd_bus_message_read_basic(m, type, &v), "uint64");
            return PropertyValue(v);
        }
        default:
            break;
    }
    // Same tags as the fixture backend so both render identical
    // placeholders; anything else keeps its signature.
    if (type == 'a')
    {
        bool dict = contents && *contents == '{';
        return PropertyValue(Unsupported{dict ? "dict" : "array"});
    }
    if (type == 'd')
    {
        return PropertyValue(Unsupported{"double"});
    }
    std::string tag(1, type);
    if (contents && *contents)
    {
        tag += contents;
    }
    return PropertyValue(Unsupported{tag});
}

SubTree readSubTree(sd_bus_message* m)
{
    SubTree tree;
    check(sd_bus_message_enter_container(m, 'a', "{sa{sas}}"), "a{sa{sas}}");
    int r = 0;
    while ((r = sd_bus_message_enter_container(m, 'e', "sa{sas}")) > 0)
    {
        const char* path = nullptr;
        check(sd_bus_message_read_basic(m, 's', &path), "object path");
        SubTreeEntry entry{path, {}};

        check(sd_bus_message_enter_container(m, 'a', "{sas}"), "a{sas}");
        while ((r = sd_bus_message_enter_container(m, 'e', "sas")) > 0)
        {
            const char* service = nullptr;
            check(sd_bus_message_read_basic(m, 's', &service), "service");
            SubTreeOwner owner{service, {}};

            check(sd_bus_message_enter_container(m, 'a', "s"), "as");
            const char* iface = nullptr;
            while ((r = sd_bus_message_read_basic(m, 's', &iface)) > 0)
            {
                owner.interfaces.emplace_back(iface);
            }
            check(r, "interface");
            check(sd_bus_message_exit_container(m), "as");
            check(sd_bus_message_exit_container(m), "{sas}");
            entry.owners.push_back(std::move(owner));
        }
        check(r, "{sas}");
        check(sd_bus_message_exit_container(m), "a{sas}");
        check(sd_bus_message_exit_container(m), "{sa{sas}}");
        tree.push_back(std::move(entry));
    }
    check(r, "{sa{sas}}");
    check(sd_bus_message_exit_container(m), "a{sa{sas}}");
    return tree;
}

} // namespace

struct BusProvider::Impl
{
    std::string address;
    RetryPolicy retry;
    BusPtr bus;
    int attempts = 0;

    sd_bus* connection()
    {
        if (bus)
        {
            return bus.get();
        }

        sd_bus* raw = nullptr;
        int r = 0;
        if (address.empty())
        {
            r = sd_bus_open_system(&raw);
            if (r < 0)
            {
                transport("cannot connect to system bus", r);
            }
        }
        else
        {
            r = sd_bus_new(&raw);
            if (r < 0)
            {
                transport("cannot allocate bus", r);
            }
            BusPtr guard(raw);
            if ((r = sd_bus_set_address(raw, address.c_str())) < 0 ||
                (r = sd_bus_set_bus_client(raw, 1)) < 0 ||
                (r = sd_bus_start(raw)) < 0)
            {
                transport("cannot connect to " + address, r);
            }
            guard.release();
        }
        bus.reset(raw);
        sd_bus_set_method_call_timeout(raw, callTimeoutUsec);
        return raw;
    }

    // Transport failures drop the connection and retry with linear backoff;
    // anything else is final.
    template <class Op>
    auto withRetry(Op&& op) -> decltype(op(std::declval<sd_bus*>()))
    {
        const int total = retry.attempts < 1 ? 1 : retry.attempts;
        for (int attempt = 1;; ++attempt)
        {
            ++attempts;
            try
            {
                return op(connection());
            }
            catch (const ProviderError& e)
            {
                if (e.kind() != ProviderError::Kind::Transport ||
                    attempt >= total)
                {
                    throw;
                }
                bus.reset();
            }
            std::this_thread::sleep_for(retry.step * attempt);
        }
    }
};

BusProvider::BusProvider(std::string address, RetryPolicy retry) :
    impl_(std::make_unique<Impl>())
{
    impl_->address = std::move(address);
    impl_->retry = retry;
}

BusProvider::~BusProvider() = default;
BusProvider::BusProvider(BusProvider&&) noexcept = default;
BusProvider& BusProvider::operator=(BusProvider&&) noexcept = default;

int BusProvider::callAttempts() const noexcept
{
    return impl_->attempts;
}

SubTree BusProvider::getSubTree(const std::string& interface)
{
    return impl_->withRetry([&](sd_bus* bus) {
        sd_bus_message* raw = nullptr;
        int r = sd_bus_message_new_method_call(bus, &raw, objectMapperService,
                                               objectMapperPath,
                                               objectMapperInterface,
                                               "GetSubTree");
        if (r < 0)
        {
            transport("cannot build GetSubTree call", r);
        }
        MessagePtr call(raw);

        const char* root = "/";
        std::int32_t depth = 0;
        check(sd_bus_message_append_basic(call.get(), 's', root), "append");
        check(sd_bus_message_append_basic(call.get(), 'i', &depth), "append");
        check(sd_bus_message_open_container(call.get(), 'a', "s"), "append");
        check(sd_bus_message_append_basic(call.get(), 's', interface.c_str()),
              "append");
        check(sd_bus_message_close_container(call.get()), "append");

        sdbus::Error error;
        sd_bus_message* replyRaw = nullptr;
        r = sd_bus_call(bus, call.get(), 0, error.get(), &replyRaw);
        MessagePtr reply(replyRaw);
        if (r < 0)
        {
            if (oneOf(error.name(), emptySubTreeErrors))
            {
                return SubTree{};
            }
            throw ProviderError(ProviderError::Kind::Transport,
                                "GetSubTree(" + interface +
                                    ") failed: " + describe(error, r));
        }
        return readSubTree(reply.get());
    });
}

PropertyValue BusProvider::getProperty(const std::string& service,
                                       const std::string& objectPath,
                                       const std::string& interface,
                                       const std::string& property)
{
    return impl_->withRetry([&](sd_bus* bus) {
        sdbus::Error error;
        sd_bus_message* replyRaw = nullptr;
        int r = sd_bus_call_method(bus, service.c_str(), objectPath.c_str(),
                                   propertiesInterface, "Get", error.get(),
                                   &replyRaw, "ss", interface.c_str(),
                                   property.c_str());
        MessagePtr reply(replyRaw);
        if (r < 0)
        {
            const std::string where =
                service + " " + objectPath + " " + interface + "." + property;
            std::string_view name = error.name();
            if (oneOf(name, noSuchPropertyErrors))
            {
                throw ProviderError(ProviderError::Kind::NoSuchProperty,
                                    where + ": " + describe(error, r));
            }
            if (oneOf(name, noSuchObjectErrors))
            {
                throw ProviderError(ProviderError::Kind::NoSuchObject,
                                    where + ": " + describe(error, r));
            }
            throw ProviderError(ProviderError::Kind::Transport,
                                where + ": " + describe(error, r));
        }

        char type = 0;
        const char* contents = nullptr;
        check(sd_bus_message_peek_type(reply.get(), &type, &contents),
              "variant");
        check(sd_bus_message_enter_container(reply.get(), 'v', contents),
              "variant");
        char inner = 0;
        const char* innerContents = nullptr;
        check(sd_bus_message_peek_type(reply.get(), &inner, &innerContents),
              "variant payload");
        return readScalar(reply.get(), inner, innerContents);
    });
}

bool busProviderAvailable() noexcept
{
    return true;
}

} // namespace pcm
