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
/// \file sd_bus_api.hpp
///
/// The subset of the libsystemd sd-bus C API used here. Uses the system
/// header when the build found one; otherwise declares the (stable,
/// LIBSYSTEMD_221+) symbols directly so the library links against the
/// runtime libsystemd.so.0 alone.

#pragma once

#if defined(PCM_HAVE_SD_BUS_H)
#include <systemd/sd-bus.h>
#else

#include <cstdint>

extern "C"
{
    typedef struct sd_bus sd_bus;
    typedef struct sd_bus_message sd_bus_message;
    typedef struct sd_bus_slot sd_bus_slot;

    typedef struct sd_bus_error
    {
        const char* name;
        const char* message;
        int _need_free;
    } sd_bus_error;

    typedef int (*sd_bus_message_handler_t)(sd_bus_message* m, void* userdata,
                                            sd_bus_error* ret_error);

    int sd_bus_open_system(sd_bus** ret);
    int sd_bus_new(sd_bus** ret);
    int sd_bus_set_address(sd_bus* bus, const char* address);
    int sd_bus_set_bus_client(sd_bus* bus, int b);
    int sd_bus_start(sd_bus* bus);
    int sd_bus_set_method_call_timeout(sd_bus* bus, uint64_t usec);
    sd_bus* sd_bus_flush_close_unref(sd_bus* bus);

    int sd_bus_call_method(sd_bus* bus, const char* destination,
                           const char* path, const char* interface,
                           const char* member, sd_bus_error* ret_error,
                           sd_bus_message** reply, const char* types, ...);
    int sd_bus_message_new_method_call(sd_bus* bus, sd_bus_message** m,
                                       const char* destination,
                                       const char* path, const char* interface,
                                       const char* member);
    int sd_bus_call(sd_bus* bus, sd_bus_message* m, uint64_t usec,
                    sd_bus_error* ret_error, sd_bus_message** reply);
    int sd_bus_send(sd_bus* bus, sd_bus_message* m, uint64_t* cookie);

    int sd_bus_request_name(sd_bus* bus, const char* name, uint64_t flags);
    int sd_bus_add_fallback(sd_bus* bus, sd_bus_slot** slot, const char* prefix,
                            sd_bus_message_handler_t callback, void* userdata);
    int sd_bus_process(sd_bus* bus, sd_bus_message** r);
    int sd_bus_wait(sd_bus* bus, uint64_t timeout_usec);

    sd_bus_message* sd_bus_message_unref(sd_bus_message* m);
    const char* sd_bus_message_get_path(sd_bus_message* m);
    const char* sd_bus_message_get_interface(sd_bus_message* m);
    const char* sd_bus_message_get_member(sd_bus_message* m);
    const char* sd_bus_message_get_destination(sd_bus_message* m);
    int sd_bus_message_is_method_call(sd_bus_message* m, const char* interface,
                                      const char* member);

    int sd_bus_message_append_basic(sd_bus_message* m, char type,
                                    const void* p);
    int sd_bus_message_append_strv(sd_bus_message* m, char** l);
    int sd_bus_message_open_container(sd_bus_message* m, char type,
                                      const char* contents);
    int sd_bus_message_close_container(sd_bus_message* m);

    int sd_bus_message_read_basic(sd_bus_message* m, char type, void* p);
    int sd_bus_message_enter_container(sd_bus_message* m, char type,
                                       const char* contents);
    int sd_bus_message_exit_container(sd_bus_message* m);
    int sd_bus_message_peek_type(sd_bus_message* m, char* type,
                                 const char** contents);
    int sd_bus_message_skip(sd_bus_message* m, const char* types);

    int sd_bus_message_new_method_return(sd_bus_message* call,
                                         sd_bus_message** m);
    int sd_bus_reply_method_errorf(sd_bus_message* call, const char* name,
                                   const char* format, ...);

    void sd_bus_error_free(sd_bus_error* e);
    int sd_bus_error_has_name(const sd_bus_error* e, const char* name);
}

#define SD_BUS_ERROR_NULL                                                      \
    {                                                                          \
        nullptr, nullptr, 0                                                    \
    }

#endif

#include <utility>

namespace pcm::sdbus
{

/** Owning handles for sd-bus objects. */
struct BusDeleter
{
    void operator()(sd_bus* bus) const noexcept
    {
        sd_bus_flush_close_unref(bus);
    }
};

struct MessageDeleter
{
    void operator()(sd_bus_message* m) const noexcept
    {
        sd_bus_message_unref(m);
    }
};

/** sd_bus_error that frees itself. */
class Error
{
  public:
    Error() = default;
    Error(const Error&) = delete;
    Error& operator=(const Error&) = delete;
    ~Error()
    {
        sd_bus_error_free(&error_);
    }

    sd_bus_error* get() noexcept
    {
        return &error_;
    }

    const char* name() const noexcept
    {
        return error_.name ? error_.name : "";
    }

    const char* message() const noexcept
    {
        return error_.message ? error_.message : "";
    }

  private:
    sd_bus_error error_ = SD_BUS_ERROR_NULL;
};

} // namespace pcm::sdbus
