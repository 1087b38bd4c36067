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
/// \file env_file.cpp

#include "pcm/env_file.hpp"

#include "pcm/errors.hpp"

#include <fcntl.h>
#include <openssl/evp.h>
#include <sys/stat.h>
#include <unistd.h>

#include <array>
#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <vector>

namespace pcm::env
{

namespace fs = std::filesystem;

namespace
{

std::string errnoText(int err)
{
    return std::strerror(err);
}

void notify(const WriteObserver& observer, WriteStage stage)
{
    if (observer)
    {
        observer(stage);
    }
}

void writeAll(int fd, std::string_view bytes, const fs::path& tempPath)
{
    while (!bytes.empty())
    {
        auto n = ::write(fd, bytes.data(), bytes.size());
        if (n < 0)
        {
            if (errno == EINTR)
            {
                continue;
            }
            throw IoError(tempPath, "write failed: " + errnoText(errno));
        }
        bytes.remove_prefix(static_cast<std::size_t>(n));
    }
}

/** Closes and unlinks the temporary file unless committed. */
class TempFile
{
  public:
    TempFile(int fd, std::string path) : fd_(fd), path_(std::move(path)) {}
    TempFile(const TempFile&) = delete;
    TempFile& operator=(const TempFile&) = delete;

    ~TempFile()
    {
        close();
        if (!committed_)
        {
            ::unlink(path_.c_str());
        }
    }

    int fd() const noexcept
    {
        return fd_;
    }

    const std::string& path() const noexcept
    {
        return path_;
    }

    int close() noexcept
    {
        int rc = 0;
        if (fd_ >= 0)
        {
            rc = ::close(fd_);
            fd_ = -1;
        }
        return rc;
    }

    void commit() noexcept
    {
        committed_ = true;
    }

  private:
    int fd_;
    std::string path_;
    bool committed_ = false;
};

void syncDirectory(const fs::path& dir)
{
    int fd = ::open(dir.c_str(), O_RDONLY | O_DIRECTORY | O_CLOEXEC);
    if (fd >= 0)
    {
        ::fsync(fd);
        ::close(fd);
    }
}

} // namespace

std::string render(std::string_view name,
                   std::span<const config::ActionGroup> actions)
{
    std::string out;
    out += config::reservedNameKey;
    out += '=';
    out += name;
    out += '\n';
    for (const auto& group : actions)
    {
        for (const auto& variable : group.variables)
        {
            out += variable.key;
            out += '=';
            out += variable.value;
            out += '\n';
        }
    }
    return out;
}

void writeEnvFile(std::string_view name,
                  std::span<const config::ActionGroup> actions,
                  const fs::path& path, const WriteObserver& observer)
{
    writeEnvBytes(render(name, actions), path, observer);
}

void writeEnvBytes(std::string_view content, const fs::path& path,
                   const WriteObserver& observer)
{
    if (path.filename().empty())
    {
        throw IoError(path, "not a file path");
    }
    const fs::path dir =
        path.has_parent_path() ? path.parent_path() : fs::path(".");

    std::string pattern =
        (dir / ("." + path.filename().string() + ".XXXXXX")).string();
    std::vector<char> buffer(pattern.begin(), pattern.end());
    buffer.push_back('\0');

    int fd = ::mkostemp(buffer.data(), O_CLOEXEC);
    if (fd < 0)
    {
        throw IoError(path, "cannot create temporary file in " + dir.string() +
                                ": " + errnoText(errno));
    }
    TempFile temp(fd, buffer.data());
    notify(observer, WriteStage::TempCreated);

    // Line at a time so a crash can be injected with a partial temp file.
    while (!content.empty())
    {
        auto eol = content.find('\n');
        auto len = eol == std::string_view::npos ? content.size() : eol + 1;
        writeAll(temp.fd(), content.substr(0, len), temp.path());
        content.remove_prefix(len);
        notify(observer, WriteStage::LineWritten);
    }

    if (::fsync(temp.fd()) != 0)
    {
        throw IoError(temp.path(), "fsync failed: " + errnoText(errno));
    }
    notify(observer, WriteStage::Synced);

    // fchmod is not subject to the umask.
    if (::fchmod(temp.fd(), static_cast<mode_t>(envFilePerms)) != 0)
    {
        throw IoError(temp.path(), "chmod failed: " + errnoText(errno));
    }
    notify(observer, WriteStage::PermissionsSet);

    if (temp.close() != 0)
    {
        throw IoError(temp.path(), "close failed: " + errnoText(errno));
    }
    notify(observer, WriteStage::BeforeRename);

    if (::rename(temp.path().c_str(), path.c_str()) != 0)
    {
        throw IoError(path, "rename failed: " + errnoText(errno));
    }
    temp.commit();
    notify(observer, WriteStage::Renamed);

    syncDirectory(dir);
}

std::optional<std::string> readEnvName(const fs::path& path)
{
    std::error_code ec;
    auto status = fs::status(path, ec);
    if (status.type() == fs::file_type::not_found)
    {
        return std::nullopt;
    }
    if (ec)
    {
        throw IoError(path, "stat failed: " + ec.message());
    }
    if (fs::is_directory(status))
    {
        throw IoError(path, "is a directory");
    }

    std::ifstream in(path);
    if (!in)
    {
        throw IoError(path, "cannot open: " + errnoText(errno));
    }

    const std::string prefix = std::string(config::reservedNameKey) + "=";
    std::string line;
    while (std::getline(in, line))
    {
        if (line.starts_with(prefix))
        {
            return line.substr(prefix.size());
        }
    }
    if (in.bad())
    {
        throw IoError(path, "read failed");
    }
    return std::nullopt;
}

std::string digest(std::string_view bytes)
{
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int length = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &length,
                   EVP_sha256(), nullptr) != 1)
    {
        throw std::runtime_error("SHA-256 digest failed");
    }

    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(length * 2);
    for (unsigned int i = 0; i < length; ++i)
    {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 0x0f];
    }
    return out;
}

} // namespace pcm::env
