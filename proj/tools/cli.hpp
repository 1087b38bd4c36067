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
/// \file cli.hpp

#pragma once

#include "pcm/app.hpp"

#include <iosfwd>

namespace pcm::cli
{

struct CommandLine
{
    app::RunOptions options;
    bool verbose = false;
};

/** Throws CLI::ParseError (CLI::CallForHelp for --help). */
CommandLine parseCommandLine(int argc, const char* const* argv);

/** Full entry point; returns the process exit code. */
int runMain(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

} // namespace pcm::cli
