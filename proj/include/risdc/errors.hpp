// SPDX-License-Identifier: Apache-2.0
//
// risdc - RIS passive beamforming by cascaded-channel decoupling
// Copyright (C) 2026 The risdc authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef RISDC_ERRORS_HPP
#define RISDC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace risdc
{

// Process exit codes used by the command-line tool
enum class ExitCode : int
{
    success = 0,
    config_error = 2,
    io_error = 3,
    numerical_error = 4
};

class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
    virtual ExitCode exit_code() const noexcept = 0;
};

// Invalid configuration or malformed input file
class ConfigError : public Error
{
  public:
    using Error::Error;
    ExitCode exit_code() const noexcept override { return ExitCode::config_error; }
};

// Precondition violation: bad shapes, out-of-range arguments, constraint violations
class DomainError : public Error
{
  public:
    using Error::Error;
    ExitCode exit_code() const noexcept override { return ExitCode::config_error; }
};

class IoError : public Error
{
  public:
    using Error::Error;
    ExitCode exit_code() const noexcept override { return ExitCode::io_error; }
};

// SVD non-convergence or non-finite intermediate results
class NumericalError : public Error
{
  public:
    using Error::Error;
    ExitCode exit_code() const noexcept override { return ExitCode::numerical_error; }
};

} // namespace risdc

#endif
