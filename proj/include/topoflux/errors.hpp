// Copyright 2026 The topoflux Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace topoflux {

enum class ErrorKind {
  kDimension,
  kInvalidTruncation,
  kDomain,
  kOutsideValidity,
  kNoSolution,
  kStepSize,
  kIntegration,
  kConfig,
  kIo,
};

// Base for every error raised by the library. The kind drives CLI exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& what)
      : Error(ErrorKind::kDimension, what) {}
};

class InvalidTruncationError : public Error {
 public:
  explicit InvalidTruncationError(const std::string& what)
      : Error(ErrorKind::kInvalidTruncation, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what)
      : Error(ErrorKind::kDomain, what) {}
};

// Phase or parameters fall outside the regime where the coupling law holds.
class ValidityError : public Error {
 public:
  explicit ValidityError(const std::string& what,
                         ErrorKind kind = ErrorKind::kOutsideValidity)
      : Error(kind, what) {}
};

class IntegrationError : public Error {
 public:
  explicit IntegrationError(const std::string& what,
                            ErrorKind kind = ErrorKind::kIntegration)
      : Error(kind, what) {}
};

// Config errors carry the JSON pointer of the offending value.
class ConfigError : public Error {
 public:
  ConfigError(std::string pointer, const std::string& what)
      : Error(ErrorKind::kConfig,
              (pointer.empty() ? std::string("/") : pointer) + ": " + what),
        pointer_(std::move(pointer)) {}
  const std::string& pointer() const noexcept { return pointer_; }

 private:
  std::string pointer_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::kIo, what) {}
};

// 0 success, 2 config, 3 validity regime, 4 integration failure, 1 otherwise.
int exit_code_for(ErrorKind kind);

}  // namespace topoflux
