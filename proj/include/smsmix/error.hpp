/* Copyright 2026 The SMSMix Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef SMSMIX_ERROR_HPP_
#define SMSMIX_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace smsmix {

// Broad failure classes. The CLI maps these onto exit codes.
enum class ErrorKind { kConfig, kData, kBackend };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what)
      : Error(ErrorKind::kConfig, what) {}
};

class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(ErrorKind::kData, what) {}
};

// Malformed input file; the message carries the location.
class ParseError : public DataError {
 public:
  using DataError::DataError;
};

class DuplicateKey : public DataError {
 public:
  explicit DuplicateKey(const std::string& key)
      : DataError("duplicate sense key: " + key), key_(key) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

class UnknownSense : public DataError {
 public:
  explicit UnknownSense(const std::string& key)
      : DataError("unknown sense key: " + key) {}
};

class MissingGold : public DataError {
 public:
  explicit MissingGold(const std::string& instance_id)
      : DataError("instance has no gold key: " + instance_id) {}
};

class NoHostAvailable : public DataError {
 public:
  using DataError::DataError;
};

class EmptyCorpus : public DataError {
 public:
  using DataError::DataError;
};

class SpanOutOfRange : public DataError {
 public:
  using DataError::DataError;
};

class LabelNotCandidate : public DataError {
 public:
  using DataError::DataError;
};

class TrainingDiverged : public DataError {
 public:
  using DataError::DataError;
};

class BackendError : public Error {
 public:
  explicit BackendError(const std::string& what)
      : Error(ErrorKind::kBackend, what) {}
};

// A backend returned output that breaks its declared contract.
class BackendContractViolation : public BackendError {
 public:
  using BackendError::BackendError;
};

}  // namespace smsmix

#endif  // SMSMIX_ERROR_HPP_
