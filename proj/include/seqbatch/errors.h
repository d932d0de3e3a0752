/* Copyright 2026 The seqbatch Authors. All Rights Reserved.

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
#ifndef SEQBATCH_ERRORS_H_
#define SEQBATCH_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace seqbatch {

// Base class for every error thrown by the library. Callers that only care
// about "did it fail" can catch this; the subclasses carry the category.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

// Field index out of range or wrong field kind for the requested operation.
class SchemaError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class ArityError : public SchemaError {
 public:
  using SchemaError::SchemaError;
};

class EmptyDatasetError : public Error {
 public:
  using Error::Error;
};

// A broken internal invariant, e.g. a length that no bucket covers.
class InternalError : public Error {
 public:
  using Error::Error;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

class IntegrityError : public Error {
 public:
  IntegrityError(std::string path, std::string expected, std::string actual)
      : Error("checksum mismatch for " + path + ": expected sha256 " +
              expected + ", got " + actual),
        path_(std::move(path)),
        expected_(std::move(expected)),
        actual_(std::move(actual)) {}

  const std::string& path() const { return path_; }
  const std::string& expected_digest() const { return expected_; }
  const std::string& actual_digest() const { return actual_; }

 private:
  std::string path_;
  std::string expected_;
  std::string actual_;
};

// Malformed input file. line() is 1-based, 0 when not tied to a line.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Failure while producing a batch in the loader. batch_position() is the
// batch's index in the epoch plan.
class DataError : public Error {
 public:
  DataError(const std::string& what, std::size_t batch_position)
      : Error("batch " + std::to_string(batch_position) + ": " + what),
        batch_position_(batch_position) {}

  std::size_t batch_position() const { return batch_position_; }

 private:
  std::size_t batch_position_;
};

// A zoo record lacks a value needed by a query objective.
class IncompleteRecordError : public Error {
 public:
  using Error::Error;
};

}  // namespace seqbatch

#endif  // SEQBATCH_ERRORS_H_
