/* Copyright 2026 The ssvep-sfda Authors.

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

#ifndef SFDA_ERRORS_HPP_
#define SFDA_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace sfda {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller supplied an invalid argument (shape, range, unknown name).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// A file could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// On-disk content is malformed (bad magic, size mismatch, bad JSON).
class FormatError : public Error {
 public:
  using Error::Error;
};

// On-disk content carries a version this build does not understand.
class VersionError : public FormatError {
 public:
  using FormatError::FormatError;
};

// Dataset content cannot serve the request (missing labels, absent class).
class DataError : public Error {
 public:
  using Error::Error;
};

// Input is valid in shape but numerically degenerate (zero variance).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

// A numeric routine failed (singular covariance, no usable candidate).
class NumericError : public Error {
 public:
  using Error::Error;
};

// Silhouette gating left no instance to train on.
class GatingError : public Error {
 public:
  using Error::Error;
};

// Statistic undefined for the given sample (zero-variance differences).
class DegenerateStatisticsError : public Error {
 public:
  using Error::Error;
};

}  // namespace sfda

#endif  // SFDA_ERRORS_HPP_
