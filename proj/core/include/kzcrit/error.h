// Copyright 2026 The kzcrit Authors
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

#ifndef KZCRIT_ERROR_H
#define KZCRIT_ERROR_H

#include <stdexcept>
#include <string>
#include <vector>

namespace kzcrit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A gate kind (or gate name in a circuit file) that an operation cannot handle.
class UnsupportedGateError : public Error {
   public:
    using Error::Error;
};

/// Bad argument to an operation (out-of-range qubit, even padding depth, ...).
class ArgumentError : public Error {
   public:
    using Error::Error;
};

/// A drive schedule whose parameters violate its invariants.
class ScheduleError : public Error {
   public:
    using Error::Error;
};

/// A numerical procedure that could not produce a result (every fit failed, ...).
class NumericError : public Error {
   public:
    using Error::Error;
};

/// Linear least squares with a rank-deficient design matrix.
class RankDeficiencyError : public Error {
   public:
    RankDeficiencyError(const std::string &what, double x_min, double x_max)
        : Error(what), x_min(x_min), x_max(x_max) {}
    double x_min;
    double x_max;
};

/// Configuration validation failure. Carries every violated precondition.
class ConfigError : public Error {
   public:
    explicit ConfigError(std::vector<std::string> violations);
    const std::vector<std::string> &violations() const { return violations_; }

   private:
    std::vector<std::string> violations_;
};

}  // namespace kzcrit

#endif
