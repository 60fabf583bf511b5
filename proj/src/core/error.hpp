// Copyright 2026 The plab Authors
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

#ifndef PLAB_CORE_ERROR_HPP_
#define PLAB_CORE_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace plab {

enum class ErrorCode {
  kParameter = 1,
  kBudget = 2,
  kContract = 3,
  kCapability = 4,
  kOverflow = 5,
  kFormat = 6,
  kIo = 7,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

#define PLAB_DEFINE_ERROR(Name, Code)                                   \
  class Name : public Error {                                           \
   public:                                                              \
    explicit Name(const std::string& what) : Error(ErrorCode::Code, what) {} \
  };

PLAB_DEFINE_ERROR(ParameterError, kParameter)
PLAB_DEFINE_ERROR(BudgetError, kBudget)
PLAB_DEFINE_ERROR(ContractError, kContract)
PLAB_DEFINE_ERROR(CapabilityError, kCapability)
PLAB_DEFINE_ERROR(OverflowError, kOverflow)
PLAB_DEFINE_ERROR(FormatError, kFormat)
PLAB_DEFINE_ERROR(IoError, kIo)

#undef PLAB_DEFINE_ERROR

// Throws ParameterError with `what` unless `cond` holds.
inline void require(bool cond, const std::string& what) {
  if (!cond) throw ParameterError(what);
}

}  // namespace plab

#endif  // PLAB_CORE_ERROR_HPP_
