// Copyright 2026 The jccat Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef JCCAT_ERRORS_HPP
#define JCCAT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace jccat {

// Base of every error raised by the library. The CLI maps subclasses of
// config_error to exit code 2, io_error to exit code 4 and everything else
// to exit code 3.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define JCCAT_DEFINE_ERROR(name, base)   \
  class name : public base {             \
   public:                               \
    using base::base;                    \
  };

JCCAT_DEFINE_ERROR(config_error, error)
// A physical or numerical parameter violates an operation's precondition.
JCCAT_DEFINE_ERROR(invalid_parameter, config_error)
JCCAT_DEFINE_ERROR(truncation_too_small, error)
JCCAT_DEFINE_ERROR(index_out_of_range, error)
JCCAT_DEFINE_ERROR(dimension_mismatch, error)
JCCAT_DEFINE_ERROR(invalid_state, error)
JCCAT_DEFINE_ERROR(non_psd_input, error)
JCCAT_DEFINE_ERROR(degenerate_time, error)
JCCAT_DEFINE_ERROR(no_psd_fixed_point, error)
JCCAT_DEFINE_ERROR(vacuum_undefined, error)
JCCAT_DEFINE_ERROR(not_catalytic, error)
JCCAT_DEFINE_ERROR(grid_too_small, error)
JCCAT_DEFINE_ERROR(propagation_unstable, error)
JCCAT_DEFINE_ERROR(no_feasible_tau, error)
JCCAT_DEFINE_ERROR(dimension_budget_exceeded, error)
JCCAT_DEFINE_ERROR(io_error, error)

#undef JCCAT_DEFINE_ERROR

}  // namespace jccat

#endif  // JCCAT_ERRORS_HPP
