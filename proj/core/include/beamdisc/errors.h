// Copyright 2026 The beamdisc Authors
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

#ifndef BEAMDISC_ERRORS_H_
#define BEAMDISC_ERRORS_H_

#include <stdexcept>
#include <string>

namespace beamdisc {

// An argument outside the mathematical domain of a model (d <= 0, p not in
// (0,1), ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A configuration that violates a structural invariant (M does not divide N,
// the beacon does not fit in the frame, unknown sweep axis, ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The finite-blocklength rate is not positive: the link cannot carry the
// payload at the requested error rate.
class LinkBudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A result that breaks one of the model's ordering guarantees.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace beamdisc

#endif  // BEAMDISC_ERRORS_H_
