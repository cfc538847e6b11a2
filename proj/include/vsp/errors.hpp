// SPDX-License-Identifier: Apache-2.0
//
// vsp - Smith-Purcell radiation from vortex electron wave packets
// Copyright (C) 2026 The vsp Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace vsp {

// Input outside an operation's domain (bad beta, zero OAM for a vortex, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Quadrature or root/peak search that did not reach its tolerance. Carries the
// best available estimate so callers can report it.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double best_estimate = 0.0, double error_estimate = 0.0)
        : std::runtime_error(what), best_estimate_(best_estimate), error_estimate_(error_estimate) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double best_estimate_;
    double error_estimate_;
};

} // namespace vsp
