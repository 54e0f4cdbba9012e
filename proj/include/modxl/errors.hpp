// SPDX-License-Identifier: Apache-2.0
//
// modxl - near-field modelling toolkit for modular extremely large-scale arrays
// Copyright (C) 2026 The modxl authors
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

#ifndef MODXL_ERRORS_HPP
#define MODXL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace modxl
{
    // Base class of all library errors
    class error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Invalid construction parameters (M < 1, d <= 0, theta out of range, ...)
    class invalid_argument : public error
    {
    public:
        using error::error;
    };

    // Element index outside the centered range of the layout
    class index_error : public error
    {
    public:
        using error::error;
    };

    // User located on (or numerically on) an array element or the array segment
    class degenerate_geometry_error : public error
    {
    public:
        using error::error;
    };

    // Zero-norm response vector or similar degenerate numeric input
    class degenerate_input_error : public error
    {
    public:
        using error::error;
    };

    // Vector lengths do not match
    class shape_error : public error
    {
    public:
        using error::error;
    };

    // Non-finite argument to a scalar function
    class domain_error : public error
    {
    public:
        using error::error;
    };

    // Model evaluated outside the geometry it is defined for (e.g. collocated model with L != 1)
    class model_mismatch_error : public error
    {
    public:
        using error::error;
    };

    // Closed-form limit does not exist (endfire asymptote)
    class unbounded_limit_error : public error
    {
    public:
        using error::error;
    };

    // Malformed text input (CSV table, config value)
    class parse_error : public error
    {
    public:
        using error::error;
    };

    // Quadrature did not reach the requested tolerance within its subdivision budget
    class accuracy_error : public error
    {
    public:
        accuracy_error(const std::string &what, double estimate, double error_estimate)
            : error(what), estimate_(estimate), error_estimate_(error_estimate) {}

        double estimate() const noexcept { return estimate_; }
        double error_estimate() const noexcept { return error_estimate_; }

    private:
        double estimate_;
        double error_estimate_;
    };
}

#endif
