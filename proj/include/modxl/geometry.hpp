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

#ifndef MODXL_GEOMETRY_HPP
#define MODXL_GEOMETRY_HPP

#include "errors.hpp"

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>

namespace modxl
{
    using vec2 = std::array<double, 2>;

    // Distances below this value are treated as the user sitting on an element [m]
    inline constexpr double distance_floor = 1e-9;

    // Modular uniform linear array placed on the y-axis, symmetric about the origin.
    //
    // N modules of M elements each. Elements inside a module are spaced by d, adjacent
    // modules are separated by D = L*d. The module pitch in units of d is K = M + L - 1,
    // so element (m, n) sits at y = (K*n + m)*d with centered indices m and n.
    // L may be any real >= 1; L = 1 is the collocated ULA with M*N elements.
    class ArrayGeometry
    {
    public:
        ArrayGeometry(std::size_t elements_per_module, std::size_t module_count,
                      double element_spacing, double separation_ratio)
            : M_(elements_per_module), N_(module_count), d_(element_spacing), L_(separation_ratio)
        {
            if (M_ < 1)
                throw invalid_argument("ArrayGeometry: elements_per_module must be >= 1");
            if (N_ < 1)
                throw invalid_argument("ArrayGeometry: module_count must be >= 1");
            if (!(std::isfinite(d_) && d_ > 0.0))
                throw invalid_argument("ArrayGeometry: element_spacing must be finite and > 0");
            if (!(std::isfinite(L_) && L_ >= 1.0))
                throw invalid_argument("ArrayGeometry: separation_ratio must be finite and >= 1");
        }

        // Build from a physical module separation D [m]; requires D >= d
        static ArrayGeometry from_separation(std::size_t elements_per_module, std::size_t module_count,
                                             double element_spacing, double module_separation)
        {
            if (!(element_spacing > 0.0))
                throw invalid_argument("ArrayGeometry: element_spacing must be > 0");
            double L = module_separation / element_spacing;
            // D = d entered in meters may round to L = 1 - ulp
            if (L < 1.0 && L > 1.0 - 1e-12)
                L = 1.0;
            return ArrayGeometry(elements_per_module, module_count, element_spacing, L);
        }

        std::size_t elements_per_module() const noexcept { return M_; }
        std::size_t module_count() const noexcept { return N_; }
        std::size_t element_count() const noexcept { return M_ * N_; }
        double element_spacing() const noexcept { return d_; }
        double separation_ratio() const noexcept { return L_; }

        double module_separation() const noexcept { return L_ * d_; }                // D
        double module_pitch() const noexcept { return double(M_) + L_ - 1.0; }       // K
        bool is_collocated() const noexcept { return L_ == 1.0; }

        // S = [K(N-1) + (M-1)] d
        double span() const noexcept
        {
            return (module_pitch() * double(N_ - 1) + double(M_ - 1)) * d_;
        }

        // S1 = S + M d + D
        double augmented_span() const noexcept
        {
            return span() + double(M_) * d_ + module_separation();
        }

        // Smallest centered indices: -(M-1)/2 and -(N-1)/2
        double first_element_index() const noexcept { return -0.5 * double(M_ - 1); }
        double first_module_index() const noexcept { return -0.5 * double(N_ - 1); }

        // Position offset K*n + m in units of d for zero-based (element i, module j)
        double offset(std::size_t i, std::size_t j) const noexcept
        {
            return module_pitch() * (double(j) + first_module_index()) + (double(i) + first_element_index());
        }

    private:
        std::size_t M_, N_;
        double d_, L_;
    };

    // Centered element index. m spans M unit-stepped values symmetric about 0,
    // n spans N values likewise; both are half-integers when the count is even.
    struct ElementIndex
    {
        double m = 0.0;
        double n = 0.0;
    };

    namespace detail
    {
        inline bool centered_index_valid(double v, std::size_t count)
        {
            if (!std::isfinite(v))
                return false;
            const double half = 0.5 * double(count - 1);
            const double shifted = v + half;
            return shifted >= 0.0 && shifted <= 2.0 * half && std::floor(shifted) == shifted;
        }
    }

    inline bool is_valid(const ArrayGeometry &geom, const ElementIndex &idx)
    {
        return detail::centered_index_valid(idx.m, geom.elements_per_module()) &&
               detail::centered_index_valid(idx.n, geom.module_count());
    }

    // Zero-based (element, module) positions to centered index
    inline ElementIndex centered_index(const ArrayGeometry &geom, std::size_t i, std::size_t j)
    {
        if (i >= geom.elements_per_module() || j >= geom.module_count())
            throw index_error("centered_index: zero-based index out of range");
        return {double(i) + geom.first_element_index(), double(j) + geom.first_module_index()};
    }

    inline void check_index(const ArrayGeometry &geom, const ElementIndex &idx)
    {
        if (!is_valid(geom, idx))
            throw index_error("element index (m=" + std::to_string(idx.m) + ", n=" + std::to_string(idx.n) +
                              ") is not a valid centered index for M=" + std::to_string(geom.elements_per_module()) +
                              ", N=" + std::to_string(geom.module_count()));
    }

    // User position in polar form with respect to the array center
    class UserLocation
    {
    public:
        UserLocation(double range, double angle) : r_(range), theta_(angle)
        {
            if (!(std::isfinite(r_) && r_ > 0.0))
                throw invalid_argument("UserLocation: range must be finite and > 0");
            constexpr double half_pi = 0.5 * std::numbers::pi;
            // Allow one rounding step beyond pi/2 so conversions from degrees stay valid
            if (!(std::isfinite(theta_) && std::abs(theta_) <= half_pi * (1.0 + 1e-15)))
                throw invalid_argument("UserLocation: angle must lie in [-pi/2, pi/2]");
        }

        static UserLocation from_degrees(double range, double angle_deg)
        {
            return UserLocation(range, angle_deg * std::numbers::pi / 180.0);
        }

        double range() const noexcept { return r_; }
        double angle() const noexcept { return theta_; }

        // Cartesian position [r cos(theta), r sin(theta)]
        vec2 q() const noexcept { return {r_ * std::cos(theta_), r_ * std::sin(theta_)}; }

    private:
        double r_, theta_;
    };

    inline vec2 element_position(const ArrayGeometry &geom, const ElementIndex &idx)
    {
        check_index(geom, idx);
        return {0.0, (geom.module_pitch() * idx.n + idx.m) * geom.element_spacing()};
    }

    struct Aperture
    {
        double span;           // S  [m]
        double augmented_span; // S1 [m]
    };

    inline Aperture aperture(const ArrayGeometry &geom) noexcept
    {
        return {geom.span(), geom.augmented_span()};
    }

    namespace detail
    {
        // r * sqrt(1 - 2 k eps sin(theta) + k^2 eps^2), k = K n + m, eps = d / r
        inline double distance_from_offset(double offset, double spacing, const UserLocation &user) noexcept
        {
            const double eps = spacing / user.range();
            const double ke = offset * eps;
            const double radicand = 1.0 - 2.0 * ke * std::sin(user.angle()) + ke * ke;
            return user.range() * std::sqrt(radicand > 0.0 ? radicand : 0.0);
        }

        inline void check_distance(double r_mn)
        {
            if (!(r_mn >= distance_floor))
                throw degenerate_geometry_error("user coincides with an array element (distance " +
                                                std::to_string(r_mn) + " m below floor)");
        }
    }

    inline double distance(const ArrayGeometry &geom, const UserLocation &user, const ElementIndex &idx)
    {
        check_index(geom, idx);
        const double r_mn = detail::distance_from_offset(geom.module_pitch() * idx.n + idx.m,
                                                         geom.element_spacing(), user);
        detail::check_distance(r_mn);
        return r_mn;
    }
}

#endif
