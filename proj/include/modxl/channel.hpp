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

#ifndef MODXL_CHANNEL_HPP
#define MODXL_CHANNEL_HPP

#include "geometry.hpp"

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

namespace modxl
{
    using cdouble = std::complex<double>;

    inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
    inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

    // Carrier wavelength, reference channel power at 1 m and transmit SNR P/sigma^2
    class LinkBudget
    {
    public:
        LinkBudget(double wavelength, double reference_gain, double transmit_snr)
            : lambda_(wavelength), beta0_(reference_gain), snr_(transmit_snr)
        {
            if (!(std::isfinite(lambda_) && lambda_ > 0.0))
                throw invalid_argument("LinkBudget: wavelength must be finite and > 0");
            if (!(std::isfinite(beta0_) && beta0_ > 0.0))
                throw invalid_argument("LinkBudget: reference_gain must be finite and > 0");
            if (!(std::isfinite(snr_) && snr_ > 0.0))
                throw invalid_argument("LinkBudget: transmit_snr must be finite and > 0");
        }

        // beta0 = 1, transmit SNR carries the whole effective power given in dB
        static LinkBudget from_effective_power_db(double wavelength, double effective_power_db)
        {
            return LinkBudget(wavelength, 1.0, db_to_linear(effective_power_db));
        }

        double wavelength() const noexcept { return lambda_; }
        double reference_gain() const noexcept { return beta0_; }
        double transmit_snr() const noexcept { return snr_; }

        // P_bar * beta0, the only combination entering the SNR expressions
        double effective_power() const noexcept { return snr_ * beta0_; }

    private:
        double lambda_, beta0_, snr_;
    };

    // Per-element channel coefficients in module-major order:
    // modules n ascending, then elements m ascending within each module.
    struct ArrayResponse
    {
        std::size_t elements_per_module = 0;
        std::size_t module_count = 0;
        std::vector<cdouble> coefficients;

        std::size_t size() const noexcept { return coefficients.size(); }
        double squared_norm() const noexcept
        {
            double s = 0.0;
            for (const auto &c : coefficients)
                s += std::norm(c);
            return s;
        }
    };

    // Flat position of (m, n) inside an ArrayResponse
    inline std::size_t flat_index(const ArrayGeometry &geom, const ElementIndex &idx)
    {
        check_index(geom, idx);
        const auto i = std::size_t(idx.m - geom.first_element_index());
        const auto j = std::size_t(idx.n - geom.first_module_index());
        return j * geom.elements_per_module() + i;
    }

    namespace detail
    {
        // exp(-j 2 pi x / lambda) with the phase reduced to (-pi, pi]
        inline cdouble propagation_phasor(double path_length, double wavelength) noexcept
        {
            const double turns = path_length / wavelength;
            const double frac = turns - std::round(turns);
            return std::polar(1.0, -2.0 * std::numbers::pi * frac);
        }
    }

    // Non-uniform spherical wave response: a_mn = sqrt(beta0)/r_mn * exp(-j 2 pi r_mn / lambda)
    inline ArrayResponse array_response_nusw(const ArrayGeometry &geom, const UserLocation &user,
                                             const LinkBudget &link)
    {
        const std::size_t M = geom.elements_per_module(), N = geom.module_count();
        ArrayResponse a{M, N, {}};
        a.coefficients.reserve(M * N);
        const double amp = std::sqrt(link.reference_gain());
        for (std::size_t j = 0; j < N; ++j)
            for (std::size_t i = 0; i < M; ++i)
            {
                const double r_mn = detail::distance_from_offset(geom.offset(i, j), geom.element_spacing(), user);
                detail::check_distance(r_mn);
                a.coefficients.push_back(amp / r_mn * detail::propagation_phasor(r_mn, link.wavelength()));
            }
        return a;
    }

    // Uniform plane wave response: a_mn = sqrt(beta0)/r * exp(-j 2 pi [r - (K n + m) d sin(theta)] / lambda)
    inline ArrayResponse array_response_upw(const ArrayGeometry &geom, const UserLocation &user,
                                            const LinkBudget &link)
    {
        const std::size_t M = geom.elements_per_module(), N = geom.module_count();
        ArrayResponse a{M, N, {}};
        a.coefficients.reserve(M * N);
        const double amp = std::sqrt(link.reference_gain()) / user.range();
        const double s = std::sin(user.angle());
        for (std::size_t j = 0; j < N; ++j)
            for (std::size_t i = 0; i < M; ++i)
            {
                const double path = user.range() - geom.offset(i, j) * geom.element_spacing() * s;
                a.coefficients.push_back(amp * detail::propagation_phasor(path, link.wavelength()));
            }
        return a;
    }
}

#endif
