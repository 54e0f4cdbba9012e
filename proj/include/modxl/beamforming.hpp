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

#ifndef MODXL_BEAMFORMING_HPP
#define MODXL_BEAMFORMING_HPP

#include "channel.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace modxl
{
    // Unit-norm receive combining vector v
    class BeamformingWeights
    {
    public:
        static constexpr double norm_tolerance = 1e-12;

        explicit BeamformingWeights(std::vector<cdouble> weights) : w_(std::move(weights))
        {
            double s = 0.0;
            for (const auto &c : w_)
                s += std::norm(c);
            if (!(std::abs(std::sqrt(s) - 1.0) <= norm_tolerance))
                throw invalid_argument("BeamformingWeights: weights must have unit Euclidean norm");
        }

        // Scales an arbitrary nonzero vector to unit norm
        static BeamformingWeights normalized(std::vector<cdouble> weights)
        {
            double s = 0.0;
            for (const auto &c : weights)
                s += std::norm(c);
            if (!(s > 0.0) || !std::isfinite(s))
                throw degenerate_input_error("BeamformingWeights: cannot normalize a zero vector");
            const double inv = 1.0 / std::sqrt(s);
            for (auto &c : weights)
                c *= inv;
            return BeamformingWeights(std::move(weights));
        }

        std::span<const cdouble> weights() const noexcept { return w_; }
        std::size_t size() const noexcept { return w_.size(); }

    private:
        std::vector<cdouble> w_;
    };

    // Maximal-ratio combining v = a / ||a||
    inline BeamformingWeights mrc_weights(const ArrayResponse &a)
    {
        return BeamformingWeights::normalized(a.coefficients);
    }

    // v^H a
    inline cdouble inner_product(std::span<const cdouble> v, std::span<const cdouble> a)
    {
        if (v.size() != a.size())
            throw shape_error("inner_product: length mismatch (" + std::to_string(v.size()) + " vs " +
                              std::to_string(a.size()) + ")");
        cdouble acc{0.0, 0.0};
        for (std::size_t i = 0; i < v.size(); ++i)
            acc += std::conj(v[i]) * a[i];
        return acc;
    }

    // P_bar |v^H a|^2
    inline double snr(const BeamformingWeights &v, const ArrayResponse &a, const LinkBudget &link)
    {
        return link.transmit_snr() * std::norm(inner_product(v.weights(), a.coefficients));
    }

    struct UplinkSimulation
    {
        std::size_t sample_count = 100000;
        double noise_power = 1.0;    // sigma^2
        double transmit_power = 1.0; // P, with P / sigma^2 = P_bar
        std::uint64_t seed = 1;

        void validate() const
        {
            if (sample_count < 1)
                throw invalid_argument("UplinkSimulation: sample_count must be >= 1");
            if (!(noise_power > 0.0 && std::isfinite(noise_power)))
                throw invalid_argument("UplinkSimulation: noise_power must be > 0");
            if (!(transmit_power > 0.0 && std::isfinite(transmit_power)))
                throw invalid_argument("UplinkSimulation: transmit_power must be > 0");
        }
    };

    struct UplinkEstimate
    {
        double signal_power; // mean |v^H a sqrt(P) s|^2
        double noise_power;  // mean |v^H z|^2
        double snr;          // signal_power / noise_power
    };

    namespace detail
    {
        // Generator and sampling are spelled out so that estimates are bit-identical across
        // standard libraries (std::normal_distribution is implementation-defined).
        class gaussian_source
        {
        public:
            explicit gaussian_source(std::uint64_t seed) : eng_(seed) {}

            // Uniform in (0, 1) with 53 random bits
            double uniform_open()
            {
                return (double(eng_() >> 11) + 0.5) * 0x1.0p-53;
            }

            // Standard normal pair via Box-Muller
            std::pair<double, double> normal_pair()
            {
                const double u1 = uniform_open(), u2 = uniform_open();
                const double rad = std::sqrt(-2.0 * std::log(u1));
                const double ang = 2.0 * std::numbers::pi * u2;
                return {rad * std::cos(ang), rad * std::sin(ang)};
            }

            // Circularly-symmetric CN(0, variance)
            cdouble complex_normal(double variance)
            {
                const auto [x, y] = normal_pair();
                const double scale = std::sqrt(0.5 * variance);
                return {scale * x, scale * y};
            }

            // Unit-modulus QPSK symbol
            cdouble qpsk()
            {
                const std::uint64_t bits = eng_();
                constexpr double c = std::numbers::sqrt2 / 2.0;
                return {(bits & 1u) ? c : -c, (bits & 2u) ? c : -c};
            }

        private:
            std::mt19937_64 eng_;
        };
    }

    // Monte-Carlo estimate of the post-combining SNR of y = v^H a sqrt(P) s + v^H z,
    // s unit-power QPSK and z ~ CN(0, sigma^2 I). Signal and noise energies are
    // accumulated separately.
    inline UplinkEstimate simulate_uplink(const ArrayResponse &a, const BeamformingWeights &v,
                                          const UplinkSimulation &sim)
    {
        sim.validate();
        if (a.size() != v.size())
            throw shape_error("simulate_uplink: response and weights differ in length");

        const auto w = v.weights();
        const cdouble gain = inner_product(w, a.coefficients) * std::sqrt(sim.transmit_power);
        detail::gaussian_source rng(sim.seed);

        double signal_energy = 0.0, noise_energy = 0.0;
        for (std::size_t t = 0; t < sim.sample_count; ++t)
        {
            const cdouble s = rng.qpsk();
            cdouble noise{0.0, 0.0};
            for (std::size_t i = 0; i < w.size(); ++i)
                noise += std::conj(w[i]) * rng.complex_normal(sim.noise_power);
            signal_energy += std::norm(gain * s);
            noise_energy += std::norm(noise);
        }
        const double count = double(sim.sample_count);
        UplinkEstimate est{signal_energy / count, noise_energy / count, 0.0};
        est.snr = est.signal_power / est.noise_power;
        return est;
    }
}

#endif
