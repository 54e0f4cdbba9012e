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

#ifndef MODXL_SNR_MODELS_HPP
#define MODXL_SNR_MODELS_HPP

#include "channel.hpp"
#include "geometry.hpp"
#include "quadrature.hpp"
#include "summation.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Maximum-SNR models for a single-antenna user served by a modular XL-ULA with MRC.
//
//   exact_sum    P_bar beta0 * sum_{m,n} 1 / r_mn^2, the reference value
//   closed_form  sum replaced by a double integral and integrated analytically
//   collocated   closed form specialised to D = d
//   asymptotic   closed form in the limit N -> infinity
//   upw          far-field plane-wave value MN P_bar beta0 / r^2
//   integral     the same double integral evaluated by adaptive quadrature
namespace modxl
{
    enum class SnrModel
    {
        exact_sum,
        closed_form,
        collocated,
        asymptotic,
        upw,
        integral
    };

    inline constexpr std::array<SnrModel, 6> all_models = {
        SnrModel::exact_sum, SnrModel::closed_form, SnrModel::collocated,
        SnrModel::asymptotic, SnrModel::upw, SnrModel::integral};

    // Short names used on the command line and in CSV column names (snr_<name>_db)
    inline std::string_view model_name(SnrModel m) noexcept
    {
        switch (m)
        {
        case SnrModel::exact_sum: return "exact";
        case SnrModel::closed_form: return "closed";
        case SnrModel::collocated: return "collocated";
        case SnrModel::asymptotic: return "asymptotic";
        case SnrModel::upw: return "upw";
        case SnrModel::integral: return "integral";
        }
        return "unknown";
    }

    inline std::optional<SnrModel> parse_model(std::string_view s) noexcept
    {
        for (auto m : all_models)
            if (model_name(m) == s)
                return m;
        return std::nullopt;
    }

    enum class ValidityFlag : unsigned
    {
        epsilon_not_small = 1u << 0,      // d / r above the small-epsilon threshold
        theta_near_endfire = 1u << 1,     // |cos(theta)| below the endfire guard
        far_field_assumed = 1u << 2,      // plane-wave value used with r < 5 S1
        collocated_counterpart = 1u << 3, // collocated model evaluated on the L = 1 counterpart
    };

    inline constexpr std::array<ValidityFlag, 4> all_flags = {
        ValidityFlag::epsilon_not_small, ValidityFlag::theta_near_endfire,
        ValidityFlag::far_field_assumed, ValidityFlag::collocated_counterpart};

    inline std::string_view flag_name(ValidityFlag f) noexcept
    {
        switch (f)
        {
        case ValidityFlag::epsilon_not_small: return "epsilon_not_small";
        case ValidityFlag::theta_near_endfire: return "theta_near_endfire";
        case ValidityFlag::far_field_assumed: return "far_field_assumed";
        case ValidityFlag::collocated_counterpart: return "collocated_counterpart";
        }
        return "unknown";
    }

    class FlagSet
    {
    public:
        constexpr FlagSet() = default;

        constexpr FlagSet &set(ValidityFlag f) noexcept
        {
            bits_ |= unsigned(f);
            return *this;
        }
        constexpr bool has(ValidityFlag f) const noexcept { return (bits_ & unsigned(f)) != 0; }
        constexpr bool empty() const noexcept { return bits_ == 0; }
        constexpr FlagSet &operator|=(FlagSet o) noexcept
        {
            bits_ |= o.bits_;
            return *this;
        }
        constexpr bool operator==(const FlagSet &) const = default;

        std::vector<std::string_view> names() const
        {
            std::vector<std::string_view> out;
            for (auto f : all_flags)
                if (has(f))
                    out.push_back(flag_name(f));
            return out;
        }

    private:
        unsigned bits_ = 0;
    };

    struct SnrReport
    {
        SnrModel model;
        double value_linear;
        double value_db;
        FlagSet flags;
    };

    inline SnrReport make_report(SnrModel model, double value_linear, FlagSet flags = {})
    {
        return {model, value_linear, linear_to_db(value_linear), flags};
    }

    struct SnrOptions
    {
        unsigned threads = 1;           // workers for the exact sum; result is independent of this
        double quad_rel_tol = 1e-8;     // composite target of the double-integral oracle
        std::size_t quad_max_intervals = 4000;
    };

    inline constexpr double endfire_guard = 1e-9;       // |cos(theta)| threshold
    inline constexpr double epsilon_warning = 0.01;     // d / r threshold
    inline constexpr double far_field_factor = 5.0;     // UPW flagged when r < 5 S1
    inline constexpr std::size_t sum_chunk_modules = 256;

    inline bool near_endfire(const UserLocation &user) noexcept
    {
        return std::abs(std::cos(user.angle())) < endfire_guard;
    }

    // h(x) = x atan(x) - ln(1 + x^2) / 2, even, h(0) = 0
    inline double h_aux(double x)
    {
        if (!std::isfinite(x))
            throw domain_error("h_aux: non-finite argument");
        const double ax = std::abs(x);
        const double half_log = ax <= 1.0 ? 0.5 * std::log1p(ax * ax)
                                          : std::log(ax) + 0.5 * std::log1p(1.0 / (ax * ax));
        return ax * std::atan(ax) - half_log;
    }

    namespace detail
    {
        inline FlagSet epsilon_flags(const ArrayGeometry &geom, const UserLocation &user)
        {
            FlagSet f;
            if (geom.element_spacing() / user.range() > epsilon_warning)
                f.set(ValidityFlag::epsilon_not_small);
            return f;
        }

        // sum over all elements of 1 / (1 - 2 k eps sin(theta) + k^2 eps^2), k = K n + m.
        // Modules are grouped in fixed chunks, each summed with compensation, and the
        // chunk partials merged in index order.
        inline double normalized_inverse_distance_sum(const ArrayGeometry &geom, const UserLocation &user,
                                                      unsigned threads)
        {
            const std::size_t M = geom.elements_per_module(), N = geom.module_count();
            const double r = user.range();
            const double eps = geom.element_spacing() / r;
            const double s = std::sin(user.angle());
            const double floor_sq = (distance_floor / r) * (distance_floor / r);

            const std::size_t chunks = (N + sum_chunk_modules - 1) / sum_chunk_modules;
            std::vector<compensated_sum> partial(chunks);
            std::vector<char> degenerate(chunks, 0);

            parallel_chunks(chunks, threads, [&](std::size_t c) {
                const std::size_t j_end = std::min(N, (c + 1) * sum_chunk_modules);
                compensated_sum acc;
                for (std::size_t j = c * sum_chunk_modules; j < j_end; ++j)
                    for (std::size_t i = 0; i < M; ++i)
                    {
                        const double ke = geom.offset(i, j) * eps;
                        const double radicand = 1.0 - 2.0 * ke * s + ke * ke;
                        if (!(radicand >= floor_sq))
                        {
                            degenerate[c] = 1;
                            return;
                        }
                        acc += 1.0 / radicand;
                    }
                partial[c] = acc;
            });

            compensated_sum total;
            for (std::size_t c = 0; c < chunks; ++c)
            {
                if (degenerate[c])
                    throw degenerate_geometry_error("exact sum: user coincides with an array element");
                total.merge(partial[c]);
            }
            return total.value();
        }
    }

    inline SnrReport snr_exact_sum(const ArrayGeometry &geom, const UserLocation &user, const LinkBudget &link,
                                   const SnrOptions &opt = {})
    {
        const double r = user.range();
        const double sum = detail::normalized_inverse_distance_sum(geom, user, opt.threads);
        return make_report(SnrModel::exact_sum, link.effective_power() / (r * r) * sum);
    }

    // P_bar beta0 / ((M-1) d^2 + D d) * [h(A-) + h(A+) - h(B-) - h(B+)],
    // A+- = S1 / (2 r cos) +- tan, B+- = (S1 - 2 M d) / (2 r cos) +- tan.
    // Falls back to the exact sum near endfire.
    inline SnrReport snr_closed_form(const ArrayGeometry &geom, const UserLocation &user, const LinkBudget &link,
                                     const SnrOptions &opt = {})
    {
        FlagSet flags = detail::epsilon_flags(geom, user);
        if (near_endfire(user))
        {
            auto rep = snr_exact_sum(geom, user, link, opt);
            rep.model = SnrModel::closed_form;
            rep.flags = flags.set(ValidityFlag::theta_near_endfire);
            return rep;
        }
        const double d = geom.element_spacing();
        const double M = double(geom.elements_per_module());
        const double proj = 2.0 * user.range() * std::cos(user.angle());
        const double t = std::tan(user.angle());
        const double S1 = geom.augmented_span();
        const double a = S1 / proj;
        const double b = (S1 - 2.0 * M * d) / proj;
        const double bracket = h_aux(a - t) + h_aux(a + t) - h_aux(b - t) - h_aux(b + t);
        const double denom = (M - 1.0) * d * d + geom.module_separation() * d;
        return make_report(SnrModel::closed_form, link.effective_power() / denom * bracket, flags);
    }

    // Collocated array (L = 1):
    // P_bar beta0 / (r d cos) * [atan(MNd / (2 r cos) - tan) + atan(MNd / (2 r cos) + tan)]
    inline SnrReport snr_collocated(const ArrayGeometry &geom, const UserLocation &user, const LinkBudget &link,
                                    const SnrOptions &opt = {})
    {
        if (!geom.is_collocated())
            throw model_mismatch_error("snr_collocated: geometry has L = " + std::to_string(geom.separation_ratio()) +
                                       ", the collocated model requires L = 1");
        FlagSet flags = detail::epsilon_flags(geom, user);
        if (near_endfire(user))
        {
            auto rep = snr_exact_sum(geom, user, link, opt);
            rep.model = SnrModel::collocated;
            rep.flags = flags.set(ValidityFlag::theta_near_endfire);
            return rep;
        }
        const double d = geom.element_spacing();
        const double c = std::cos(user.angle());
        const double t = std::tan(user.angle());
        const double u = double(geom.element_count()) * d / (2.0 * user.range() * c);
        const double value = link.effective_power() / (user.range() * d * c) * (std::atan(u - t) + std::atan(u + t));
        return make_report(SnrModel::collocated, value, flags);
    }

    // Collocated model evaluated on the L = 1 array with the same M, N and d
    inline SnrReport snr_collocated_counterpart(const ArrayGeometry &geom, const UserLocation &user,
                                                const LinkBudget &link, const SnrOptions &opt = {})
    {
        if (geom.is_collocated())
            return snr_collocated(geom, user, link, opt);
        const ArrayGeometry counterpart(geom.elements_per_module(), geom.module_count(), geom.element_spacing(), 1.0);
        auto rep = snr_collocated(counterpart, user, link, opt);
        rep.flags.set(ValidityFlag::collocated_counterpart);
        return rep;
    }

    // N -> infinity limit: pi M P_bar beta0 / ([(M-1) d + D] r cos)
    inline SnrReport snr_asymptotic(const ArrayGeometry &geom, const UserLocation &user, const LinkBudget &link)
    {
        if (near_endfire(user))
            throw unbounded_limit_error("snr_asymptotic: limit diverges for a user at endfire");
        const double M = double(geom.elements_per_module());
        const double pitch = (M - 1.0) * geom.element_spacing() + geom.module_separation();
        const double value = std::numbers::pi * M * link.effective_power() /
                             (pitch * user.range() * std::cos(user.angle()));
        return make_report(SnrModel::asymptotic, value, detail::epsilon_flags(geom, user));
    }

    // MN P_bar beta0 / r^2
    inline SnrReport snr_upw(const ArrayGeometry &geom, const UserLocation &user, const LinkBudget &link)
    {
        FlagSet flags;
        if (user.range() < far_field_factor * geom.augmented_span())
            flags.set(ValidityFlag::far_field_assumed);
        const double r = user.range();
        return make_report(SnrModel::upw, double(geom.element_count()) * link.effective_power() / (r * r), flags);
    }

    // (P_bar beta0 / r^2) (1 / eps^2) * int_{-N eps/2}^{N eps/2} int_{-M eps/2}^{M eps/2} f(x, y) dx dy,
    // f(x, y) = 1 / (1 - 2 x sin - 2 K y sin + 2 K x y + x^2 + K^2 y^2), by nested adaptive quadrature.
    inline SnrReport snr_double_integral(const ArrayGeometry &geom, const UserLocation &user, const LinkBudget &link,
                                         const SnrOptions &opt = {})
    {
        if (!(opt.quad_rel_tol > 0.0))
            throw invalid_argument("snr_double_integral: quadrature tolerance must be > 0");

        FlagSet flags = detail::epsilon_flags(geom, user);
        const double r = user.range();
        if (near_endfire(user))
        {
            flags.set(ValidityFlag::theta_near_endfire);
            // At endfire the integrand has a pole on the line x + K y = sin(theta), which meets
            // the domain when r <= S1 / 2
            if (r <= 0.5 * geom.augmented_span())
                throw degenerate_geometry_error("snr_double_integral: integration domain contains the pole of the endfire integrand");
        }

        const double eps = geom.element_spacing() / r;
        const double K = geom.module_pitch();
        const double s = std::sin(user.angle());
        auto f = [K, s](double x, double y) {
            return 1.0 / (1.0 - 2.0 * x * s - 2.0 * K * y * s + 2.0 * K * x * y + x * x + K * K * y * y);
        };
        const double hx = 0.5 * double(geom.elements_per_module()) * eps;
        const double hy = 0.5 * double(geom.module_count()) * eps;

        quad::Options qo;
        qo.rel_tol = opt.quad_rel_tol / 10.0;
        qo.max_intervals = opt.quad_max_intervals;
        const auto res = quad::integrate2d(f, -hx, hx, -hy, hy, qo);

        const double scale = link.effective_power() / (r * r) / (eps * eps);
        if (!res.converged || !std::isfinite(res.value))
            throw accuracy_error("snr_double_integral: quadrature did not converge", scale * res.value,
                                 scale * res.error);
        return make_report(SnrModel::integral, scale * res.value, flags);
    }

    // Dispatch by tag. With counterpart_collocated, the collocated model of a modular
    // geometry is evaluated on its L = 1 counterpart instead of raising model_mismatch_error.
    inline SnrReport evaluate(SnrModel model, const ArrayGeometry &geom, const UserLocation &user,
                              const LinkBudget &link, const SnrOptions &opt = {},
                              bool counterpart_collocated = false)
    {
        switch (model)
        {
        case SnrModel::exact_sum: return snr_exact_sum(geom, user, link, opt);
        case SnrModel::closed_form: return snr_closed_form(geom, user, link, opt);
        case SnrModel::collocated:
            return counterpart_collocated ? snr_collocated_counterpart(geom, user, link, opt)
                                          : snr_collocated(geom, user, link, opt);
        case SnrModel::asymptotic: return snr_asymptotic(geom, user, link);
        case SnrModel::upw: return snr_upw(geom, user, link);
        case SnrModel::integral: return snr_double_integral(geom, user, link, opt);
        }
        throw invalid_argument("evaluate: unknown model");
    }
}

#endif
