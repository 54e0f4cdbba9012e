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

#ifndef MODXL_SWEEP_HPP
#define MODXL_SWEEP_HPP

#include "snr_models.hpp"

#include <array>
#include <cmath>
#include <exception>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace modxl
{
    struct Scenario
    {
        ArrayGeometry geom;
        UserLocation user;
        LinkBudget link;
    };

    // Default scenario: M = 16,
    // d = lambda / 2 = 0.0628 m, P_bar beta0 = 50 dB, q = [35, 0] m, N = 20, D = 20 d.
    namespace reference
    {
        inline constexpr std::size_t elements_per_module = 16;
        inline constexpr std::size_t module_count = 20;
        inline constexpr double element_spacing = 0.0628;          // [m]
        inline constexpr double wavelength = 2.0 * element_spacing; // [m]
        inline constexpr double separation_ratio = 20.0;
        inline constexpr double range = 35.0;                       // [m]
        inline constexpr double effective_power_db = 50.0;

        inline Scenario scenario()
        {
            return {ArrayGeometry(elements_per_module, module_count, element_spacing, separation_ratio),
                    UserLocation(range, 0.0),
                    LinkBudget::from_effective_power_db(wavelength, effective_power_db)};
        }
    }

    enum class SweepVariable
    {
        module_count,
        separation,
        theta,
        range,
        element_spacing
    };

    inline std::string_view variable_name(SweepVariable v) noexcept
    {
        switch (v)
        {
        case SweepVariable::module_count: return "module_count";
        case SweepVariable::separation: return "separation";
        case SweepVariable::theta: return "theta";
        case SweepVariable::range: return "range";
        case SweepVariable::element_spacing: return "element_spacing";
        }
        return "unknown";
    }

    inline std::optional<SweepVariable> parse_variable(std::string_view s) noexcept
    {
        for (auto v : {SweepVariable::module_count, SweepVariable::separation, SweepVariable::theta,
                       SweepVariable::range, SweepVariable::element_spacing})
            if (variable_name(v) == s)
                return v;
        return std::nullopt;
    }

    enum class SweepScale
    {
        linear,
        logarithmic
    };

    // One swept variable over [start, stop]. Units: module_count is a count, separation,
    // range and element_spacing are meters, theta is radians. Sweeping element_spacing
    // keeps L fixed, so D scales with d.
    struct SweepSpec
    {
        explicit SweepSpec(Scenario base_scenario) : base(std::move(base_scenario)) {}

        Scenario base;
        SweepVariable variable = SweepVariable::module_count;
        double start = 1.0;
        double stop = 2.0;
        std::size_t steps = 2;
        SweepScale scale = SweepScale::linear;
        std::vector<SnrModel> models;
        SnrOptions options{};

        void validate() const
        {
            if (!(std::isfinite(start) && std::isfinite(stop) && start < stop))
                throw invalid_argument("SweepSpec: requires finite start < stop");
            if (steps < 2)
                throw invalid_argument("SweepSpec: steps must be >= 2");
            if (models.empty())
                throw invalid_argument("SweepSpec: at least one model is required");
            if (scale == SweepScale::logarithmic && !(start > 0.0))
                throw invalid_argument("SweepSpec: logarithmic sweeps need start > 0");
            switch (variable)
            {
            case SweepVariable::module_count:
                if (std::round(start) < 1.0)
                    throw invalid_argument("SweepSpec: module_count sweep must start at >= 1");
                break;
            case SweepVariable::separation:
                if (start < base.geom.element_spacing() * (1.0 - 1e-12))
                    throw invalid_argument("SweepSpec: separation sweep must respect D >= d");
                break;
            case SweepVariable::theta:
                if (start < -0.5 * std::numbers::pi * (1.0 + 1e-15) || stop > 0.5 * std::numbers::pi * (1.0 + 1e-15))
                    throw invalid_argument("SweepSpec: theta sweep must stay within [-pi/2, pi/2]");
                break;
            case SweepVariable::range:
            case SweepVariable::element_spacing:
                if (!(start > 0.0))
                    throw invalid_argument("SweepSpec: range and element_spacing sweeps need start > 0");
                break;
            }
        }

        // Value of the swept variable at point i; endpoints are reproduced exactly
        double value_at(std::size_t i) const
        {
            double v;
            if (i == 0)
                v = start;
            else if (i + 1 == steps)
                v = stop;
            else if (scale == SweepScale::linear)
                v = start + double(i) * (stop - start) / double(steps - 1);
            else
                v = start * std::pow(stop / start, double(i) / double(steps - 1));
            if (variable == SweepVariable::module_count)
                v = std::round(v);
            return v;
        }

        Scenario scenario_at(std::size_t i) const
        {
            const double v = value_at(i);
            const auto &g = base.geom;
            switch (variable)
            {
            case SweepVariable::module_count:
                return {ArrayGeometry(g.elements_per_module(), std::size_t(v), g.element_spacing(), g.separation_ratio()),
                        base.user, base.link};
            case SweepVariable::separation:
                return {ArrayGeometry::from_separation(g.elements_per_module(), g.module_count(), g.element_spacing(), v),
                        base.user, base.link};
            case SweepVariable::theta:
                return {g, UserLocation(base.user.range(), v), base.link};
            case SweepVariable::range:
                return {g, UserLocation(v, base.user.angle()), base.link};
            case SweepVariable::element_spacing:
                return {ArrayGeometry(g.elements_per_module(), g.module_count(), v, g.separation_ratio()),
                        base.user, base.link};
            }
            throw invalid_argument("SweepSpec: unknown variable");
        }
    };

    struct SweepRecord
    {
        std::size_t index;
        double variable_value;
        Scenario scenario;
        std::array<std::optional<SnrReport>, all_models.size()> values; // indexed by SnrModel
        FlagSet flags;

        const std::optional<SnrReport> &operator[](SnrModel m) const { return values[std::size_t(m)]; }
    };

    // A sweep point raised a hard error; cause() holds the original exception
    class sweep_error : public error
    {
    public:
        sweep_error(std::size_t index, std::exception_ptr cause, const std::string &what)
            : error(what), index_(index), cause_(std::move(cause)) {}

        std::size_t index() const noexcept { return index_; }
        const std::exception_ptr &cause() const noexcept { return cause_; }

    private:
        std::size_t index_;
        std::exception_ptr cause_;
    };

    inline SweepRecord evaluate_point(const SweepSpec &spec, std::size_t i)
    {
        SweepRecord rec{i, spec.value_at(i), spec.scenario_at(i), {}, {}};
        SnrOptions opt = spec.options;
        opt.threads = 1;
        for (auto m : spec.models)
        {
            auto rep = evaluate(m, rec.scenario.geom, rec.scenario.user, rec.scenario.link, opt, true);
            rec.flags |= rep.flags;
            rec.values[std::size_t(m)] = rep;
        }
        return rec;
    }

    // Evaluates every point, possibly in parallel, and returns records in index order.
    // On failure the lowest failing index is reported.
    inline std::vector<SweepRecord> run_sweep(const SweepSpec &spec, unsigned threads = 1)
    {
        spec.validate();
        std::vector<std::optional<SweepRecord>> slots(spec.steps);
        std::vector<std::exception_ptr> failures(spec.steps);
        parallel_chunks(spec.steps, threads, [&](std::size_t i) {
            try
            {
                slots[i] = evaluate_point(spec, i);
            }
            catch (...)
            {
                failures[i] = std::current_exception();
            }
        });

        std::vector<SweepRecord> out;
        out.reserve(spec.steps);
        for (std::size_t i = 0; i < spec.steps; ++i)
        {
            if (failures[i])
            {
                std::string what = "unknown error";
                try
                {
                    std::rethrow_exception(failures[i]);
                }
                catch (const std::exception &e)
                {
                    what = e.what();
                }
                catch (...)
                {
                }
                throw sweep_error(i, failures[i], "sweep point " + std::to_string(i) + " failed: " + what);
            }
            out.push_back(std::move(*slots[i]));
        }
        return out;
    }

    // SNR versus element count M N, growing N from 1 to 625 (M N up to 10^4)
    inline SweepSpec fig3_preset()
    {
        SweepSpec s(reference::scenario());
        s.variable = SweepVariable::module_count;
        s.start = 1.0;
        s.stop = 625.0;
        s.steps = 40;
        s.models = {SnrModel::exact_sum, SnrModel::closed_form, SnrModel::collocated, SnrModel::upw};
        return s;
    }

    // SNR versus module separation D from d = lambda / 2 to 40 d at user direction theta_deg
    inline SweepSpec fig4_preset(double theta_deg)
    {
        SweepSpec s(reference::scenario());
        s.base.user = UserLocation::from_degrees(reference::range, theta_deg);
        s.variable = SweepVariable::separation;
        s.start = reference::element_spacing;
        s.stop = 40.0 * reference::element_spacing;
        s.steps = 50;
        s.models = {SnrModel::exact_sum, SnrModel::closed_form, SnrModel::upw};
        return s;
    }
}

#endif
