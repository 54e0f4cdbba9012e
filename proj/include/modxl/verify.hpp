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

#ifndef MODXL_VERIFY_HPP
#define MODXL_VERIFY_HPP

#include "beamforming.hpp"
#include "csv.hpp"
#include "snr_models.hpp"
#include "sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

// Built-in oracle suite: every model is checked against an independent route
// (Cartesian distances, response-vector norms, adaptive quadrature, limits, MRC bounds).
namespace modxl::verify
{
    struct CheckResult
    {
        std::string name;
        double tolerance;
        double observed;
        bool passed;
    };

    struct Options
    {
        // Test hook: the closed form in the quadrature check is evaluated on a geometry
        // whose pitch K is shifted by this amount. Nonzero values must make that check fail.
        double fault_k_offset = 0.0;
        unsigned threads = 2;
        std::uint64_t seed = 20260214;
    };

    inline double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

    // Random scenario with eps = d / r <= 0.002 and |theta| <= 80 degrees
    inline Scenario random_scenario(detail::gaussian_source &rng)
    {
        auto uni = [&](double lo, double hi) { return lo + (hi - lo) * rng.uniform_open(); };
        const std::size_t M = 1 + std::size_t(uni(0.0, 32.0));
        const std::size_t N = 1 + std::size_t(uni(0.0, 120.0));
        const double d = uni(0.01, 0.1);
        const double L = uni(1.0, 40.0);
        const double r = uni(d / 0.002, d / 0.0005);
        const double theta = uni(-80.0, 80.0) * std::numbers::pi / 180.0;
        return {ArrayGeometry(M, N, d, L), UserLocation(r, theta), LinkBudget(2.0 * d, uni(0.1, 2.0), uni(1e3, 1e6))};
    }

    inline std::vector<cdouble> random_unit_vector(detail::gaussian_source &rng, std::size_t n)
    {
        std::vector<cdouble> v(n);
        double s = 0.0;
        for (auto &c : v)
        {
            c = rng.complex_normal(1.0);
            s += std::norm(c);
        }
        for (auto &c : v)
            c /= std::sqrt(s);
        return v;
    }

    inline std::vector<CheckResult> run(const Options &opt = {})
    {
        std::vector<CheckResult> out;
        auto record = [&](std::string name, double tol, double observed) {
            out.push_back({std::move(name), tol, observed, observed <= tol});
        };
        detail::gaussian_source rng(opt.seed);
        const auto ref = reference::scenario();
        const auto &link = ref.link;
        SnrOptions so;
        so.threads = opt.threads;

        {
            double worst = 0.0;
            for (int k = 0; k < 10; ++k)
            {
                const auto sc = random_scenario(rng);
                const auto q = sc.user.q();
                for (std::size_t j = 0; j < sc.geom.module_count(); ++j)
                    for (std::size_t i = 0; i < sc.geom.elements_per_module(); ++i)
                    {
                        const auto idx = centered_index(sc.geom, i, j);
                        const auto w = element_position(sc.geom, idx);
                        const double cart = std::hypot(q[0] - w[0], q[1] - w[1]);
                        worst = std::max(worst, rel_err(distance(sc.geom, sc.user, idx), cart));
                    }
            }
            record("distance_formula_vs_cartesian", 1e-12, worst);
        }
        {
            double worst = 0.0;
            for (int k = 0; k < 10; ++k)
            {
                const auto sc = random_scenario(rng);
                const auto a = array_response_nusw(sc.geom, sc.user, sc.link);
                const double via_norm = sc.link.transmit_snr() * a.squared_norm();
                worst = std::max(worst, rel_err(snr_exact_sum(sc.geom, sc.user, sc.link, so).value_linear, via_norm));
            }
            record("exact_sum_vs_response_norm", 1e-12, worst);
        }
        {
            std::vector<Scenario> cases{ref};
            for (int k = 0; k < 5; ++k)
                cases.push_back(random_scenario(rng));
            double worst = 0.0;
            for (const auto &sc : cases)
            {
                const auto &g = sc.geom;
                const ArrayGeometry tested(g.elements_per_module(), g.module_count(), g.element_spacing(),
                                           g.separation_ratio() + opt.fault_k_offset);
                const double closed = snr_closed_form(tested, sc.user, sc.link).value_linear;
                const double integral = snr_double_integral(g, sc.user, sc.link).value_linear;
                worst = std::max(worst, rel_err(closed, integral));
            }
            record("closed_form_vs_quadrature", 1e-6, worst);
        }
        {
            double worst = 0.0;
            for (std::size_t N = 1; N <= 625; ++N)
            {
                const ArrayGeometry g(16, N, reference::element_spacing, reference::separation_ratio);
                worst = std::max(worst, rel_err(snr_closed_form(g, ref.user, link).value_linear,
                                                snr_exact_sum(g, ref.user, link, so).value_linear));
            }
            record("closed_form_vs_exact_sum", 1e-2, worst);
        }
        {
            double worst = 0.0;
            for (std::size_t N = 1; N <= 625; ++N)
            {
                const ArrayGeometry g(16, N, reference::element_spacing, 1.0);
                worst = std::max(worst, rel_err(snr_collocated(g, ref.user, link).value_linear,
                                                snr_exact_sum(g, ref.user, link, so).value_linear));
            }
            record("collocated_vs_exact_sum", 1e-2, worst);
        }
        {
            const ArrayGeometry g(16, 100000, reference::element_spacing, reference::separation_ratio);
            const double limit = snr_asymptotic(g, ref.user, link).value_linear;
            record("asymptotic_limit_at_1e5_modules", 5e-3,
                   rel_err(snr_exact_sum(g, ref.user, link, so).value_linear, limit));

            // relative gap to the limit must shrink as N grows
            double prev = 1e300, violations = 0.0;
            for (std::size_t N : {100u, 200u, 400u, 800u, 1600u, 3200u, 6400u, 12800u})
            {
                const ArrayGeometry gn(16, N, reference::element_spacing, reference::separation_ratio);
                const double gap = rel_err(snr_exact_sum(gn, ref.user, link, so).value_linear, limit);
                if (gap >= prev)
                    violations += 1.0;
                prev = gap;
            }
            record("asymptotic_gap_monotone", 0.0, violations);
        }
        {
            const UserLocation far(10.0 * ref.geom.augmented_span(), 0.0);
            record("far_field_matches_upw", 1e-2,
                   rel_err(snr_closed_form(ref.geom, far, link).value_linear, snr_upw(ref.geom, far, link).value_linear));
        }
        {
            const ArrayGeometry coll(16, 20, reference::element_spacing, 1.0);
            const double gap = linear_to_db(snr_asymptotic(coll, ref.user, link).value_linear /
                                            snr_asymptotic(ref.geom, ref.user, link).value_linear);
            record("modular_asymptotic_gap_db", 1e-9, std::abs(gap - 10.0 * std::log10(35.0 / 16.0)));
        }
        {
            double violations = 0.0;
            for (double deg : {0.0, 75.0})
            {
                auto spec = fig4_preset(deg);
                spec.models = {SnrModel::exact_sum, SnrModel::upw};
                for (const auto &rec : run_sweep(spec, opt.threads))
                {
                    const double exact = rec[SnrModel::exact_sum]->value_linear;
                    const double upw = rec[SnrModel::upw]->value_linear;
                    if (deg == 0.0 ? !(upw > exact) : !(upw < exact))
                        violations += 1.0;
                }
            }
            record("upw_over_under_estimate_signs", 0.0, violations);
        }
        {
            double worst_excess = -1e300, worst_equality = 0.0;
            for (int k = 0; k < 3; ++k)
            {
                const auto sc = random_scenario(rng);
                const auto a = array_response_nusw(sc.geom, sc.user, sc.link);
                const auto mrc = mrc_weights(a);
                const double best = snr(mrc, a, sc.link);
                for (int t = 0; t < 1000; ++t)
                {
                    const BeamformingWeights v(random_unit_vector(rng, a.size()));
                    worst_excess = std::max(worst_excess, snr(v, a, sc.link) - best);
                }
                for (double phi : {0.3, 1.7, -2.9})
                {
                    std::vector<cdouble> w(mrc.weights().begin(), mrc.weights().end());
                    for (auto &c : w)
                        c *= std::polar(1.0, phi);
                    worst_equality = std::max(worst_equality, rel_err(snr(BeamformingWeights(w), a, sc.link), best));
                }
            }
            record("mrc_upper_bounds_random_beamformers", 1e-9, std::max(0.0, worst_excess));
            record("mrc_phase_rotation_equality", 1e-12, worst_equality);
        }
        {
            const auto a = array_response_nusw(ref.geom, ref.user, link);
            const auto v = mrc_weights(a);
            UplinkSimulation sim;
            sim.sample_count = 20000;
            sim.noise_power = 1.0;
            sim.transmit_power = link.transmit_snr();
            sim.seed = opt.seed;
            const double est = simulate_uplink(a, v, sim).snr;
            record("monte_carlo_uplink_snr", 3e-2, rel_err(est, snr(v, a, link)));
        }
        {
            const auto spec = fig3_preset();
            std::ostringstream one, many;
            csv::write_sweep(one, spec.variable, run_sweep(spec, 1));
            csv::write_sweep(many, spec.variable, run_sweep(spec, std::max(2u, opt.threads)));
            record("sweep_thread_determinism", 0.0, one.str() == many.str() ? 0.0 : 1.0);
        }
        return out;
    }
}

#endif
