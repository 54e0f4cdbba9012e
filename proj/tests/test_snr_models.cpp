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

#include <catch2/catch_amalgamated.hpp>
#include <modxl/beamforming.hpp>
#include <modxl/snr_models.hpp>

#include <bit>
#include <cmath>
#include <numbers>
#include <random>

using namespace modxl;
using Catch::Matchers::WithinRel;
using Catch::Matchers::WithinAbs;

namespace
{
    constexpr double d0 = 0.0628;
    const LinkBudget link50 = LinkBudget::from_effective_power_db(0.1256, 50.0);
    const UserLocation broadside(35.0, 0.0);

    double deg(double v) { return v * std::numbers::pi / 180.0; }
    double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

    // Brute force over Cartesian element positions
    double cartesian_sum(const ArrayGeometry &g, const UserLocation &u, const LinkBudget &link)
    {
        const auto q = u.q();
        double s = 0.0;
        for (std::size_t j = 0; j < g.module_count(); ++j)
            for (std::size_t i = 0; i < g.elements_per_module(); ++i)
            {
                const auto w = element_position(g, centered_index(g, i, j));
                s += 1.0 / ((q[0] - w[0]) * (q[0] - w[0]) + (q[1] - w[1]) * (q[1] - w[1]));
            }
        return link.effective_power() * s;
    }
}

TEST_CASE("h_aux - values and symmetry")
{
    CHECK(h_aux(0.0) == 0.0);
    CHECK_THAT(h_aux(1.0), WithinRel(std::numbers::pi / 4.0 - 0.5 * std::log(2.0), 1e-15));
    CHECK_THAT(h_aux(1.0), WithinAbs(0.4388246, 1e-7));
    for (double x : {1e-8, 1e-3, 0.5, 2.0, 37.0, 1e6, 1e200})
        CHECK(h_aux(-x) == h_aux(x));

    // small x: x^2 / 2 - x^4 / 12
    const double x = 1e-3;
    CHECK_THAT(h_aux(x), WithinRel(x * x / 2.0 - x * x * x * x / 12.0, 1e-9));
    // large x: direct formula stays finite without overflowing 1 + x^2
    CHECK_THAT(h_aux(1e3), WithinRel(1e3 * std::atan(1e3) - 0.5 * std::log(1.0 + 1e6), 1e-14));
    CHECK(std::isfinite(h_aux(1e200)));

    CHECK_THROWS_AS(h_aux(std::nan("")), domain_error);
    CHECK_THROWS_AS(h_aux(INFINITY), domain_error);
}

TEST_CASE("SnrReport - dB round trip")
{
    for (double v : {1e-3, 1.0, 81.63, 6.5e4})
    {
        const auto rep = make_report(SnrModel::upw, v);
        CHECK_THAT(std::pow(10.0, rep.value_db / 10.0), WithinRel(v, 1e-12));
    }
}

TEST_CASE("snr_exact_sum - examples")
{
    const ArrayGeometry single(1, 1, d0, 1.0);
    const auto rep = snr_exact_sum(single, broadside, link50);
    CHECK_THAT(rep.value_linear, WithinRel(1e5 / 1225.0, 1e-14));
    CHECK_THAT(rep.value_db, WithinAbs(19.12, 5e-3));

    const ArrayGeometry g33(3, 3, 0.4, 2.5);
    const UserLocation u(3.0, deg(40.0));
    CHECK_THAT(snr_exact_sum(g33, u, link50).value_linear, WithinRel(cartesian_sum(g33, u, link50), 1e-13));

    const ArrayGeometry ref(16, 20, d0, 20.0);
    CHECK(rel(snr_closed_form(ref, broadside, link50).value_linear, snr_exact_sum(ref, broadside, link50).value_linear) <=
          0.01);
}

TEST_CASE("snr_exact_sum - equals P_bar times squared response norm")
{
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::size_t> cnt(1, 24);
    std::uniform_real_distribution<double> ratio(1.0, 30.0), range(5.0, 200.0), ang(-1.5, 1.5), gain(0.1, 10.0);
    for (int k = 0; k < 40; ++k)
    {
        const ArrayGeometry g(cnt(rng), cnt(rng), d0, ratio(rng));
        const UserLocation u(g.span() + range(rng), ang(rng));
        const LinkBudget link(0.1256, gain(rng), 1e4);
        const auto a = array_response_nusw(g, u, link);
        CHECK_THAT(snr_exact_sum(g, u, link).value_linear, WithinRel(link.transmit_snr() * a.squared_norm(), 1e-12));
    }
}

TEST_CASE("snr_exact_sum - result independent of thread count")
{
    const ArrayGeometry g(16, 3000, d0, 20.0);
    SnrOptions one, many;
    many.threads = 4;
    const double a = snr_exact_sum(g, broadside, link50, one).value_linear;
    const double b = snr_exact_sum(g, broadside, link50, many).value_linear;
    CHECK(std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b));
}

TEST_CASE("snr_exact_sum - degenerate geometry")
{
    const ArrayGeometry g(3, 1, 1.0, 1.0);
    CHECK_THROWS_AS(snr_exact_sum(g, UserLocation(1.0, 0.5 * std::numbers::pi), link50), degenerate_geometry_error);
}

TEST_CASE("snr_closed_form - reference configuration and symmetry")
{
    const ArrayGeometry g(16, 20, d0, 20.0);
    const auto closed = snr_closed_form(g, broadside, link50);
    CHECK(closed.flags.empty());
    CHECK(rel(closed.value_linear, snr_exact_sum(g, broadside, link50).value_linear) <= 0.01);

    for (double t : {0.1, 0.6, 1.2, 1.45})
        CHECK_THAT(snr_closed_form(g, UserLocation(35.0, t), link50).value_linear,
                   WithinRel(snr_closed_form(g, UserLocation(35.0, -t), link50).value_linear, 1e-13));

    CHECK_THAT(closed.value_linear, WithinRel(snr_double_integral(g, broadside, link50).value_linear, 1e-6));
}

TEST_CASE("snr_closed_form - endfire falls back to the exact sum")
{
    const ArrayGeometry g(16, 20, d0, 20.0);
    const UserLocation endfire(100.0, 0.5 * std::numbers::pi);
    const auto rep = snr_closed_form(g, endfire, link50);
    CHECK(rep.model == SnrModel::closed_form);
    CHECK(rep.flags.has(ValidityFlag::theta_near_endfire));
    CHECK(rep.value_linear == snr_exact_sum(g, endfire, link50).value_linear);

    const auto coll = snr_collocated(ArrayGeometry(16, 20, d0, 1.0), endfire, link50);
    CHECK(coll.flags.has(ValidityFlag::theta_near_endfire));
}

TEST_CASE("snr_closed_form - epsilon warning")
{
    const ArrayGeometry g(4, 2, d0, 2.0);
    CHECK(snr_closed_form(g, UserLocation(5.0, 0.0), link50).flags.has(ValidityFlag::epsilon_not_small));
    CHECK_FALSE(snr_closed_form(g, UserLocation(7.0, 0.0), link50).flags.has(ValidityFlag::epsilon_not_small));
}

TEST_CASE("snr_closed_form - accuracy grid against exact sum (property)")
{
    double worst = 0.0;
    for (double theta : {0.0, 30.0, 60.0, 75.0})
        for (double r : {35.0, 100.0})
            for (std::size_t N = 1; N <= 200; ++N)
            {
                const ArrayGeometry g(16, N, d0, 20.0);
                const UserLocation u(r, deg(theta));
                worst = std::max(worst, rel(snr_closed_form(g, u, link50).value_linear,
                                            snr_exact_sum(g, u, link50).value_linear));
            }
    CHECK(worst <= 0.01);
}

TEST_CASE("snr_collocated - examples")
{
    const ArrayGeometry coll(16, 20, d0, 1.0);
    const auto rep = snr_collocated(coll, broadside, link50);
    // (1e5 / (35 d)) * 2 atan(320 d / 70)
    const double hand = 1e5 / (35.0 * d0) * 2.0 * std::atan(320.0 * d0 / 70.0);
    CHECK_THAT(rep.value_linear, WithinRel(hand, 1e-14));
    CHECK_THAT(rep.value_linear, WithinRel(2.544e4, 1e-3));
    CHECK_THAT(rep.value_db, WithinAbs(44.055, 5e-3));
    CHECK(rel(rep.value_linear, snr_exact_sum(coll, broadside, link50).value_linear) <= 0.01);
    CHECK(rel(rep.value_linear, snr_closed_form(coll, broadside, link50).value_linear) <= 0.005);

    // small array: reduces to the plane-wave value
    const UserLocation far(1e4, 0.0);
    CHECK_THAT(snr_collocated(coll, far, link50).value_linear, WithinRel(snr_upw(coll, far, link50).value_linear, 1e-6));

    CHECK_THROWS_AS(snr_collocated(ArrayGeometry(16, 20, d0, 20.0), broadside, link50), model_mismatch_error);
}

TEST_CASE("snr_collocated_counterpart - flags modular geometries")
{
    const ArrayGeometry g(16, 20, d0, 20.0);
    const auto rep = snr_collocated_counterpart(g, broadside, link50);
    CHECK(rep.flags.has(ValidityFlag::collocated_counterpart));
    CHECK(rep.value_linear == snr_collocated(ArrayGeometry(16, 20, d0, 1.0), broadside, link50).value_linear);
    CHECK_THROWS_AS(evaluate(SnrModel::collocated, g, broadside, link50), model_mismatch_error);
}

TEST_CASE("snr_asymptotic - examples")
{
    const ArrayGeometry g(16, 20, d0, 20.0);
    const auto rep = snr_asymptotic(g, broadside, link50);
    CHECK_THAT(rep.value_linear, WithinRel(std::numbers::pi * 16.0 * 1e5 / (35.0 * d0 * 35.0), 1e-14));
    CHECK_THAT(rep.value_linear, WithinRel(6.534e4, 1e-3));
    CHECK_THAT(rep.value_db, WithinAbs(48.15, 5e-3));

    // L = 1: independent of M
    for (std::size_t M : {1u, 4u, 16u, 64u})
        CHECK_THAT(snr_asymptotic(ArrayGeometry(M, 5, d0, 1.0), broadside, link50).value_linear,
                   WithinRel(std::numbers::pi * 1e5 / (d0 * 35.0), 1e-13));

    // inverse proportionality in D when (M-1) d << D
    const double a = snr_asymptotic(ArrayGeometry(2, 5, d0, 200.0), broadside, link50).value_linear;
    const double b = snr_asymptotic(ArrayGeometry(2, 5, d0, 400.0), broadside, link50).value_linear;
    CHECK_THAT(b / a, WithinRel(0.5, 0.01));

    CHECK_THROWS_AS(snr_asymptotic(g, UserLocation(35.0, 0.5 * std::numbers::pi), link50), unbounded_limit_error);
}

TEST_CASE("snr_asymptotic - exact sum approaches the limit monotonically")
{
    const double limit = snr_asymptotic(ArrayGeometry(16, 1, d0, 20.0), broadside, link50).value_linear;
    double prev = 1.0;
    for (std::size_t N : {100u, 150u, 300u, 700u, 1500u, 4000u, 9000u, 20000u})
    {
        const double gap = rel(snr_exact_sum(ArrayGeometry(16, N, d0, 20.0), broadside, link50).value_linear, limit);
        CHECK(gap < prev);
        prev = gap;
    }
}

TEST_CASE("snr_upw - examples and far-field consistency")
{
    const ArrayGeometry single(1, 1, d0, 1.0);
    CHECK(snr_upw(single, broadside, link50).value_linear == snr_exact_sum(single, broadside, link50).value_linear);

    const ArrayGeometry g(16, 20, d0, 20.0);
    const auto rep = snr_upw(g, broadside, link50);
    CHECK_THAT(rep.value_linear, WithinRel(320.0 * (1e5 / 1225.0), 1e-14));
    CHECK_THAT(rep.value_db, WithinAbs(44.17, 5e-3));
    CHECK(rep.flags.has(ValidityFlag::far_field_assumed));
    CHECK(snr_upw(g, UserLocation(35.0, 1.3), link50).value_linear == rep.value_linear);

    const UserLocation far(10.0 * g.augmented_span(), 0.0);
    CHECK_FALSE(snr_upw(g, far, link50).flags.has(ValidityFlag::far_field_assumed));
    CHECK(rel(snr_closed_form(g, far, link50).value_linear, snr_upw(g, far, link50).value_linear) <= 0.01);
}

TEST_CASE("snr_upw - over and under estimation versus module separation")
{
    for (int k = 0; k <= 39; ++k)
    {
        const ArrayGeometry g(16, 20, d0, 1.0 + double(k));
        const UserLocation u0(35.0, 0.0), u75(35.0, deg(75.0));
        CHECK(snr_upw(g, u0, link50).value_linear > snr_exact_sum(g, u0, link50).value_linear);
        CHECK(snr_upw(g, u75, link50).value_linear < snr_exact_sum(g, u75, link50).value_linear);
    }
}

TEST_CASE("collocated versus modular asymptotic gap")
{
    const double coll = snr_asymptotic(ArrayGeometry(16, 20, d0, 1.0), broadside, link50).value_linear;
    const double mod = snr_asymptotic(ArrayGeometry(16, 20, d0, 20.0), broadside, link50).value_linear;
    CHECK_THAT(linear_to_db(coll / mod), WithinAbs(10.0 * std::log10(35.0 / 16.0), 1e-9));
    CHECK_THAT(linear_to_db(coll / mod), WithinAbs(3.40, 5e-3));
}

TEST_CASE("snr_double_integral - examples")
{
    const ArrayGeometry single(1, 1, d0, 1.0);
    const UserLocation far(1e3, 0.3);
    CHECK_THAT(snr_double_integral(single, far, link50).value_linear, WithinRel(1e5 / 1e6, 1e-6));

    const ArrayGeometry g(8, 12, d0, 6.0);
    for (double t : {0.2, 0.9, 1.3})
        CHECK_THAT(snr_double_integral(g, UserLocation(40.0, t), link50).value_linear,
                   WithinRel(snr_double_integral(g, UserLocation(40.0, -t), link50).value_linear, 1e-8));

    SnrOptions bad;
    bad.quad_rel_tol = 0.0;
    CHECK_THROWS_AS(snr_double_integral(g, broadside, link50, bad), invalid_argument);

    SnrOptions starved;
    starved.quad_rel_tol = 1e-14;
    starved.quad_max_intervals = 1;
    try
    {
        // user close to a long aperture: sharply peaked integrand
        snr_double_integral(ArrayGeometry(16, 200, d0, 20.0), UserLocation(3.0, 1.0), link50, starved);
        FAIL("expected accuracy_error");
    }
    catch (const accuracy_error &e)
    {
        CHECK(e.estimate() > 0.0);
    }
}

TEST_CASE("snr_double_integral - matches the closed form on random configurations (property)")
{
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<std::size_t> m(1, 32), n(1, 150);
    std::uniform_real_distribution<double> ratio(1.0, 40.0), eps(0.0003, 0.002), ang(-deg(80.0), deg(80.0));
    for (int k = 0; k < 20; ++k)
    {
        const ArrayGeometry g(m(rng), n(rng), d0, ratio(rng));
        const UserLocation u(d0 / eps(rng), ang(rng));
        CHECK_THAT(snr_double_integral(g, u, link50).value_linear,
                   WithinRel(snr_closed_form(g, u, link50).value_linear, 1e-6));
    }
}

TEST_CASE("evaluate - dispatch by tag")
{
    const ArrayGeometry g(16, 20, d0, 20.0);
    for (auto model : all_models)
    {
        const auto rep = evaluate(model, g, broadside, link50, {}, true);
        CHECK(rep.model == model);
        CHECK(rep.value_linear > 0.0);
        CHECK(parse_model(model_name(model)) == model);
    }
    CHECK_FALSE(parse_model("bogus").has_value());
}
