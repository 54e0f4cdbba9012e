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

#ifndef MODXL_QUADRATURE_HPP
#define MODXL_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <queue>
#include <vector>

namespace modxl::quad
{
    struct Result
    {
        double value = 0.0;
        double error = 0.0;            // estimated absolute error
        std::size_t evaluations = 0;   // integrand calls (outer calls for nested rules)
        bool converged = false;
    };

    struct Options
    {
        double rel_tol = 1e-9;
        double abs_tol = 0.0;
        std::size_t max_intervals = 4000;
    };

    namespace detail
    {
        // 15-point Kronrod nodes on [0, 1]; odd entries are the embedded 7-point Gauss nodes
        inline constexpr double xk[8] = {
            0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
        inline constexpr double wk[8] = {
            0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
        inline constexpr double wg[4] = {
            0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
            0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

        struct Segment
        {
            double a, b, value, error;
            bool operator<(const Segment &o) const { return error < o.error; }
        };

        template <class F>
        Segment gauss_kronrod15(F &f, double a, double b)
        {
            const double c = 0.5 * (a + b), h = 0.5 * (b - a);
            const double fc = f(c);
            double kronrod = wk[7] * fc;
            double gauss = wg[3] * fc;
            for (int i = 0; i < 7; ++i)
            {
                const double dx = h * xk[i];
                const double s = f(c - dx) + f(c + dx);
                kronrod += wk[i] * s;
                if (i % 2 == 1)
                    gauss += wg[i / 2] * s;
            }
            return {a, b, kronrod * h, std::abs((kronrod - gauss) * h)};
        }
    }

    // Globally adaptive Gauss-Kronrod (7/15) quadrature of f over [a, b].
    // The segment with the largest error estimate is bisected until the summed
    // error drops below max(abs_tol, rel_tol * |I|) or the interval budget is exhausted.
    template <class F>
    Result integrate(F &&f, double a, double b, const Options &opt = {})
    {
        Result res;
        if (a == b)
        {
            res.converged = true;
            return res;
        }
        if (a > b)
        {
            res = integrate(f, b, a, opt);
            res.value = -res.value;
            return res;
        }
        std::priority_queue<detail::Segment> heap;
        auto first = detail::gauss_kronrod15(f, a, b);
        res.evaluations = 15;
        double total = first.value, err = first.error;
        heap.push(first);

        auto done = [&] { return err <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total)); };
        while (!done() && heap.size() < opt.max_intervals)
        {
            const auto worst = heap.top();
            heap.pop();
            const double mid = 0.5 * (worst.a + worst.b);
            if (!(mid > worst.a && mid < worst.b))
                break; // interval no longer divisible in double precision
            const auto left = detail::gauss_kronrod15(f, worst.a, mid);
            const auto right = detail::gauss_kronrod15(f, mid, worst.b);
            res.evaluations += 30;
            heap.push(left);
            heap.push(right);
            total += left.value + right.value - worst.value;
            err += left.error + right.error - worst.error;
        }

        // Final sums over all segments in a fixed (error-ordered) sequence
        total = 0.0;
        err = 0.0;
        while (!heap.empty())
        {
            total += heap.top().value;
            err += heap.top().error;
            heap.pop();
        }
        res.value = total;
        res.error = err;
        res.converged = done();
        return res;
    }

    // Iterated integral of f(x, y) over x in [x0, x1] (inner) and y in [y0, y1] (outer).
    // Each level runs at opt.rel_tol; the reported error is the outer estimate plus the
    // accumulated inner error weighted by the outer rule.
    template <class F>
    Result integrate2d(F &&f, double x0, double x1, double y0, double y1, const Options &opt = {})
    {
        bool inner_ok = true;
        double inner_err_max = 0.0;
        std::size_t evaluations = 0;
        auto outer = [&](double y) {
            auto r = integrate([&](double x) { return f(x, y); }, x0, x1, opt);
            inner_ok = inner_ok && r.converged;
            inner_err_max = std::max(inner_err_max, r.error);
            evaluations += r.evaluations;
            return r.value;
        };
        Result res = integrate(outer, y0, y1, opt);
        res.error += inner_err_max * std::abs(y1 - y0);
        res.evaluations = evaluations;
        res.converged = res.converged && inner_ok;
        return res;
    }
}

#endif
