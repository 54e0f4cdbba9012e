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

#ifndef MODXL_SVG_HPP
#define MODXL_SVG_HPP

#include "csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace modxl::svg
{
    struct Series
    {
        std::string name;
        std::vector<std::pair<double, double>> points; // (x, y), ascending x not required
    };

    struct Chart
    {
        std::string x_label;
        std::string y_label;
        std::vector<Series> series;
        bool log_x = false;
        int width = 720;
        int height = 480;
    };

    inline std::string escape(std::string_view s)
    {
        std::string out;
        out.reserve(s.size());
        for (char c : s)
        {
            switch (c)
            {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
            }
        }
        return out;
    }

    namespace detail
    {
        inline std::string fixed2(double v)
        {
            char buf[64];
            const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 2);
            return std::string(buf, res.ptr);
        }

        // Tick positions at 1, 2 or 5 times a power of ten
        inline std::vector<double> nice_ticks(double lo, double hi, int target = 6)
        {
            const double span = hi - lo;
            const double raw = span / target;
            const double mag = std::pow(10.0, std::floor(std::log10(raw)));
            double step = mag;
            for (double f : {1.0, 2.0, 5.0, 10.0})
                if (f * mag >= raw)
                {
                    step = f * mag;
                    break;
                }
            std::vector<double> out;
            for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * span; t += step)
                out.push_back(std::abs(t) < 1e-12 * span ? 0.0 : t);
            return out;
        }

        inline constexpr std::string_view palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                       "#9467bd", "#8c564b", "#e377c2", "#17becf"};
    }

    // Self-contained SVG line chart, one polyline per series
    inline std::string render(const Chart &chart)
    {
        if (chart.series.empty())
            throw invalid_argument("svg: chart has no series");

        double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
        double ymin = xmin, ymax = -xmin;
        for (const auto &s : chart.series)
        {
            if (s.points.size() < 2)
                throw invalid_argument("svg: series '" + s.name + "' has fewer than two points");
            for (auto [x, y] : s.points)
            {
                if (chart.log_x && !(x > 0.0))
                    throw invalid_argument("svg: logarithmic x axis needs positive x values");
                const double xv = chart.log_x ? std::log10(x) : x;
                xmin = std::min(xmin, xv);
                xmax = std::max(xmax, xv);
                ymin = std::min(ymin, y);
                ymax = std::max(ymax, y);
            }
        }
        if (xmax == xmin)
            xmax = xmin + 1.0;
        if (ymax == ymin)
        {
            ymin -= 1.0;
            ymax += 1.0;
        }
        const double ypad = 0.05 * (ymax - ymin);
        ymin -= ypad;
        ymax += ypad;

        const double left = 80, right = 180, top = 30, bottom = 60;
        const double pw = chart.width - left - right, ph = chart.height - top - bottom;
        auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
        auto py = [&](double y) { return top + (ymax - y) / (ymax - ymin) * ph; };

        using detail::fixed2;
        std::ostringstream os;
        os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
           << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << chart.width << "\" height=\"" << chart.height
           << "\" viewBox=\"0 0 " << chart.width << ' ' << chart.height << "\">\n"
           << "<rect x=\"0\" y=\"0\" width=\"" << chart.width << "\" height=\"" << chart.height
           << "\" fill=\"white\"/>\n"
           << "<g font-family=\"sans-serif\" font-size=\"12\">\n"
           << "<rect x=\"" << fixed2(left) << "\" y=\"" << fixed2(top) << "\" width=\"" << fixed2(pw)
           << "\" height=\"" << fixed2(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";

        // x ticks; on a log axis at integer decades
        std::vector<double> xt;
        if (chart.log_x)
        {
            for (double e = std::ceil(xmin); e <= std::floor(xmax); e += 1.0)
                xt.push_back(e);
            if (xt.size() < 2)
                xt = detail::nice_ticks(xmin, xmax);
        }
        else
            xt = detail::nice_ticks(xmin, xmax);
        for (double t : xt)
        {
            const double x = px(t);
            const double label = chart.log_x ? std::pow(10.0, t) : t;
            os << "<line x1=\"" << fixed2(x) << "\" y1=\"" << fixed2(top + ph) << "\" x2=\"" << fixed2(x)
               << "\" y2=\"" << fixed2(top + ph + 5) << "\" stroke=\"black\"/>\n"
               << "<text x=\"" << fixed2(x) << "\" y=\"" << fixed2(top + ph + 20) << "\" text-anchor=\"middle\">"
               << escape(csv::format_number(label)) << "</text>\n";
        }
        for (double t : detail::nice_ticks(ymin, ymax))
        {
            const double y = py(t);
            os << "<line x1=\"" << fixed2(left - 5) << "\" y1=\"" << fixed2(y) << "\" x2=\"" << fixed2(left)
               << "\" y2=\"" << fixed2(y) << "\" stroke=\"black\"/>\n"
               << "<text x=\"" << fixed2(left - 8) << "\" y=\"" << fixed2(y + 4) << "\" text-anchor=\"end\">"
               << escape(csv::format_number(t)) << "</text>\n";
        }
        os << "<text x=\"" << fixed2(left + pw / 2) << "\" y=\"" << fixed2(chart.height - 15.0)
           << "\" text-anchor=\"middle\">" << escape(chart.x_label) << (chart.log_x ? " (log)" : "") << "</text>\n"
           << "<text x=\"20\" y=\"" << fixed2(top + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
           << fixed2(top + ph / 2) << ")\">" << escape(chart.y_label) << "</text>\n";

        for (std::size_t k = 0; k < chart.series.size(); ++k)
        {
            const auto &s = chart.series[k];
            const auto colour = detail::palette[k % std::size(detail::palette)];
            os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
            for (std::size_t p = 0; p < s.points.size(); ++p)
            {
                const double xv = chart.log_x ? std::log10(s.points[p].first) : s.points[p].first;
                os << (p ? " " : "") << fixed2(px(xv)) << ',' << fixed2(py(s.points[p].second));
            }
            os << "\"/>\n";
            const double ly = top + 15.0 + 18.0 * double(k);
            os << "<line x1=\"" << fixed2(left + pw + 10) << "\" y1=\"" << fixed2(ly) << "\" x2=\""
               << fixed2(left + pw + 35) << "\" y2=\"" << fixed2(ly) << "\" stroke=\"" << colour
               << "\" stroke-width=\"2\"/>\n"
               << "<text x=\"" << fixed2(left + pw + 40) << "\" y=\"" << fixed2(ly + 4) << "\">" << escape(s.name)
               << "</text>\n";
        }
        os << "</g>\n</svg>\n";
        return os.str();
    }

    // Builds a chart from CSV columns. Empty cells are skipped; any other non-numeric
    // cell is a parse_error. Unknown column names raise invalid_argument.
    inline Chart chart_from_table(const csv::Table &table, const std::string &x_column,
                                  const std::vector<std::string> &y_columns, bool log_x)
    {
        const auto xc = table.column(x_column);
        if (!xc)
            throw invalid_argument("plot: unknown x column '" + x_column + "'");
        if (y_columns.empty())
            throw invalid_argument("plot: at least one y column is required");
        if (table.rows.size() < 2)
            throw parse_error("plot: need at least two data rows to draw a line");

        Chart chart;
        chart.x_label = x_column;
        chart.y_label = y_columns.size() == 1 ? y_columns.front() : "value";
        chart.log_x = log_x;
        for (const auto &name : y_columns)
        {
            const auto yc = table.column(name);
            if (!yc)
                throw invalid_argument("plot: unknown y column '" + name + "'");
            Series s{name, {}};
            for (std::size_t r = 0; r < table.rows.size(); ++r)
            {
                const auto &xs = table.rows[r][*xc];
                const auto &ys = table.rows[r][*yc];
                if (xs.empty() || ys.empty())
                    continue;
                const auto x = csv::parse_number(xs), y = csv::parse_number(ys);
                if (!x || !y)
                    throw parse_error("plot: non-numeric value in data row " + std::to_string(r + 1));
                if (std::isfinite(*x) && std::isfinite(*y))
                    s.points.emplace_back(*x, *y);
            }
            if (s.points.size() < 2)
                throw invalid_argument("plot: column '" + name + "' has fewer than two numeric values");
            chart.series.push_back(std::move(s));
        }
        return chart;
    }
}

#endif
