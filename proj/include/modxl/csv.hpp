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

#ifndef MODXL_CSV_HPP
#define MODXL_CSV_HPP

#include "sweep.hpp"

#include <charconv>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace modxl::csv
{
    // Shortest-form general notation with 9 significant digits, locale independent
    inline std::string format_number(double v)
    {
        char buf[64];
        const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 9);
        return std::string(buf, res.ptr);
    }

    inline std::optional<double> parse_number(std::string_view s)
    {
        if (s.empty())
            return std::nullopt;
        if (s.front() == '+')
            s.remove_prefix(1);
        double v = 0.0;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc() || res.ptr != s.data() + s.size())
            return std::nullopt;
        return v;
    }

    inline constexpr std::string_view sweep_header =
        "index,var_name,var_value,M,N,d_m,D_m,r_m,theta_rad,txsnr_db,snr_exact_db,snr_closed_db,"
        "snr_collocated_db,snr_asymptotic_db,snr_upw_db,snr_integral_db,flags";

    inline void write_sweep(std::ostream &os, SweepVariable variable, const std::vector<SweepRecord> &records)
    {
        os << sweep_header << '\n';
        for (const auto &rec : records)
        {
            const auto &sc = rec.scenario;
            os << rec.index << ',' << variable_name(variable) << ',' << format_number(rec.variable_value) << ','
               << sc.geom.elements_per_module() << ',' << sc.geom.module_count() << ','
               << format_number(sc.geom.element_spacing()) << ',' << format_number(sc.geom.module_separation()) << ','
               << format_number(sc.user.range()) << ',' << format_number(sc.user.angle()) << ','
               << format_number(linear_to_db(sc.link.effective_power()));
            for (auto m : all_models)
            {
                os << ',';
                if (const auto &rep = rec[m])
                    os << format_number(rep->value_db);
            }
            os << ',';
            const auto names = rec.flags.names();
            for (std::size_t k = 0; k < names.size(); ++k)
                os << (k ? ";" : "") << names[k];
            os << '\n';
        }
    }

    struct Table
    {
        std::vector<std::string> header;
        std::vector<std::vector<std::string>> rows;

        std::optional<std::size_t> column(std::string_view name) const
        {
            for (std::size_t i = 0; i < header.size(); ++i)
                if (header[i] == name)
                    return i;
            return std::nullopt;
        }
    };

    inline std::vector<std::string> split_line(std::string_view line)
    {
        std::vector<std::string> out;
        std::size_t pos = 0;
        for (;;)
        {
            const auto comma = line.find(',', pos);
            out.emplace_back(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
            if (comma == std::string_view::npos)
                break;
            pos = comma + 1;
        }
        return out;
    }

    // Plain comma-separated table without quoting; every row must match the header width
    inline Table read(std::istream &is)
    {
        Table t;
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(is, line))
        {
            ++line_no;
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            if (line.empty())
                continue;
            auto fields = split_line(line);
            if (t.header.empty())
            {
                t.header = std::move(fields);
                continue;
            }
            if (fields.size() != t.header.size())
                throw parse_error("csv line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(t.header.size()) + " fields, found " + std::to_string(fields.size()));
            t.rows.push_back(std::move(fields));
        }
        if (t.header.empty())
            throw parse_error("csv: empty input");
        return t;
    }
}

#endif
