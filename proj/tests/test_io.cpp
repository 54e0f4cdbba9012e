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
#include <modxl/csv.hpp>
#include <modxl/svg.hpp>

#include <regex>
#include <sstream>
#include <vector>

using namespace modxl;

namespace
{
    // Minimal XML check: balanced tags, quoted attributes, no stray '<' or '&'
    bool well_formed(const std::string &doc)
    {
        std::vector<std::string> stack;
        std::size_t pos = 0;
        if (doc.rfind("<?xml", 0) == 0)
            pos = doc.find("?>") + 2;
        bool root_seen = false;
        while (pos < doc.size())
        {
            const auto lt = doc.find('<', pos);
            const auto text = doc.substr(pos, lt == std::string::npos ? std::string::npos : lt - pos);
            for (std::size_t a = text.find('&'); a != std::string::npos; a = text.find('&', a + 1))
            {
                const auto semi = text.find(';', a);
                if (semi == std::string::npos || semi - a > 6)
                    return false;
            }
            if (lt == std::string::npos)
                break;
            const auto gt = doc.find('>', lt);
            if (gt == std::string::npos)
                return false;
            std::string tag = doc.substr(lt + 1, gt - lt - 1);
            if (tag.find('<') != std::string::npos)
                return false;
            if (std::count(tag.begin(), tag.end(), '"') % 2 != 0)
                return false;
            if (!tag.empty() && tag.front() == '/')
            {
                if (stack.empty() || stack.back() != tag.substr(1))
                    return false;
                stack.pop_back();
            }
            else
            {
                const bool self_closing = !tag.empty() && tag.back() == '/';
                const auto name = tag.substr(0, tag.find_first_of(" /\n"));
                if (stack.empty() && root_seen)
                    return false;
                root_seen = true;
                if (!self_closing)
                    stack.push_back(name);
            }
            pos = gt + 1;
        }
        return root_seen && stack.empty();
    }

    std::string sweep_csv()
    {
        auto spec = fig3_preset();
        spec.steps = 6;
        std::ostringstream os;
        csv::write_sweep(os, spec.variable, run_sweep(spec));
        return os.str();
    }

    double polyline_last_y(const std::string &svg, std::size_t which)
    {
        const std::regex re("<polyline[^>]*points=\"([^\"]*)\"");
        auto it = std::sregex_iterator(svg.begin(), svg.end(), re);
        std::advance(it, which);
        const std::string pts = (*it)[1];
        const auto last = pts.substr(pts.rfind(' ') + 1);
        return std::stod(last.substr(last.find(',') + 1));
    }
}

TEST_CASE("format_number - significant digits and round trip")
{
    CHECK(csv::format_number(0.0) == "0");
    CHECK(csv::format_number(35.0) == "35");
    CHECK(csv::format_number(0.0628) == "0.0628");
    CHECK(csv::format_number(1.0 / 3.0) == "0.333333333");
    CHECK(csv::format_number(-2.5e-12) == "-2.5e-12");
    CHECK(csv::parse_number("48.0086") == 48.0086);
    CHECK(csv::parse_number("+1e3") == 1000.0);
    CHECK_FALSE(csv::parse_number("").has_value());
    CHECK_FALSE(csv::parse_number("12abc").has_value());
    CHECK_FALSE(csv::parse_number("abc").has_value());
}

TEST_CASE("write_sweep - header and columns")
{
    const auto text = sweep_csv();
    std::istringstream is(text);
    const auto table = csv::read(is);
    CHECK(table.header.size() == 17);
    std::string first_line = text.substr(0, text.find('\n'));
    CHECK(first_line == csv::sweep_header);
    REQUIRE(table.rows.size() == 6);
    const auto &row = table.rows.back();
    CHECK(row[*table.column("index")] == "5");
    CHECK(row[*table.column("var_name")] == "module_count");
    CHECK(row[*table.column("N")] == "625");
    CHECK(row[*table.column("M")] == "16");
    CHECK(row[*table.column("txsnr_db")] == "50");
    CHECK(row[*table.column("snr_asymptotic_db")].empty());
    CHECK(row[*table.column("snr_integral_db")].empty());
    CHECK(row[*table.column("flags")].find("collocated_counterpart") != std::string::npos);
    const double exact = *csv::parse_number(row[*table.column("snr_exact_db")]);
    const double closed = *csv::parse_number(row[*table.column("snr_closed_db")]);
    CHECK(std::abs(exact - closed) < 0.05);
}

TEST_CASE("csv::read - malformed input")
{
    std::istringstream empty("");
    CHECK_THROWS_AS(csv::read(empty), parse_error);
    std::istringstream ragged("a,b\n1,2\n3\n");
    CHECK_THROWS_AS(csv::read(ragged), parse_error);
    std::istringstream crlf("a,b\r\n1,2\r\n\r\n");
    const auto t = csv::read(crlf);
    CHECK(t.rows.size() == 1);
    CHECK(t.rows[0][1] == "2");
}

TEST_CASE("svg::escape")
{
    CHECK(svg::escape("a<b & \"c\">") == "a&lt;b &amp; &quot;c&quot;&gt;");
}

TEST_CASE("svg - sweep chart is well formed and ordered")
{
    std::istringstream is(sweep_csv());
    const auto table = csv::read(is);
    const auto chart = svg::chart_from_table(table, "N", {"snr_exact_db", "snr_upw_db"}, false);
    const auto doc = svg::render(chart);
    CHECK(well_formed(doc));
    CHECK(doc.find("<svg") != std::string::npos);
    CHECK(std::count(doc.begin(), doc.end(), '\n') > 10);
    // UPW ends above the exact curve, which is a smaller pixel y
    CHECK(polyline_last_y(doc, 1) < polyline_last_y(doc, 0));

    const auto log_doc = svg::render(svg::chart_from_table(table, "N", {"snr_exact_db"}, true));
    CHECK(well_formed(log_doc));
    CHECK(log_doc.find("(log)") != std::string::npos);
}

TEST_CASE("svg - checker rejects broken documents")
{
    CHECK_FALSE(well_formed("<svg><g></svg>"));
    CHECK_FALSE(well_formed("<svg a=\"1></svg>"));
    CHECK(well_formed("<svg><g/><text>a &amp; b</text></svg>"));
}

TEST_CASE("svg - chart_from_table errors")
{
    std::istringstream one("x,y\n1,2\n");
    const auto single = csv::read(one);
    CHECK_THROWS_AS(svg::chart_from_table(single, "x", {"y"}, false), parse_error);

    std::istringstream two("x,y,z\n1,2,\n2,3,\n3,4,5\n");
    const auto t = csv::read(two);
    CHECK_THROWS_AS(svg::chart_from_table(t, "w", {"y"}, false), invalid_argument);
    CHECK_THROWS_AS(svg::chart_from_table(t, "x", {"q"}, false), invalid_argument);
    CHECK_THROWS_AS(svg::chart_from_table(t, "x", {"z"}, false), invalid_argument);
    CHECK_NOTHROW(svg::chart_from_table(t, "x", {"y"}, false));

    std::istringstream bad("x,y\n1,2\n2,oops\n");
    CHECK_THROWS_AS(svg::chart_from_table(csv::read(bad), "x", {"y"}, false), parse_error);

    std::istringstream neg("x,y\n-1,2\n2,3\n");
    const auto chart = svg::chart_from_table(csv::read(neg), "x", {"y"}, true);
    CHECK_THROWS_AS(svg::render(chart), invalid_argument);
}
