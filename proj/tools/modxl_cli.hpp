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

// Command-line front end: eval | sweep | plot | verify.
//
// All options live on the top-level parser and subcommands fall through to it, so a
// flat `key = value` config file (--config) can set any of them; command-line flags
// override file values.

#ifndef MODXL_TOOLS_CLI_HPP
#define MODXL_TOOLS_CLI_HPP

#include <modxl/modxl.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace modxl::cli
{
    enum exit_code : int
    {
        ok = 0,
        verification_failed = 1,
        usage = 2,
        degenerate = 3,
        io = 4,
        malformed = 5
    };

    class usage_error : public error
    {
    public:
        using error::error;
    };

    class io_error : public error
    {
    public:
        using error::error;
    };

    struct Config
    {
        // scenario
        std::size_t elements_per_module = reference::elements_per_module;
        std::size_t modules = reference::module_count;
        std::optional<double> spacing_m, spacing_wl;
        std::optional<double> separation_m, separation_d;
        std::optional<double> frequency_ghz, wavelength_m;
        double range_m = reference::range;
        double theta_deg = 0.0;
        double txsnr_db = reference::effective_power_db;
        std::optional<double> transmit_snr_db, reference_gain_db;
        std::optional<std::vector<std::string>> models; // items may themselves be comma lists
        double quad_tol = 1e-8;
        std::size_t mc_samples = 0;

        // sweep
        std::optional<std::string> preset, var, scale;
        std::optional<double> start, stop;
        std::optional<std::size_t> steps;

        // plot
        std::string input;
        std::string x_column = "var_value";
        std::vector<std::string> y_columns;
        bool log_x = false;

        // global
        std::uint64_t seed = 1;
        std::string out;
        unsigned threads = 1;
    };

    inline constexpr double speed_of_light = 299792458.0;

    inline std::vector<std::string> split_list(const std::string &s)
    {
        std::vector<std::string> out;
        std::string item;
        std::istringstream is(s);
        while (std::getline(is, item, ','))
        {
            const auto b = item.find_first_not_of(" \t");
            const auto e = item.find_last_not_of(" \t");
            if (b != std::string::npos)
                out.push_back(item.substr(b, e - b + 1));
        }
        return out;
    }

    inline std::vector<std::string> split_lists(const std::vector<std::string> &items)
    {
        std::vector<std::string> out;
        for (const auto &item : items)
            for (auto &v : split_list(item))
                out.push_back(std::move(v));
        return out;
    }

    inline std::vector<SnrModel> parse_models(const std::vector<std::string> &list)
    {
        const auto names = split_lists(list);
        if (names.empty())
            throw usage_error("--models: at least one model is required");
        std::vector<SnrModel> out;
        for (const auto &n : names)
        {
            if (n == "all")
            {
                out.assign(all_models.begin(), all_models.end());
                return out;
            }
            const auto m = parse_model(n);
            if (!m)
                throw usage_error("--models: unknown model '" + n + "' (expected exact, closed, collocated, "
                                  "asymptotic, upw, integral or all)");
            if (std::find(out.begin(), out.end(), *m) == out.end())
                out.push_back(*m);
        }
        return out;
    }

    inline double wavelength_of(const Config &c)
    {
        if (c.frequency_ghz)
        {
            if (!(*c.frequency_ghz > 0.0))
                throw usage_error("--frequency-ghz must be > 0");
            return speed_of_light / (*c.frequency_ghz * 1e9);
        }
        return c.wavelength_m.value_or(reference::wavelength);
    }

    inline Scenario scenario_of(const Config &c)
    {
        if (!(c.theta_deg >= -90.0 && c.theta_deg <= 90.0))
            throw usage_error("--theta-deg must lie in [-90, 90]");
        const double lambda = wavelength_of(c);
        const double d = c.spacing_wl ? *c.spacing_wl * lambda : c.spacing_m.value_or(reference::element_spacing);
        const double D = c.separation_m ? *c.separation_m : c.separation_d.value_or(reference::separation_ratio) * d;

        if (c.transmit_snr_db.has_value() != c.reference_gain_db.has_value())
            throw usage_error("--transmit-snr-db and --reference-gain-db must be given together");
        try
        {
            auto geom = ArrayGeometry::from_separation(c.elements_per_module, c.modules, d, D);
            auto user = UserLocation::from_degrees(c.range_m, c.theta_deg);
            auto link = c.transmit_snr_db ? LinkBudget(lambda, db_to_linear(*c.reference_gain_db),
                                                       db_to_linear(*c.transmit_snr_db))
                                          : LinkBudget::from_effective_power_db(lambda, c.txsnr_db);
            return {geom, user, link};
        }
        catch (const invalid_argument &e)
        {
            throw usage_error(e.what());
        }
    }

    inline void emit(const Config &c, const std::string &text, std::ostream &out)
    {
        if (c.out.empty() || c.out == "-")
        {
            out << text;
            return;
        }
        std::ofstream f(c.out, std::ios::binary | std::ios::trunc);
        if (!f)
            throw io_error("cannot open output file '" + c.out + "'");
        f << text;
        f.flush();
        if (!f)
            throw io_error("failed writing output file '" + c.out + "'");
    }

    inline nlohmann::ordered_json flags_json(FlagSet f)
    {
        auto arr = nlohmann::ordered_json::array();
        for (auto n : f.names())
            arr.push_back(std::string(n));
        return arr;
    }

    inline int cmd_eval(const Config &c, std::ostream &out)
    {
        const auto sc = scenario_of(c);
        const auto models = parse_models(c.models.value_or(std::vector<std::string>{"all"}));
        SnrOptions opt;
        opt.threads = c.threads;
        opt.quad_rel_tol = c.quad_tol;

        const auto &g = sc.geom;
        nlohmann::ordered_json j;
        j["scenario"] = {{"M", g.elements_per_module()},
                         {"N", g.module_count()},
                         {"d_m", g.element_spacing()},
                         {"D_m", g.module_separation()},
                         {"L", g.separation_ratio()},
                         {"r_m", sc.user.range()},
                         {"theta_rad", sc.user.angle()},
                         {"theta_deg", c.theta_deg},
                         {"wavelength_m", sc.link.wavelength()},
                         {"txsnr_db", linear_to_db(sc.link.effective_power())}};
        j["derived"] = {{"K", g.module_pitch()},
                        {"S_m", g.span()},
                        {"S1_m", g.augmented_span()},
                        {"epsilon", g.element_spacing() / sc.user.range()}};

        FlagSet all;
        nlohmann::ordered_json model_flags = nlohmann::ordered_json::object();
        nlohmann::ordered_json errors = nlohmann::ordered_json::object();
        for (auto m : models)
        {
            const std::string key = "snr_" + std::string(model_name(m));
            try
            {
                const auto rep = evaluate(m, sc.geom, sc.user, sc.link, opt, true);
                j[key + "_linear"] = rep.value_linear;
                j[key + "_db"] = rep.value_db;
                model_flags[std::string(model_name(m))] = flags_json(rep.flags);
                all |= rep.flags;
            }
            catch (const unbounded_limit_error &e)
            {
                // only the asymptotic model; other models at the same point remain meaningful
                j[key + "_linear"] = nullptr;
                j[key + "_db"] = nullptr;
                errors[std::string(model_name(m))] = e.what();
                all.set(ValidityFlag::theta_near_endfire);
            }
        }
        if (c.mc_samples > 0)
        {
            const auto a = array_response_nusw(sc.geom, sc.user, sc.link);
            UplinkSimulation sim;
            sim.sample_count = c.mc_samples;
            sim.noise_power = 1.0;
            sim.transmit_power = sc.link.transmit_snr();
            sim.seed = c.seed;
            const auto est = simulate_uplink(a, mrc_weights(a), sim);
            j["snr_montecarlo_linear"] = est.snr;
            j["snr_montecarlo_db"] = linear_to_db(est.snr);
            j["montecarlo"] = {{"samples", c.mc_samples}, {"seed", c.seed}};
        }
        j["flags"] = flags_json(all);
        j["model_flags"] = model_flags;
        if (!errors.empty())
            j["errors"] = errors;
        emit(c, j.dump(2) + "\n", out);
        return ok;
    }

    inline SweepSpec sweep_spec_of(const Config &c)
    {
        SweepSpec spec(scenario_of(c));
        if (c.preset)
        {
            SweepSpec p = *c.preset == "fig3"   ? fig3_preset()
                          : *c.preset == "fig4" ? fig4_preset(c.theta_deg)
                                                : throw usage_error("--preset: expected fig3 or fig4");
            spec.variable = p.variable;
            spec.start = p.start;
            spec.stop = p.stop;
            spec.steps = p.steps;
            spec.models = p.models;
        }
        else
        {
            if (!c.var)
                throw usage_error("sweep: --var is required without --preset");
            spec.steps = 40;
            spec.models = {SnrModel::exact_sum, SnrModel::closed_form, SnrModel::upw};
        }
        if (c.var)
        {
            const auto v = parse_variable(*c.var);
            if (!v)
                throw usage_error("--var: expected module_count, separation, theta, range or element_spacing");
            spec.variable = *v;
        }
        // theta bounds are given in degrees on the command line
        const double unit = spec.variable == SweepVariable::theta ? std::numbers::pi / 180.0 : 1.0;
        if (c.start)
            spec.start = *c.start * unit;
        if (c.stop)
            spec.stop = *c.stop * unit;
        if (!c.preset && (!c.start || !c.stop))
            throw usage_error("sweep: --start and --stop are required without --preset");
        if (c.steps)
            spec.steps = *c.steps;
        if (c.scale)
        {
            if (*c.scale == "linear")
                spec.scale = SweepScale::linear;
            else if (*c.scale == "log")
                spec.scale = SweepScale::logarithmic;
            else
                throw usage_error("--scale: expected linear or log");
        }
        if (c.models)
            spec.models = parse_models(*c.models);
        spec.options.quad_rel_tol = c.quad_tol;
        try
        {
            spec.validate();
        }
        catch (const invalid_argument &e)
        {
            throw usage_error(e.what());
        }
        return spec;
    }

    inline int cmd_sweep(const Config &c, std::ostream &out)
    {
        const auto spec = sweep_spec_of(c);
        std::vector<SweepRecord> records;
        try
        {
            records = run_sweep(spec, c.threads);
        }
        catch (const sweep_error &e)
        {
            std::rethrow_exception(e.cause());
        }
        std::ostringstream os;
        csv::write_sweep(os, spec.variable, records);
        emit(c, os.str(), out);
        return ok;
    }

    inline int cmd_plot(const Config &c, std::ostream &out)
    {
        if (c.input.empty())
            throw usage_error("plot: --in <csv> is required");
        const auto ys = split_lists(c.y_columns);
        if (ys.empty())
            throw usage_error("plot: --y <col[,col...]> is required");
        std::ifstream f(c.input, std::ios::binary);
        if (!f)
            throw io_error("cannot open input file '" + c.input + "'");
        const auto table = csv::read(f);
        svg::Chart chart;
        try
        {
            chart = svg::chart_from_table(table, c.x_column, ys, c.log_x);
        }
        catch (const invalid_argument &e)
        {
            throw usage_error(e.what());
        }
        emit(c, svg::render(chart), out);
        return ok;
    }

    inline int cmd_verify(const Config &c, std::ostream &out)
    {
        verify::Options opt;
        opt.threads = std::max(2u, c.threads);
        opt.seed = c.seed;
        const auto results = verify::run(opt);
        std::ostringstream os;
        bool all_pass = true;
        for (const auto &r : results)
        {
            os << (r.passed ? "PASS " : "FAIL ") << r.name << "  tolerance=" << csv::format_number(r.tolerance)
               << "  observed=" << csv::format_number(r.observed) << '\n';
            all_pass = all_pass && r.passed;
        }
        os << results.size() << " checks, " << (all_pass ? "all passed" : "FAILURES") << '\n';
        emit(c, os.str(), out);
        return all_pass ? ok : verification_failed;
    }

    inline int run(int argc, const char *const *argv, std::ostream &out = std::cout, std::ostream &err = std::cerr)
    {
        Config c;
        CLI::App app{"Near-field SNR modelling for modular extremely large-scale linear arrays", "modxl"};
        app.fallthrough();
        app.require_subcommand(1);
        app.set_config("--config", "", "Flat key = value configuration file (flags override it)");

        app.add_option("--seed", c.seed, "RNG seed (Monte-Carlo, verify)");
        app.add_option("--out", c.out, "Output path (default: stdout)");
        app.add_option("--threads", c.threads, "Worker threads; results do not depend on this")
            ->check(CLI::Range(1u, 256u));

        const std::string sg = "Scenario";
        app.add_option("--elements-per-module", c.elements_per_module, "Elements per module M")->group(sg);
        app.add_option("--modules", c.modules, "Module count N")->group(sg);
        auto *sp = app.add_option("--spacing", c.spacing_m, "Element spacing d [m] (default 0.0628)")->group(sg);
        app.add_option("--spacing-wl", c.spacing_wl, "Element spacing in wavelengths")->group(sg)->excludes(sp);
        auto *sep = app.add_option("--separation", c.separation_m, "Module separation D [m]")->group(sg);
        app.add_option("--separation-d", c.separation_d, "Module separation in multiples of d (default 20)")
            ->group(sg)
            ->excludes(sep);
        auto *fr = app.add_option("--frequency-ghz", c.frequency_ghz, "Carrier frequency [GHz]")->group(sg);
        app.add_option("--wavelength", c.wavelength_m, "Wavelength [m] (default 0.1256)")->group(sg)->excludes(fr);
        app.add_option("--range", c.range_m, "User distance r from the array center [m]")->group(sg);
        app.add_option("--theta-deg", c.theta_deg, "User direction theta [deg]")->group(sg);
        app.add_option("--txsnr-db", c.txsnr_db, "Effective transmit SNR P_bar*beta0 [dB]")->group(sg);
        app.add_option("--transmit-snr-db", c.transmit_snr_db, "Transmit SNR P_bar [dB] (with --reference-gain-db)")
            ->group(sg);
        app.add_option("--reference-gain-db", c.reference_gain_db, "Channel power beta0 at 1 m [dB]")->group(sg);
        auto *models_opt = app.add_option("--models", c.models, "Comma list: exact,closed,collocated,asymptotic,upw,integral|all")
            ->group(sg);
        app.add_option("--quad-tol", c.quad_tol, "Relative tolerance of the quadrature model")->group(sg);
        app.add_option("--mc-samples", c.mc_samples, "eval: also run a Monte-Carlo uplink with this many samples")
            ->group(sg);

        const std::string swg = "Sweep";
        app.add_option("--preset", c.preset, "fig3 | fig4")->group(swg);
        app.add_option("--var", c.var, "module_count|separation|theta|range|element_spacing")->group(swg);
        app.add_option("--start", c.start, "First value (theta in degrees)")->group(swg);
        app.add_option("--stop", c.stop, "Last value (theta in degrees)")->group(swg);
        app.add_option("--steps", c.steps, "Number of points (>= 2)")->group(swg);
        app.add_option("--scale", c.scale, "linear | log")->group(swg);

        const std::string pg = "Plot";
        app.add_option("--in", c.input, "Input sweep CSV")->group(pg);
        app.add_option("--x", c.x_column, "x column (default var_value)")->group(pg);
        app.add_option("--y", c.y_columns, "Comma list of y columns")->group(pg);
        app.add_flag("--log-x", c.log_x, "Logarithmic x axis")->group(pg);

        auto *eval = app.add_subcommand("eval", "Evaluate SNR models at one point (JSON)");
        auto *sweep = app.add_subcommand("sweep", "Run a parameter sweep (CSV)");
        auto *plot = app.add_subcommand("plot", "Render sweep CSV columns as an SVG line chart");
        auto *verify = app.add_subcommand("verify", "Run the built-in oracle checks");

        try
        {
            app.parse(argc, argv);
        }
        catch (const CLI::CallForHelp &)
        {
            out << app.help();
            return ok;
        }
        catch (const CLI::CallForAllHelp &)
        {
            out << app.help("", CLI::AppFormatMode::All);
            return ok;
        }
        catch (const CLI::ParseError &e)
        {
            err << "modxl: " << e.what() << '\n';
            return usage;
        }

        // an explicitly empty list ("--models ''") is an error, not the default
        if (models_opt->count() > 0 && !c.models)
            c.models.emplace();

        try
        {
            if (eval->parsed())
                return cmd_eval(c, out);
            if (sweep->parsed())
                return cmd_sweep(c, out);
            if (plot->parsed())
                return cmd_plot(c, out);
            if (verify->parsed())
                return cmd_verify(c, out);
            return usage;
        }
        catch (const usage_error &e)
        {
            err << "modxl: " << e.what() << '\n';
            return usage;
        }
        catch (const invalid_argument &e)
        {
            err << "modxl: " << e.what() << '\n';
            return usage;
        }
        catch (const model_mismatch_error &e)
        {
            err << "modxl: " << e.what() << '\n';
            return usage;
        }
        catch (const degenerate_geometry_error &e)
        {
            err << "modxl: degenerate geometry: " << e.what() << '\n';
            return degenerate;
        }
        catch (const unbounded_limit_error &e)
        {
            err << "modxl: degenerate geometry: " << e.what() << '\n';
            return degenerate;
        }
        catch (const accuracy_error &e)
        {
            err << "modxl: " << e.what() << " (estimate " << csv::format_number(e.estimate()) << ")\n";
            return degenerate;
        }
        catch (const io_error &e)
        {
            err << "modxl: " << e.what() << '\n';
            return io;
        }
        catch (const parse_error &e)
        {
            err << "modxl: malformed input: " << e.what() << '\n';
            return malformed;
        }
        catch (const degenerate_input_error &e)
        {
            err << "modxl: degenerate input: " << e.what() << '\n';
            return degenerate;
        }
        catch (const error &e)
        {
            err << "modxl: " << e.what() << '\n';
            return usage;
        }
    }
}

#endif
