// tmsf_cli.cpp: command-line front end: point, sweep, bell, validate, overlap
//
// Exit codes: 0 success (non-convergence is reported in-band), 2 usage or
// parameter error, 3 numerical failure.

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json_report.hpp"
#include "tmsf/tmsf.hpp"

using namespace tmsf;
using cli::json;

namespace {

struct Common {
    std::string format{"csv"};
    std::string out;
    std::uint64_t seed{0};
    unsigned jobs{1};
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", c.out, "Write to PATH instead of stdout (atomic replace)");
    sub->add_option("--seed", c.seed, "Master RNG seed");
    sub->add_option("--jobs", c.jobs, "Worker threads (0 = all cores)");
}

struct ParamOptions {
    std::string model{"tmsv"};
    std::string family;
    std::vector<std::pair<std::string, double>> values;

    sweep::ParamSet to_params() const {
        sweep::ParamSet ps;
        ps.model = sweep::parse_model(model);
        if (!family.empty()) ps.family = parse_family(family);
        for (const auto& [k, v] : values) ps.set(k, v);
        return ps;
    }
};

void add_params(CLI::App* sub, ParamOptions& p) {
    sub->add_option("--model", p.model, "State model")->check(CLI::IsMember({"tmsv", "thermal"}));
    sub->add_option("--family", p.family, "Filter family for omega/tau parameters")
        ->check(CLI::IsMember({"step", "exponential", "exp"}));
    for (const auto& name : sweep::parameter_names())
        sub->add_option_function<double>("--" + name, [&p, name](double v) { p.values.emplace_back(name, v); },
                                         "Parameter " + name);
}

sweep::OutputSet parse_outputs(const std::string& list) {
    sweep::OutputSet s;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) s.insert(sweep::parse_output(item));
    detail::require(!s.empty(), "no outputs selected");
    return s;
}

sweep::Axis parse_axis(const std::string& spec) {
    // name:lo:hi:n
    std::vector<std::string> f;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) f.push_back(item);
    detail::require(f.size() == 4, "axis must be given as name:lo:hi:n, got '" + spec + "'");
    sweep::Axis a;
    a.name = f[0];
    a.lo = report::parse_number(f[1]);
    a.hi = report::parse_number(f[2]);
    const double n = report::parse_number(f[3]);
    detail::require(n >= 1 && n == std::floor(n) && n <= 1e7, "axis point count must be a positive integer");
    a.n = static_cast<int>(n);
    a.validate();
    return a;
}

void emit(const Common& c, const std::string& text) {
    if (c.out.empty()) std::cout << text;
    else report::write_atomically(c.out, text);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json warnings_json(const std::vector<std::string>& w) {
    json a = json::array();
    for (const auto& s : w) a.push_back(s);
    return a;
}

json params_json(const sweep::ParamSet& ps) {
    json p = json::object();
    p["model"] = sweep::to_string(ps.model);
    if (ps.family) p["family"] = to_string(*ps.family);
    for (const auto& [k, v] : ps.values) p[k] = v;
    return p;
}

json axis_json(const sweep::Axis& a) { return {{"name", a.name}, {"lo", a.lo}, {"hi", a.hi}, {"n", a.n}}; }

BellConfig bell_config(const std::string& settings, int restarts, int budget, double tol, const Common& c) {
    BellConfig b;
    detail::require(settings == "origin" || settings == "full", "settings must be origin or full");
    b.family = settings == "full" ? SettingsFamily::Full : SettingsFamily::OriginAnchored;
    b.restarts = restarts;
    b.budget = budget;
    b.tol = tol;
    b.seed = c.seed;
    b.jobs = c.jobs;
    return b;
}

[[noreturn]] void fail(int code, const std::string& kind, const std::string& message, double achieved = -1) {
    json e = {{"error", kind}, {"message", message}};
    if (achieved >= 0) e["achieved_error"] = achieved;
    std::cerr << e.dump() << std::endl;
    std::exit(code);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"tmsf: entanglement, squeezing, purity and Bell analysis of filtered two-mode Gaussian states"};
    app.require_subcommand(1);

    // point
    Common point_c;
    ParamOptions point_p;
    std::string point_outputs = "e_n,s_q_opt,purity,zeta,weight_ratio,critical_points,blocks";
    std::string point_settings = "origin";
    auto* point = app.add_subcommand("point", "Evaluate outputs at one parameter point");
    add_common(point, point_c);
    add_params(point, point_p);
    point->add_option("--outputs", point_outputs, "Comma-separated outputs");
    point->add_option("--settings", point_settings, "Bell settings family: origin or full");

    // sweep
    Common sweep_c;
    ParamOptions sweep_p;
    std::string recipe, axis1, axis2, sweep_outputs, svg_path, plot_column, sweep_settings = "origin";
    bool list_recipes = false;
    auto* sw = app.add_subcommand("sweep", "Evaluate outputs over a 1-D or 2-D parameter grid");
    add_common(sw, sweep_c);
    add_params(sw, sweep_p);
    sw->add_option("--recipe", recipe, "Named preset (see --list-recipes)");
    sw->add_flag("--list-recipes", list_recipes, "List presets and exit");
    sw->add_option("--axis1", axis1, "First axis name:lo:hi:n");
    sw->add_option("--axis2", axis2, "Second axis name:lo:hi:n");
    sw->add_option("--outputs", sweep_outputs, "Comma-separated outputs");
    sw->add_option("--svg", svg_path, "Also render PATH as SVG");
    sw->add_option("--plot", plot_column, "Column shown in the SVG");
    sw->add_option("--settings", sweep_settings, "Bell settings family: origin or full");

    // bell
    Common bell_c;
    ParamOptions bell_p;
    int restarts = 64, budget = 2000;
    double bell_tol = 1e-10;
    std::string bell_settings = "origin";
    auto* bell = app.add_subcommand("bell", "Maximize the CHSH Bell value over displacement settings");
    add_common(bell, bell_c);
    add_params(bell, bell_p);
    bell->add_option("--restarts", restarts, "Multistart count");
    bell->add_option("--budget", budget, "Evaluations per restart");
    bell->add_option("--tol", bell_tol, "Simplex convergence tolerance");
    bell->add_option("--settings", bell_settings, "Settings family: origin (one setting per party at the origin) or full");

    // validate
    Common val_c;
    ParamOptions val_p;
    int canonical = 0;
    long n_real = 200'000;
    double dt = 0.0, horizon = 0.0;
    int bootstrap = 200;
    long pilot = 4000;
    auto* val = app.add_subcommand("validate", "Compare Monte Carlo covariance estimates with closed forms");
    add_common(val, val_c);
    add_params(val, val_p);
    val->add_option("--config", canonical, "Reference configuration 1, 2 or 3 (overrides model parameters)");
    val->add_option("--n", n_real, "Realizations");
    val->add_option("--dt", dt, "Time step (default min tau / 50)");
    val->add_option("--horizon", horizon, "Simulated time (default 3 max tau, 10 tau for exponential)");
    val->add_option("--bootstrap", bootstrap, "Bootstrap resamples");
    val->add_option("--pilot", pilot, "Realizations in the half-step bias check (0 disables)");

    // overlap
    Common ov_c;
    std::string fam_i = "step", fam_s;
    double om_i = 0.0, om_s = 0.0, tau_i = 1.0, tau_s = 1.0, ov_tol = 1e-10;
    auto* ov = app.add_subcommand("overlap", "Closed-form and quadrature overlap factors of two filters");
    add_common(ov, ov_c);
    ov->add_option("--family-i", fam_i, "Idler filter family");
    ov->add_option("--family-s", fam_s, "Signal filter family (default: idler family)");
    ov->add_option("--omega-i", om_i, "Idler center frequency");
    ov->add_option("--omega-s", om_s, "Signal center frequency");
    ov->add_option("--tau-i", tau_i, "Idler time constant");
    ov->add_option("--tau-s", tau_s, "Signal time constant");
    ov->add_option("--tol", ov_tol, "Quadrature tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        fail(2, "usage", e.what());
    }

    try {
        if (point->parsed()) {
            const auto ps = point_p.to_params();
            const auto outputs = parse_outputs(point_outputs);
            auto bc = bell_config(point_settings, 64, 2000, 1e-10, point_c);
            const auto rec = sweep::evaluate(sweep::resolve(ps), outputs, sweep::bell_for_point(bc, 0));
            if (point_c.format == "csv") emit(point_c, report::to_csv(rec.header(), {rec}));
            else
                emit(point_c, dump({{"params", params_json(ps)},
                                    {"results", cli::to_json(rec)},
                                    {"diagnostics", {{"warnings", warnings_json(rec.warnings)}}}}));
        } else if (sw->parsed()) {
            if (list_recipes) {
                for (const auto& r : recipes::all()) std::cout << r.name << "\t" << r.description << "\n";
                return 0;
            }
            sweep::SweepConfig cfg;
            std::string column = plot_column;
            if (!recipe.empty()) {
                auto r = recipes::find(recipe);
                cfg = r.config;
                if (column.empty()) column = r.plot_column;
                // command-line parameters refine the preset
                const auto extra = sweep_p.to_params();
                if (!sweep_p.family.empty()) cfg.base.family = extra.family;
                for (const auto& [k, v] : extra.values) cfg.base.set(k, v);
                if (sweep_p.model != "tmsv") cfg.base.model = extra.model;
            } else {
                detail::require(!axis1.empty(), "sweep needs --axis1 or --recipe");
                cfg.base = sweep_p.to_params();
            }
            if (!axis1.empty()) cfg.axis1 = parse_axis(axis1);
            if (!axis2.empty()) cfg.axis2 = parse_axis(axis2);
            if (!sweep_outputs.empty()) cfg.outputs = parse_outputs(sweep_outputs);
            for (const auto* a : {&cfg.axis1, cfg.axis2 ? &*cfg.axis2 : nullptr})
                if (a) detail::require(!cfg.base.has(a->name), "parameter '" + a->name + "' is both fixed and swept");
            cfg.bell = bell_config(sweep_settings, 64, 2000, 1e-10, sweep_c);
            cfg.jobs = sweep_c.jobs;

            const auto res = sweep::run_sweep(cfg);
            if (sweep_c.format == "csv") {
                emit(sweep_c, report::to_csv(res.header, res.rows));
            } else {
                json rows = json::array();
                for (const auto& r : res.rows) rows.push_back(cli::to_json(r));
                json params = {{"base", params_json(cfg.base)}, {"axis1", axis_json(cfg.axis1)}};
                params["axis2"] = cfg.axis2 ? axis_json(*cfg.axis2) : json(nullptr);
                json outs = json::array();
                for (const auto& [o, n] : sweep::output_names())
                    if (cfg.outputs.count(o)) outs.push_back(n);
                params["outputs"] = outs;
                params["seed"] = sweep_c.seed;
                if (!recipe.empty()) params["recipe"] = recipe;
                emit(sweep_c, dump({{"params", params},
                                    {"results", rows},
                                    {"diagnostics", {{"warnings", warnings_json(res.warnings)},
                                                     {"points", res.rows.size()}}}}));
            }
            if (!svg_path.empty()) {
                if (column.empty())
                    for (const auto& [o, n] : sweep::output_names())
                        if (cfg.outputs.count(o) && o != sweep::Output::CriticalPoints && o != sweep::Output::Blocks) {
                            column = n;
                            break;
                        }
                const std::string title = (recipe.empty() ? std::string("sweep") : recipe) + ": " + column;
                report::write_atomically(svg_path, svg::render_sweep(res, cfg.axis1.name,
                                                                     cfg.axis2 ? cfg.axis2->name : "", column, title));
            }
        } else if (bell->parsed()) {
            const auto ps = bell_p.to_params();
            const auto p = sweep::resolve(ps);
            auto rec = sweep::evaluate(p, {sweep::Output::EN});
            const auto v = build_covariance(sweep::blocks_of(p));
            const auto bc = bell_config(bell_settings, restarts, budget, bell_tol, bell_c);
            const auto res = bell_max(v, sweep::bell_for_point(bc, 0));
            const auto c = res.settings.coordinates();
            static const char* names[8] = {"q_i0", "p_i0", "q_i1", "p_i1", "q_s0", "p_s0", "q_s1", "p_s1"};
            rec.add("b_max", res.b_max);
            rec.add("converged", res.converged);
            rec.add("restarts", static_cast<double>(res.n_restarts_used));
            rec.add("evaluations", static_cast<double>(res.evaluations));
            rec.add("spread", res.spread);
            for (int k = 0; k < 8; ++k) rec.add(names[k], c[static_cast<std::size_t>(k)]);
            if (!res.converged) rec.warnings.push_back("bell maximization did not converge");
            if (bell_c.format == "csv") emit(bell_c, report::to_csv(rec.header(), {rec}));
            else {
                json params = params_json(ps);
                params["settings"] = bell_settings;
                params["restarts"] = restarts;
                params["budget"] = budget;
                params["tol"] = bell_tol;
                params["seed"] = bell_c.seed;
                emit(bell_c, dump({{"params", params},
                                   {"results", cli::to_json(rec)},
                                   {"diagnostics", {{"warnings", warnings_json(rec.warnings)}}}}));
            }
        } else if (val->parsed()) {
            fieldsim::SimConfig cfg;
            if (canonical != 0) {
                cfg = fieldsim::canonical_config(canonical, n_real, val_c.seed);
            } else {
                const auto ps = val_p.to_params();
                detail::require(ps.family.has_value(), "validate needs --config or a filter --family");
                const auto p = sweep::resolve(ps);
                if (p.model == sweep::ModelKind::Tmsv) cfg.model = TmsvParams{p.r, p.eta_i, p.eta_s, {}};
                else {
                    detail::require(p.eta_i == 1.0 && p.eta_s == 1.0, "thermal simulation assumes perfect detection");
                    cfg.model = ThermalParams{p.r, p.n_i, p.n_s, {}};
                }
                cfg.filter_i = p.filter_i;
                cfg.filter_s = p.filter_s;
                const double tmin = std::min(p.filter_i.tau, p.filter_s.tau);
                const double tmax = std::max(p.filter_i.tau, p.filter_s.tau);
                cfg.dt = tmin / 50.0;
                cfg.horizon = 3.0 * tmax;
                for (const auto& f : {p.filter_i, p.filter_s})
                    if (f.family == FilterFamily::Exponential) cfg.horizon = std::max(cfg.horizon, 10.0 * f.tau);
                cfg.n_realizations = n_real;
                cfg.seed = val_c.seed;
            }
            if (dt > 0.0) cfg.dt = dt;
            if (horizon > 0.0) cfg.horizon = horizon;
            cfg.jobs = val_c.jobs;
            cfg.bootstrap_resamples = bootstrap;
            cfg.pilot_realizations = pilot;
            const auto rep = fieldsim::validate(cfg);
            if (val_c.format == "csv") {
                std::string out = "element,analytic,estimate,std_error,z,pass\n";
                for (const auto& r : rep.rows)
                    out += r.element + "," + report::format_number(r.analytic) + "," +
                           report::format_number(r.estimate) + "," + report::format_number(r.std_error) + "," +
                           report::format_number(r.z) + "," + (r.pass ? "true" : "false") + "\n";
                emit(val_c, out);
                for (const auto& w : rep.empirical.warnings) std::cerr << "warning: " << w << "\n";
            } else {
                json rows = json::array();
                for (const auto& r : rep.rows)
                    rows.push_back({{"element", r.element}, {"analytic", r.analytic}, {"estimate", r.estimate},
                                    {"std_error", r.std_error}, {"z", cli::number(r.z)}, {"pass", r.pass}});
                json params = {{"dt", cfg.dt}, {"horizon", cfg.horizon}, {"n_realizations", cfg.n_realizations},
                               {"seed", cfg.seed}, {"k_f", rep.overlap.k_f}, {"l_f", rep.overlap.l_f}};
                if (canonical) params["config"] = canonical;
                const auto& bias = rep.empirical.discretization_bias;
                emit(val_c, dump({{"params", params},
                                  {"results", rows},
                                  {"diagnostics", {{"warnings", warnings_json(rep.empirical.warnings)},
                                                   {"all_pass", rep.all_pass()},
                                                   {"discretization_bias",
                                                    {bias.d_i, bias.d_s, bias.c11, bias.c12}}}}}));
            }
        } else if (ov->parsed()) {
            const FilterSpec fi{parse_family(fam_i), om_i, tau_i};
            const FilterSpec fs{parse_family(fam_s.empty() ? fam_i : fam_s), om_s, tau_s};
            const auto num = overlap_numeric(fi, fs, ov_tol);
            sweep::Record rec;
            std::optional<OverlapFactors> closed;
            if (fi.family == fs.family) closed = overlap_closed_form(fi, fs);
            else rec.warnings.push_back("mixed filter families: closed form unavailable");
            using V = sweep::Value;
            rec.add("k_f_closed", closed ? V(closed->k_f) : V());
            rec.add("l_f_closed", closed ? V(closed->l_f) : V());
            rec.add("k_f_numeric", num.k_f);
            rec.add("l_f_numeric", num.l_f);
            rec.add("abs_diff_k", closed ? V(std::abs(closed->k_f - num.k_f)) : V());
            rec.add("abs_diff_l", closed ? V(std::abs(closed->l_f - num.l_f)) : V());
            if (ov_c.format == "csv") emit(ov_c, report::to_csv(rec.header(), {rec}));
            else {
                json params = {{"family_i", to_string(fi.family)}, {"omega_i", om_i}, {"tau_i", tau_i},
                               {"family_s", to_string(fs.family)}, {"omega_s", om_s}, {"tau_s", tau_s},
                               {"tol", ov_tol}};
                emit(ov_c, dump({{"params", params},
                                 {"results", cli::to_json(rec)},
                                 {"diagnostics", {{"warnings", warnings_json(rec.warnings)}}}}));
            }
        }
    } catch (const InvalidArgument& e) {
        fail(2, "invalid_argument", e.what());
    } catch (const NumericalError& e) {
        fail(3, "numerical_error", e.what(), e.achieved_error());
    } catch (const std::exception& e) {
        fail(3, "internal_error", e.what());
    }
    return 0;
}
