// sweep.hpp: parameter points, output selection and 1-D / 2-D grid evaluation

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "tmsf/bell.hpp"
#include "tmsf/errors.hpp"
#include "tmsf/filters.hpp"
#include "tmsf/gaussian.hpp"
#include "tmsf/parallel.hpp"
#include "tmsf/rng.hpp"
#include "tmsf/thermal.hpp"
#include "tmsf/tmsv.hpp"

namespace tmsf::sweep {

enum class ModelKind { Tmsv, Thermal };

inline const char* to_string(ModelKind m) { return m == ModelKind::Tmsv ? "tmsv" : "thermal"; }

inline ModelKind parse_model(const std::string& s) {
    if (s == "tmsv") return ModelKind::Tmsv;
    if (s == "thermal") return ModelKind::Thermal;
    throw InvalidArgument("unknown model '" + s + "' (expected tmsv or thermal)");
}

// Closed set of numeric parameters accepted on the command line and as sweep axes.
inline const std::vector<std::string>& parameter_names() {
    static const std::vector<std::string> names = {"r",    "k_f",  "l_f",     "eta_i",   "eta_s", "n_i",
                                                   "n_s",  "omega_k", "omega_l", "tau_i", "tau_s"};
    return names;
}

inline bool is_filter_parameter(const std::string& n) {
    return n == "omega_k" || n == "omega_l" || n == "tau_i" || n == "tau_s";
}

inline void check_parameter_name(const std::string& n) {
    const auto& names = parameter_names();
    if (std::find(names.begin(), names.end(), n) == names.end())
        throw InvalidArgument("unknown parameter '" + n + "'");
}

// User-facing parameter tuple. Filter parameters imply a family; the overlap
// factors are then derived from the filters instead of being given directly.
struct ParamSet {
    ModelKind model{ModelKind::Tmsv};
    std::map<std::string, double> values;
    std::optional<FilterFamily> family;

    void set(const std::string& name, double v) {
        check_parameter_name(name);
        detail::require_finite(v, name.c_str());
        values[name] = v;
    }

    double get(const std::string& name, double fallback) const {
        const auto it = values.find(name);
        return it == values.end() ? fallback : it->second;
    }

    bool has(const std::string& name) const { return values.count(name) != 0; }
};

// Fully resolved parameter point.
struct Point {
    ModelKind model{ModelKind::Tmsv};
    double r{0.0}, eta_i{1.0}, eta_s{1.0}, n_i{0.0}, n_s{0.0};
    OverlapFactors overlap{};
    std::optional<FilterFamily> family;
    FilterSpec filter_i{}, filter_s{};
};

inline Point resolve(const ParamSet& ps) {
    Point p;
    p.model = ps.model;
    p.r = ps.get("r", 0.0);
    p.eta_i = ps.get("eta_i", 1.0);
    p.eta_s = ps.get("eta_s", 1.0);
    p.n_i = ps.get("n_i", 0.0);
    p.n_s = ps.get("n_s", 0.0);
    if (ps.model == ModelKind::Tmsv)
        detail::require(!ps.has("n_i") && !ps.has("n_s"), "n_i/n_s apply to the thermal model only");

    bool uses_filters = false;
    for (const auto& n : parameter_names())
        if (is_filter_parameter(n) && ps.has(n)) uses_filters = true;
    if (uses_filters && !ps.family)
        throw InvalidArgument("filter parameters need a filter family (--family step|exponential)");

    if (ps.family) {
        detail::require(!ps.has("k_f") && !ps.has("l_f"),
                        "k_f/l_f cannot be set together with a filter family; they follow from the filters");
        p.family = ps.family;
        p.filter_i = {*ps.family, ps.get("omega_k", 0.0), ps.get("tau_i", 1.0)};
        p.filter_s = {*ps.family, ps.get("omega_l", ps.get("omega_k", 0.0)), ps.get("tau_s", ps.get("tau_i", 1.0))};
        p.overlap = overlap_closed_form(p.filter_i, p.filter_s);
    } else {
        p.overlap = {ps.get("k_f", 1.0), ps.get("l_f", 0.0)};
    }
    return p;
}

enum class Output { EN, SqOpt, Purity, BellMax, Zeta, WeightRatio, CriticalPoints, Blocks };

inline const std::vector<std::pair<Output, std::string>>& output_names() {
    static const std::vector<std::pair<Output, std::string>> names = {
        {Output::EN, "e_n"},         {Output::SqOpt, "s_q_opt"},
        {Output::Purity, "purity"},  {Output::BellMax, "bell_max"},
        {Output::Zeta, "zeta"},      {Output::WeightRatio, "weight_ratio"},
        {Output::CriticalPoints, "critical_points"}, {Output::Blocks, "blocks"}};
    return names;
}

inline Output parse_output(const std::string& s) {
    for (const auto& [o, n] : output_names())
        if (n == s) return o;
    throw InvalidArgument("unknown output '" + s + "'");
}

using OutputSet = std::set<Output>;

inline OutputSet default_outputs() { return {Output::EN, Output::SqOpt, Output::Purity}; }

// One cell of a record: not applicable, number (+inf marks an unbounded
// amplitude), text, or flag.
using Value = std::variant<std::monostate, double, std::string, bool>;

struct Record {
    std::vector<std::pair<std::string, Value>> cells;
    std::vector<std::string> warnings;

    void add(std::string name, Value v) { cells.emplace_back(std::move(name), std::move(v)); }

    const Value* find(const std::string& name) const {
        for (const auto& [n, v] : cells)
            if (n == name) return &v;
        return nullptr;
    }

    std::vector<std::string> header() const {
        std::vector<std::string> h;
        for (const auto& c : cells) h.push_back(c.first);
        return h;
    }
};

inline Value amplitude_value(const std::optional<Amplitude>& a) {
    if (!a) return std::monostate{};
    return a->value_or_inf();
}

inline CovarianceBlocks blocks_of(const Point& p) {
    if (p.model == ModelKind::Tmsv) return tmsv::covariance({p.r, p.eta_i, p.eta_s, p.overlap});
    const thermal::Params tp{p.r, p.n_i, p.n_s, p.overlap};
    auto b = thermal::covariance(tp);
    if (p.eta_i != 1.0 || p.eta_s != 1.0)
        b = apply_loss(build_covariance(b), p.eta_i, p.eta_s).blocks();
    return b;
}

inline void add_param_cells(Record& rec, const Point& p) {
    rec.add("model", std::string(to_string(p.model)));
    rec.add("r", p.r);
    rec.add("k_f", p.overlap.k_f);
    rec.add("l_f", p.overlap.l_f);
    rec.add("eta_i", p.eta_i);
    rec.add("eta_s", p.eta_s);
    if (p.model == ModelKind::Thermal) {
        rec.add("n_i", p.n_i);
        rec.add("n_s", p.n_s);
    }
    if (p.family) {
        rec.add("family", std::string(tmsf::to_string(*p.family)));
        rec.add("omega_k", p.filter_i.omega);
        rec.add("omega_l", p.filter_s.omega);
        rec.add("tau_i", p.filter_i.tau);
        rec.add("tau_s", p.filter_s.tau);
    }
}

// Evaluates the requested outputs at one point. Output cells appear in a fixed
// order independent of the set's iteration order.
inline Record evaluate(const Point& p, const OutputSet& outputs, const BellConfig& bell = {}) {
    if (p.model == ModelKind::Tmsv) {
        tmsv::Params{p.r, p.eta_i, p.eta_s, p.overlap}.validate();
    } else {
        thermal::Params{p.r, p.n_i, p.n_s, p.overlap}.validate();
        detail::require(p.eta_i >= 0.0 && p.eta_i <= 1.0 && p.eta_s >= 0.0 && p.eta_s <= 1.0,
                        "efficiencies must lie in [0, 1]");
    }
    Record rec;
    add_param_cells(rec, p);

    const auto b = blocks_of(p);
    const auto v = build_covariance(b);
    const bool correlated = b.correlation_sq() > 0.0;
    auto want = [&](Output o) { return outputs.count(o) != 0; };

    if (want(Output::Blocks)) {
        rec.add("d_i", b.d_i);
        rec.add("d_s", b.d_s);
        rec.add("c11", b.c11);
        rec.add("c12", b.c12);
    }
    if (want(Output::EN)) rec.add("e_n", log_negativity(v).e_n);
    if (want(Output::SqOpt)) rec.add("s_q_opt", optimized_squeezing(b));
    if (want(Output::Purity)) rec.add("purity", purity(v));
    if (want(Output::Zeta)) rec.add("zeta", squeezing_angle(b));
    if (want(Output::WeightRatio))
        rec.add("weight_ratio", correlated ? Value(optimal_weight_ratio(b)) : Value(std::monostate{}));

    if (want(Output::CriticalPoints)) {
        const bool closed_form_ok = p.overlap.k_f > 0.0;
        if (p.model == ModelKind::Tmsv) {
            std::optional<tmsv::CriticalPoints> cp;
            if (closed_form_ok) cp = tmsv::critical_points({p.r, p.eta_i, p.eta_s, p.overlap});
            else rec.warnings.push_back("critical points need k_f > 0");
            rec.add("r_ucf_en", cp ? Value(cp->r_ucf_en.value_or_inf()) : Value());
            rec.add("r_max_en", cp ? Value(cp->r_max_en.value_or_inf()) : Value());
            rec.add("r_max_sq", cp ? Value(cp->r_max_sq.value_or_inf()) : Value());
            rec.add("r_ucf_sq", cp ? Value(cp->r_ucf_sq.value_or_inf()) : Value());
        } else {
            std::optional<thermal::CriticalPoints> cp;
            const bool lossless = p.eta_i == 1.0 && p.eta_s == 1.0;
            if (!lossless) rec.warnings.push_back("closed-form thresholds assume perfect detection for thermal states");
            else if (!closed_form_ok) rec.warnings.push_back("critical points need k_f > 0");
            else cp = thermal::critical_points({p.r, p.n_i, p.n_s, p.overlap});
            rec.add("r_lcf_en", cp ? amplitude_value(cp->r_lcf_en) : Value());
            rec.add("r_ucf_en", cp ? amplitude_value(cp->r_ucf_en) : Value());
            rec.add("r_max_en", cp ? amplitude_value(cp->r_max_en) : Value());
            rec.add("r_lcf_sq_equal", cp ? amplitude_value(cp->r_lcf_sq_equal) : Value());
            rec.add("r_ucf_sq_equal", cp ? amplitude_value(cp->r_ucf_sq_equal) : Value());
            rec.add("r_max_sq_equal", cp ? Value(cp->r_max_sq_equal.value_or_inf()) : Value());
        }
    }

    if (want(Output::BellMax)) {
        const auto res = bell_max(v, bell);
        rec.add("bell_max", res.b_max);
        rec.add("bell_converged", res.converged);
        if (!res.converged) rec.warnings.push_back("bell maximization did not converge");
    }
    return rec;
}

struct Axis {
    std::string name;
    double lo{0.0};
    double hi{0.0};
    int n{1};

    void validate() const {
        check_parameter_name(name);
        detail::require_finite(lo, "axis lower bound");
        detail::require_finite(hi, "axis upper bound");
        detail::require(n >= 1, "axis needs at least one point");
        detail::require(n == 1 || hi > lo, "axis upper bound must exceed the lower bound");
    }

    double at(int i) const { return n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (n - 1); }
};

struct SweepConfig {
    ParamSet base;
    Axis axis1;
    std::optional<Axis> axis2;
    OutputSet outputs = default_outputs();
    BellConfig bell{}; // bell.seed is the master seed; each point derives its own
    unsigned jobs{1};
};

struct SweepResult {
    std::vector<std::string> header;
    std::vector<Record> rows; // axis2-major: axis1 varies fastest
    int n1{1}, n2{1};
    std::vector<std::string> warnings;
};

// Bell optimizer settings for grid index `index`; a single point uses index 0.
inline BellConfig bell_for_point(BellConfig bell, std::uint64_t index) {
    bell.seed = derive_seed(bell.seed, index);
    return bell;
}

inline ParamSet grid_params(const SweepConfig& cfg, int i, int j) {
    ParamSet ps = cfg.base;
    ps.set(cfg.axis1.name, cfg.axis1.at(i));
    if (cfg.axis2) ps.set(cfg.axis2->name, cfg.axis2->at(j));
    return ps;
}

inline SweepResult run_sweep(const SweepConfig& cfg) {
    cfg.axis1.validate();
    if (cfg.axis2) {
        cfg.axis2->validate();
        detail::require(cfg.axis2->name != cfg.axis1.name, "the two axes must differ");
    }
    SweepResult out;
    out.n1 = cfg.axis1.n;
    out.n2 = cfg.axis2 ? cfg.axis2->n : 1;
    const auto total = static_cast<std::size_t>(out.n1) * static_cast<std::size_t>(out.n2);
    detail::require(total <= 10'000'000, "grid too large");

    // Resolve every point first so parameter errors surface before any work.
    std::vector<Point> points(total);
    for (std::size_t g = 0; g < total; ++g)
        points[g] = resolve(grid_params(cfg, static_cast<int>(g % out.n1), static_cast<int>(g / out.n1)));

    out.rows.resize(total);
    BellConfig per_point = cfg.bell;
    per_point.jobs = 1;
    parallel_for(total, cfg.jobs, [&](std::size_t g) {
        out.rows[g] = evaluate(points[g], cfg.outputs, bell_for_point(per_point, g));
    });
    out.header = out.rows.front().header();
    std::set<std::string> seen;
    for (const auto& row : out.rows)
        for (const auto& w : row.warnings)
            if (seen.insert(w).second) out.warnings.push_back(w);
    return out;
}

} // namespace tmsf::sweep
