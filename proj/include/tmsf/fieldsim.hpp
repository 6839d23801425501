// fieldsim.hpp: Monte Carlo covariance estimate from sampled input fields
//
// Chain per realization: white-noise input quadratures -> two-mode squeezing
// mix -> beamsplitter loss -> discrete filter convolution read out at
// t = horizon -> symmetrized products. The filtered modes are
//   A_I = sum_k h_I(s_k) a_I(T - s_k) dt,   A_S = sum_k conj(h_S(s_k)) a_S(T - s_k) dt
// with s_k = (k + 1/2) dt and a = X + iY. Nothing here uses the covariance
// algebra of gaussian.hpp, so it serves as an independent check on it.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "tmsf/errors.hpp"
#include "tmsf/filters.hpp"
#include "tmsf/gaussian.hpp"
#include "tmsf/parallel.hpp"
#include "tmsf/rng.hpp"
#include "tmsf/thermal.hpp"
#include "tmsf/tmsv.hpp"

namespace tmsf::fieldsim {

using Model = std::variant<TmsvParams, ThermalParams>;

struct SimConfig {
    Model model{TmsvParams{}};
    FilterSpec filter_i{};
    FilterSpec filter_s{};
    double dt{0.01};
    double horizon{10.0};
    long n_realizations{200'000};
    std::uint64_t seed{0};
    unsigned jobs{1};
    int bootstrap_resamples{200};
    long pilot_realizations{4000}; // half-step bias check; 0 disables it

    void validate() const {
        filter_i.validate();
        filter_s.validate();
        std::visit([](const auto& p) { p.validate(); }, model);
        const double tau_min = std::min(filter_i.tau, filter_s.tau);
        const double tau_max = std::max(filter_i.tau, filter_s.tau);
        detail::require(std::isfinite(dt) && dt > 0.0, "dt must be > 0");
        detail::require(dt <= tau_min / 50.0 * (1.0 + 1e-12), "dt must be <= min(tau)/50");
        detail::require(std::isfinite(horizon) && horizon >= 3.0 * tau_max * (1.0 - 1e-12),
                        "horizon must be >= 3 max(tau)");
        for (const auto* f : {&filter_i, &filter_s})
            if (f->family == FilterFamily::Exponential)
                detail::require(horizon >= 10.0 * f->tau * (1.0 - 1e-12),
                                "horizon must be >= 10 tau for exponential filters");
        detail::require(n_realizations >= 1000, "n_realizations must be >= 1000");
        detail::require(bootstrap_resamples >= 20, "bootstrap_resamples must be >= 20");
        detail::require(pilot_realizations >= 0, "pilot_realizations must be >= 0");
        detail::require(horizon / dt <= 1e7, "too many time samples");
    }
};

struct EmpiricalBlocks {
    CovarianceBlocks blocks{};
    CovarianceBlocks std_errors{};         // bootstrap over realizations
    CovarianceBlocks discretization_bias{}; // |estimate(dt/2) - estimate(dt)| on the pilot batch
    long n_realizations{0};
    std::vector<std::string> warnings;
};

namespace detail {

struct Inputs {
    double ch, sh;       // squeezing mix
    double eta_i, eta_s; // detection efficiencies
    double var_i, var_s; // per-quadrature input variance times dt: n + 1/2
};

inline Inputs inputs_of(const Model& m) {
    if (const auto* t = std::get_if<TmsvParams>(&m))
        return {std::cosh(t->r), std::sinh(t->r), t->eta_i, t->eta_s, 0.5, 0.5};
    const auto& p = std::get<ThermalParams>(m);
    return {std::cosh(p.r), std::sinh(p.r), 1.0, 1.0, p.n_i + 0.5, p.n_s + 0.5};
}

// Kernels with dt folded in: idler h_I(s_k) dt, signal conj(h_S(s_k)) dt.
struct Kernels {
    std::vector<cplx> idler, signal;
};

inline Kernels make_kernels(const SimConfig& cfg, double dt, std::size_t m) {
    Kernels k;
    k.idler.resize(m);
    k.signal.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double s = (static_cast<double>(j) + 0.5) * dt;
        k.idler[j] = eval_time(cfg.filter_i, s) * dt;
        k.signal[j] = std::conj(eval_time(cfg.filter_s, s)) * dt;
    }
    return k;
}

// Output field samples (after mixing and loss) for one realization, m samples
// at step dt. Layout: xi, yi, xs, ys interleaved per sample.
inline void sample_outputs(const Inputs& in, double dt, std::size_t m, std::mt19937_64& gen,
                           std::vector<double>& out) {
    std::normal_distribution<double> normal(0.0, 1.0);
    const double si = std::sqrt(in.var_i / dt), ss = std::sqrt(in.var_s / dt);
    const double sv = std::sqrt(0.5 / dt);
    const double ti = std::sqrt(in.eta_i), ts = std::sqrt(in.eta_s);
    const double li = std::sqrt(1.0 - in.eta_i), ls = std::sqrt(1.0 - in.eta_s);
    const bool lossy = in.eta_i < 1.0 || in.eta_s < 1.0;
    out.resize(4 * m);
    for (std::size_t j = 0; j < m; ++j) {
        const double xi = si * normal(gen), yi = si * normal(gen);
        const double xs = ss * normal(gen), ys = ss * normal(gen);
        double oxi = in.ch * xi + in.sh * xs;
        double oyi = in.ch * yi - in.sh * ys;
        double oxs = in.ch * xs + in.sh * xi;
        double oys = in.ch * ys - in.sh * yi;
        if (lossy) {
            oxi = ti * oxi + li * sv * normal(gen);
            oyi = ti * oyi + li * sv * normal(gen);
            oxs = ts * oxs + ls * sv * normal(gen);
            oys = ts * oys + ls * sv * normal(gen);
        }
        out[4 * j] = oxi;
        out[4 * j + 1] = oyi;
        out[4 * j + 2] = oxs;
        out[4 * j + 3] = oys;
    }
}

// Per-realization contributions to (D_I, D_S, C11, C12). Sample j sits at lag s_j.
inline std::array<double, 4> products(const Kernels& k, const std::vector<double>& out) {
    cplx ai{0.0, 0.0}, as{0.0, 0.0};
    const std::size_t m = k.idler.size();
    for (std::size_t j = 0; j < m; ++j) {
        ai += k.idler[j] * cplx(out[4 * j], out[4 * j + 1]);
        as += k.signal[j] * cplx(out[4 * j + 2], out[4 * j + 3]);
    }
    const cplx cross = ai * as;
    return {std::norm(ai), std::norm(as), cross.real(), cross.imag()};
}

inline CovarianceBlocks to_blocks(const std::array<double, 4>& a) { return {a[0], a[1], a[2], a[3]}; }

} // namespace detail

inline EmpiricalBlocks simulate(const SimConfig& cfg) {
    cfg.validate();
    const auto in = detail::inputs_of(cfg.model);
    const auto m = static_cast<std::size_t>(std::llround(cfg.horizon / cfg.dt));
    const auto kernels = detail::make_kernels(cfg, cfg.dt, m);

    const auto n = static_cast<std::size_t>(cfg.n_realizations);
    std::vector<std::array<double, 4>> prod(n);
    constexpr std::size_t chunk = 1024;
    const std::size_t n_chunks = (n + chunk - 1) / chunk;
    parallel_for(n_chunks, cfg.jobs, [&](std::size_t c) {
        std::vector<double> out;
        for (std::size_t i = c * chunk; i < std::min(n, (c + 1) * chunk); ++i) {
            auto gen = substream(cfg.seed, i);
            detail::sample_outputs(in, cfg.dt, m, gen, out);
            prod[i] = detail::products(kernels, out);
        }
    });

    EmpiricalBlocks res;
    res.n_realizations = cfg.n_realizations;
    std::array<double, 4> mean{};
    for (const auto& p : prod)
        for (int e = 0; e < 4; ++e) mean[e] += p[e];
    for (auto& x : mean) x /= static_cast<double>(n);
    res.blocks = detail::to_blocks(mean);

    // Bootstrap: resample realizations with replacement.
    std::array<double, 4> s1{}, s2{};
    auto boot_gen = substream(cfg.seed ^ 0xb0075ULL, 0);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (int b = 0; b < cfg.bootstrap_resamples; ++b) {
        std::array<double, 4> acc{};
        for (std::size_t i = 0; i < n; ++i) {
            const auto& p = prod[pick(boot_gen)];
            for (int e = 0; e < 4; ++e) acc[e] += p[e];
        }
        for (int e = 0; e < 4; ++e) {
            const double v = acc[e] / static_cast<double>(n);
            s1[e] += v;
            s2[e] += v * v;
        }
    }
    std::array<double, 4> se{};
    const double nb = cfg.bootstrap_resamples;
    for (int e = 0; e < 4; ++e)
        se[e] = std::sqrt(std::max(0.0, (s2[e] - s1[e] * s1[e] / nb) / (nb - 1.0)));
    res.std_errors = detail::to_blocks(se);

    // Half-step check: the same fine noise drives both resolutions (coarse
    // samples are pair averages), so the difference isolates discretization.
    if (cfg.pilot_realizations > 0) {
        const auto fine = detail::make_kernels(cfg, 0.5 * cfg.dt, 2 * m);
        const auto pilot = static_cast<std::size_t>(cfg.pilot_realizations);
        std::array<double, 4> diff{};
        std::vector<double> out_f, out_c(4 * m);
        for (std::size_t i = 0; i < pilot; ++i) {
            auto gen = substream(cfg.seed ^ 0x9170ULL, i);
            detail::sample_outputs(in, 0.5 * cfg.dt, 2 * m, gen, out_f);
            for (std::size_t j = 0; j < m; ++j)
                for (int q = 0; q < 4; ++q)
                    out_c[4 * j + q] = 0.5 * (out_f[8 * j + q] + out_f[8 * j + 4 + q]);
            const auto pf = detail::products(fine, out_f);
            const auto pc = detail::products(kernels, out_c);
            for (int e = 0; e < 4; ++e) diff[e] += pf[e] - pc[e];
        }
        std::array<double, 4> bias{};
        for (int e = 0; e < 4; ++e) bias[e] = std::abs(diff[e]) / static_cast<double>(pilot);
        res.discretization_bias = detail::to_blocks(bias);
        static constexpr const char* names[4] = {"d_i", "d_s", "c11", "c12"};
        for (int e = 0; e < 4; ++e)
            if (bias[e] > se[e])
                res.warnings.push_back(std::string("discretization bias on ") + names[e] +
                                       " exceeds the statistical error; reduce dt");
    }
    return res;
}

// Overlap for the configured filter pair: closed form for matching families,
// quadrature otherwise.
inline OverlapFactors overlap_of(const SimConfig& cfg) {
    if (cfg.filter_i.family == cfg.filter_s.family) return overlap_closed_form(cfg.filter_i, cfg.filter_s);
    return overlap_numeric(cfg.filter_i, cfg.filter_s, 1e-10);
}

// Closed-form blocks for the configured model, with the overlap taken from the filters.
inline CovarianceBlocks analytic_blocks(const SimConfig& cfg) {
    const auto ov = overlap_of(cfg);
    if (const auto* t = std::get_if<TmsvParams>(&cfg.model)) {
        auto p = *t;
        p.overlap = ov;
        return tmsv::covariance(p);
    }
    auto p = std::get<ThermalParams>(cfg.model);
    p.overlap = ov;
    return thermal::covariance(p);
}

struct ValidationRow {
    std::string element;
    double analytic;
    double estimate;
    double std_error;
    double z;   // (estimate - analytic) / std_error
    bool pass;  // |z| <= 5
};

struct ValidationReport {
    std::vector<ValidationRow> rows;
    EmpiricalBlocks empirical;
    OverlapFactors overlap;
    bool all_pass() const {
        return std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.pass; });
    }
};

inline ValidationReport validate(const SimConfig& cfg, double n_sigma = 5.0) {
    ValidationReport rep;
    rep.overlap = overlap_of(cfg);
    const auto a = analytic_blocks(cfg);
    rep.empirical = simulate(cfg);
    const auto& e = rep.empirical.blocks;
    const auto& s = rep.empirical.std_errors;
    auto row = [&](const char* name, double av, double ev, double sv) {
        const double z = sv > 0.0 ? (ev - av) / sv : (ev == av ? 0.0 : INFINITY);
        rep.rows.push_back({name, av, ev, sv, z, std::abs(z) <= n_sigma});
    };
    row("d_i", a.d_i, e.d_i, s.d_i);
    row("d_s", a.d_s, e.d_s, s.d_s);
    row("c11", a.c11, e.c11, s.c11);
    row("c12", a.c12, e.c12, s.c12);
    return rep;
}

// Reference configurations: vacuum, ideal squeezed vacuum through identical
// step filters, and a thermal state through detuned step filters.
inline SimConfig canonical_config(int which, long n_realizations = 200'000, std::uint64_t seed = 1) {
    SimConfig c;
    c.dt = 0.04;
    c.horizon = 6.0;
    c.n_realizations = n_realizations;
    c.seed = seed;
    switch (which) {
    case 1:
        c.model = TmsvParams{0.0, 1.0, 1.0, {}};
        c.filter_i = c.filter_s = {FilterFamily::Step, 1.0, 2.0};
        break;
    case 2:
        c.model = TmsvParams{1.0, 1.0, 1.0, {}};
        c.filter_i = c.filter_s = {FilterFamily::Step, 1.0, 2.0};
        break;
    case 3:
        c.model = ThermalParams{0.5, 0.3, 0.8, {}};
        c.filter_i = {FilterFamily::Step, 1.0, 2.0};
        c.filter_s = {FilterFamily::Step, 0.0, 2.0};
        break;
    default:
        throw InvalidArgument("canonical configuration must be 1, 2 or 3");
    }
    return c;
}

} // namespace tmsf::fieldsim
