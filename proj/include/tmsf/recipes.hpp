// recipes.hpp: named sweep presets for the standard parameter studies
//
// Ranges not pinned by the study itself (thermal populations, Bell grids) are
// defaults chosen for legible plots; every field can be overridden.

#pragma once

#include <string>
#include <vector>

#include "tmsf/errors.hpp"
#include "tmsf/sweep.hpp"

namespace tmsf::recipes {

struct Recipe {
    std::string name;
    std::string description;
    sweep::SweepConfig config;
    std::string plot_column; // default column for --svg
};

namespace detail {

inline sweep::ParamSet params(sweep::ModelKind m, std::initializer_list<std::pair<const char*, double>> kv,
                              std::optional<FilterFamily> family = std::nullopt) {
    sweep::ParamSet ps;
    ps.model = m;
    ps.family = family;
    for (const auto& [k, v] : kv) ps.set(k, v);
    return ps;
}

} // namespace detail

inline std::vector<Recipe> all() {
    using sweep::Axis;
    using sweep::ModelKind;
    using sweep::Output;
    const auto T = ModelKind::Tmsv;
    const auto H = ModelKind::Thermal;
    const auto step = FilterFamily::Step;
    const auto expo = FilterFamily::Exponential;
    std::vector<Recipe> out;
    auto add = [&](std::string name, std::string desc, sweep::ParamSet base, Axis a1, std::optional<Axis> a2,
                   sweep::OutputSet outputs, std::string column) {
        sweep::SweepConfig c;
        c.base = std::move(base);
        c.axis1 = std::move(a1);
        c.axis2 = std::move(a2);
        c.outputs = std::move(outputs);
        out.push_back({std::move(name), std::move(desc), std::move(c), std::move(column)});
    };

    add("detuning-step", "E_N vs signal center frequency, step filters, tau = 2, Omega_K = 1, r = 1",
        detail::params(T, {{"r", 1.0}, {"omega_k", 1.0}, {"tau_i", 2.0}, {"tau_s", 2.0}}, step),
        {"omega_l", -4.0, 6.0, 501}, std::nullopt, {Output::EN}, "e_n");
    add("detuning-exp", "E_N vs signal center frequency, exponential filters, tau = 2, Omega_K = 1, r = 1",
        detail::params(T, {{"r", 1.0}, {"omega_k", 1.0}, {"tau_i", 2.0}, {"tau_s", 2.0}}, expo),
        {"omega_l", -4.0, 6.0, 501}, std::nullopt, {Output::EN}, "e_n");
    add("linewidth-step", "E_N over (tau_I, tau_S), step filters, Omega_K = Omega_L = 1, r = 1",
        detail::params(T, {{"r", 1.0}, {"omega_k", 1.0}, {"omega_l", 1.0}}, step),
        {"tau_i", 0.5, 5.0, 91}, Axis{"tau_s", 0.5, 5.0, 91}, {Output::EN}, "e_n");
    add("linewidth-exp", "E_N over (tau_I, tau_S), exponential filters, Omega_K = Omega_L = 1, r = 1",
        detail::params(T, {{"r", 1.0}, {"omega_k", 1.0}, {"omega_l", 1.0}}, expo),
        {"tau_i", 0.5, 5.0, 91}, Axis{"tau_s", 0.5, 5.0, 91}, {Output::EN}, "e_n");
    add("overlap-squeezing", "E_N and optimized squeezing over (K_f, r), eta_I = 0.9, eta_S = 0.98",
        detail::params(T, {{"eta_i", 0.9}, {"eta_s", 0.98}}),
        {"k_f", 0.8, 1.0, 101}, Axis{"r", 0.0, 3.0, 151}, {Output::EN, Output::SqOpt, Output::CriticalPoints}, "e_n");
    add("efficiency-squeezing", "E_N and optimized squeezing over (eta_S, r), K_f = 0.95, eta_I = 0.9",
        detail::params(T, {{"k_f", 0.95}, {"eta_i", 0.9}}),
        {"eta_s", 0.1, 1.0, 91}, Axis{"r", 0.0, 3.0, 151}, {Output::EN, Output::SqOpt, Output::CriticalPoints}, "e_n");
    add("purity-overlap", "TMSV purity vs r for several K_f, eta_I = 0.9, eta_S = 0.98",
        detail::params(T, {{"eta_i", 0.9}, {"eta_s", 0.98}}),
        {"r", 0.0, 3.0, 151}, Axis{"k_f", 0.85, 1.0, 4}, {Output::Purity}, "purity");
    add("purity-efficiency", "TMSV purity vs r for several eta_S, K_f = 0.95, eta_I = 0.9",
        detail::params(T, {{"k_f", 0.95}, {"eta_i", 0.9}}),
        {"r", 0.0, 3.0, 151}, Axis{"eta_s", 0.4, 1.0, 4}, {Output::Purity}, "purity");
    add("bell-overlap", "maximal Bell value over (K_f, r), eta_I = 0.9, eta_S = 0.98",
        detail::params(T, {{"eta_i", 0.9}, {"eta_s", 0.98}}),
        {"k_f", 0.8, 1.0, 21}, Axis{"r", 0.0, 2.0, 21}, {Output::BellMax, Output::EN}, "bell_max");
    add("bell-efficiency", "maximal Bell value over (eta_S, r), K_f = 0.95, eta_I = 0.9",
        detail::params(T, {{"k_f", 0.95}, {"eta_i", 0.9}}),
        {"eta_s", 0.5, 1.0, 21}, Axis{"r", 0.0, 2.0, 21}, {Output::BellMax, Output::EN}, "bell_max");
    add("thermal-identical", "thermal E_N over (n_I, r), identical filters, n_S = 0.8",
        detail::params(H, {{"k_f", 1.0}, {"l_f", 0.0}, {"n_s", 0.8}}),
        {"n_i", 0.0, 2.0, 101}, Axis{"r", 0.0, 3.0, 151}, {Output::EN, Output::CriticalPoints}, "e_n");
    add("thermal-window", "thermal E_N and optimized squeezing over (n_I, r), K_f = 0.95, L_f = 0.095, n_S = 0.8",
        detail::params(H, {{"k_f", 0.95}, {"l_f", 0.095}, {"n_s", 0.8}}),
        {"n_i", 0.0, 2.0, 101}, Axis{"r", 0.0, 3.0, 151},
        {Output::EN, Output::SqOpt, Output::CriticalPoints}, "e_n");
    add("thermal-angle", "squeezing angle vs n_I, K_f = 0.95, L_f = 0.095, n_S = 0.8, r = 1",
        detail::params(H, {{"r", 1.0}, {"k_f", 0.95}, {"l_f", 0.095}, {"n_s", 0.8}}),
        {"n_i", 0.0, 2.0, 201}, std::nullopt, {Output::Zeta}, "zeta");
    add("thermal-purity", "thermal purity vs r for several n_I, K_f = 0.95, L_f = 0.095, n_S = 0.8",
        detail::params(H, {{"k_f", 0.95}, {"l_f", 0.095}, {"n_s", 0.8}}),
        {"r", 0.0, 3.0, 151}, Axis{"n_i", 0.0, 1.5, 4}, {Output::Purity}, "purity");
    add("bell-thermal-identical", "maximal Bell value over (n_I, r), identical filters, n_S = 0.01",
        detail::params(H, {{"k_f", 1.0}, {"l_f", 0.0}, {"n_s", 0.01}}),
        {"n_i", 0.0, 0.5, 21}, Axis{"r", 0.0, 2.0, 21}, {Output::BellMax, Output::EN}, "bell_max");
    add("bell-thermal-window", "maximal Bell value over (n_I, r), K_f = 0.95, L_f = 0.095, n_S = 0.01",
        detail::params(H, {{"k_f", 0.95}, {"l_f", 0.095}, {"n_s", 0.01}}),
        {"n_i", 0.0, 0.5, 21}, Axis{"r", 0.0, 2.0, 21}, {Output::BellMax, Output::EN}, "bell_max");
    add("weights-overlap", "optimal weight ratio and squeezing vs K_f, r = 1, eta_I = 0.6, eta_S = 0.9",
        detail::params(T, {{"r", 1.0}, {"eta_i", 0.6}, {"eta_s", 0.9}}),
        {"k_f", 0.5, 1.0, 201}, std::nullopt, {Output::WeightRatio, Output::SqOpt}, "weight_ratio");
    add("weights-squeezing", "optimal weight ratio and squeezing vs r, K_f = 0.95, eta_I = 0.6, eta_S = 0.9",
        detail::params(T, {{"k_f", 0.95}, {"eta_i", 0.6}, {"eta_s", 0.9}}),
        {"r", 0.01, 3.0, 300}, std::nullopt, {Output::WeightRatio, Output::SqOpt}, "weight_ratio");
    add("weights-thermal-population", "thermal weight ratio vs n_I, r = 1, K_f = 0.95, L_f = 0.095, n_S = 0.8",
        detail::params(H, {{"r", 1.0}, {"k_f", 0.95}, {"l_f", 0.095}, {"n_s", 0.8}}),
        {"n_i", 0.0, 2.0, 201}, std::nullopt, {Output::WeightRatio, Output::SqOpt}, "weight_ratio");
    add("weights-thermal-squeezing", "thermal weight ratio vs r, n_I = 0.3, K_f = 0.95, L_f = 0.095, n_S = 0.8",
        detail::params(H, {{"n_i", 0.3}, {"k_f", 0.95}, {"l_f", 0.095}, {"n_s", 0.8}}),
        {"r", 0.01, 3.0, 300}, std::nullopt, {Output::WeightRatio, Output::SqOpt}, "weight_ratio");
    return out;
}

inline Recipe find(const std::string& name) {
    for (auto& r : all())
        if (r.name == name) return r;
    throw InvalidArgument("unknown recipe '" + name + "'");
}

} // namespace tmsf::recipes
