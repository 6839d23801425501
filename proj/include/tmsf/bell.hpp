// bell.hpp: CHSH combination of displaced-parity (Wigner) values and its maximization
//
// B = (pi^2/4) [W(u00) + W(u01) + W(u10) - W(u11)], u_mn = (q_I^m, p_I^m, q_S^n, p_S^n).
// Local realism bounds |B| <= 2.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "tmsf/errors.hpp"
#include "tmsf/gaussian.hpp"
#include "tmsf/nelder_mead.hpp"
#include "tmsf/parallel.hpp"
#include "tmsf/rng.hpp"

namespace tmsf {

struct PhasePoint {
    double q{0.0};
    double p{0.0};
};

struct DisplacementSettings {
    std::array<PhasePoint, 2> idler{};
    std::array<PhasePoint, 2> signal{};

    Eigen::Vector4d joint(int m, int n) const {
        const auto& a = idler[static_cast<std::size_t>(m)];
        const auto& b = signal[static_cast<std::size_t>(n)];
        return {a.q, a.p, b.q, b.p};
    }

    // (q_I^0, p_I^0, q_I^1, p_I^1, q_S^0, p_S^0, q_S^1, p_S^1)
    std::array<double, 8> coordinates() const {
        return {idler[0].q, idler[0].p, idler[1].q, idler[1].p,
                signal[0].q, signal[0].p, signal[1].q, signal[1].p};
    }

    static DisplacementSettings from_coordinates(const std::array<double, 8>& c) {
        DisplacementSettings s;
        s.idler = {PhasePoint{c[0], c[1]}, PhasePoint{c[2], c[3]}};
        s.signal = {PhasePoint{c[4], c[5]}, PhasePoint{c[6], c[7]}};
        return s;
    }
};

namespace detail {

inline double bell_sum(const GaussianWigner& w, const DisplacementSettings& s) {
    constexpr double scale = std::numbers::pi * std::numbers::pi / 4.0;
    return scale * (w(s.joint(0, 0)) + w(s.joint(0, 1)) + w(s.joint(1, 0)) - w(s.joint(1, 1)));
}

} // namespace detail

inline double bell_value(const CovarianceMatrix& v, const DisplacementSettings& s) {
    for (double c : s.coordinates()) detail::require_finite(c, "displacement coordinate");
    return detail::bell_sum(GaussianWigner(v), s);
}

enum class SettingsFamily {
    OriginAnchored, // first setting of each party fixed at the origin, 4 free coordinates
    Full,           // all 8 coordinates free
};

struct BellConfig {
    SettingsFamily family{SettingsFamily::OriginAnchored};
    int restarts{64};        // includes the all-zero start
    int budget{2000};        // evaluations per restart
    double tol{1e-10};       // simplex spread in |B|
    std::uint64_t seed{0};
    unsigned jobs{1};        // 0 = hardware concurrency
};

struct BellResult {
    double b_max{0.0};
    DisplacementSettings settings{};
    int n_restarts_used{0};
    bool converged{false};
    long evaluations{0};
    double spread{0.0}; // |B| gap between the two best restarts
};

namespace detail {

inline int free_dimension(SettingsFamily f) { return f == SettingsFamily::Full ? 8 : 4; }

inline DisplacementSettings settings_from(SettingsFamily f, const Eigen::VectorXd& x) {
    if (f == SettingsFamily::Full)
        return DisplacementSettings::from_coordinates({x[0], x[1], x[2], x[3], x[4], x[5], x[6], x[7]});
    return DisplacementSettings::from_coordinates({0.0, 0.0, x[0], x[1], 0.0, 0.0, x[2], x[3]});
}

} // namespace detail

// Multistart Nelder-Mead on -|B|. Restart 0 starts at the origin; restart k > 0
// draws a Gaussian start whose width runs geometrically from the smallest to
// the largest covariance standard deviation, so both the narrow anti-correlated
// features and the broad envelope get covered. Results do not depend on jobs.
inline BellResult bell_max(const CovarianceMatrix& v, const BellConfig& cfg = {}) {
    detail::require(cfg.restarts >= 1, "restarts must be >= 1");
    detail::require(cfg.budget >= 20, "budget must be >= 20 evaluations");
    detail::require(cfg.tol > 0.0, "tol must be > 0");
    if (!is_physical(v)) throw InvalidArgument("non-physical covariance matrix");

    const GaussianWigner w(v);
    const int dim = detail::free_dimension(cfg.family);
    auto objective = [&](const Eigen::VectorXd& x) {
        return -std::abs(detail::bell_sum(w, detail::settings_from(cfg.family, x)));
    };

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(v.matrix());
    const double s_lo = std::sqrt(es.eigenvalues().minCoeff());
    const double s_hi = std::sqrt(es.eigenvalues().maxCoeff());

    const auto n = static_cast<std::size_t>(cfg.restarts);
    std::vector<NelderMeadResult> runs(n);
    parallel_for(n, cfg.jobs, [&](std::size_t i) {
        Eigen::VectorXd x0 = Eigen::VectorXd::Zero(dim);
        double width = s_lo;
        if (i > 0) {
            const double frac = n > 2 ? double(i - 1) / double(n - 2) : 0.0;
            width = s_lo * std::pow(s_hi / s_lo, frac);
            auto gen = substream(cfg.seed, i);
            std::normal_distribution<double> normal(0.0, width);
            for (int d = 0; d < dim; ++d) x0[d] = normal(gen);
        }
        runs[i] = nelder_mead(objective, x0, {0.5 * width, cfg.tol, cfg.budget});
    });

    // Lowest index wins ties, so the reduction is schedule independent.
    std::size_t best = 0;
    long evals = 0;
    for (std::size_t i = 0; i < n; ++i) {
        evals += runs[i].evaluations;
        if (runs[i].f < runs[best].f) best = i;
    }
    double second = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        if (i != best) second = std::min(second, runs[i].f);
    const double spread = n > 1 ? std::abs(runs[best].f - second) : 0.0;

    // Polish with a fresh small simplex around the winner.
    NelderMeadResult polished = nelder_mead(objective, runs[best].x, {1e-3 * s_lo, cfg.tol, cfg.budget});
    evals += polished.evaluations;
    const NelderMeadResult& top = polished.f < runs[best].f ? polished : runs[best];

    BellResult out;
    out.b_max = -top.f;
    out.settings = detail::settings_from(cfg.family, top.x);
    out.n_restarts_used = cfg.restarts;
    out.evaluations = evals;
    out.spread = spread;
    out.converged = runs[best].converged || polished.converged || spread <= 1e-6;
    return out;
}

} // namespace tmsf
