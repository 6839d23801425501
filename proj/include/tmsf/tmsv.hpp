// tmsv.hpp: filtered two-mode squeezed vacuum with detection loss

#pragma once

#include <cmath>

#include "tmsf/amplitude.hpp"
#include "tmsf/errors.hpp"
#include "tmsf/filters.hpp"
#include "tmsf/gaussian.hpp"

namespace tmsf::tmsv {

struct Params {
    double r{0.0};
    double eta_i{1.0};
    double eta_s{1.0};
    OverlapFactors overlap{}; // only k_f enters; a vacuum input makes l_f irrelevant

    void validate() const {
        detail::require(std::isfinite(r) && r >= 0.0, "r must be finite and >= 0");
        detail::require(eta_i > 0.0 && eta_i <= 1.0, "eta_i must lie in (0, 1]");
        detail::require(eta_s > 0.0 && eta_s <= 1.0, "eta_s must lie in (0, 1]");
        detail::require_finite(overlap.k_f, "k_f");
        detail::require_finite(overlap.l_f, "l_f");
        detail::require(overlap.k_f * overlap.k_f + overlap.l_f * overlap.l_f <= 1.0 + 1e-12,
                        "overlap factors must satisfy k_f^2 + l_f^2 <= 1");
    }
};

// Squeezing amplitudes where entanglement and the equal-weight hybrid
// quadrature change behaviour. The optimized-weight squeezing window coincides
// with the entanglement window and needs no separate field.
struct CriticalPoints {
    Amplitude r_ucf_en; // entanglement vanishes above this
    Amplitude r_max_en; // entanglement peak
    Amplitude r_max_sq; // equal-weight squeezing peak
    Amplitude r_ucf_sq; // equal-weight squeezing returns to the SQL, = 2 r_max_sq
};

inline CovarianceBlocks covariance(const Params& p) {
    p.validate();
    const double sh = std::sinh(p.r);
    return {1.0 + 2.0 * p.eta_i * sh * sh, 1.0 + 2.0 * p.eta_s * sh * sh,
            std::sqrt(p.eta_i * p.eta_s) * p.overlap.k_f * std::sinh(2.0 * p.r), 0.0};
}

inline CriticalPoints critical_points(const Params& p) {
    p.validate();
    const double k = p.overlap.k_f;
    detail::require(k > 0.0 && k <= 1.0, "critical points need 0 < k_f <= 1");
    const double ee = p.eta_i * p.eta_s;

    const Amplitude ucf_en = Amplitude::from_tanh(k);

    const double big_p = 2.0 * ee + (p.eta_i + p.eta_s) * std::sqrt((1.0 - k * k) * ee);
    const double t_max_en = std::sqrt(4.0 * ee * k * k * (big_p - ee * k * k)) / big_p;
    const Amplitude max_en = Amplitude::from_tanh(t_max_en).scaled(0.5);

    const double t_sq = 2.0 * std::sqrt(ee) * k / (p.eta_i + p.eta_s);
    const Amplitude ucf_sq = Amplitude::from_tanh(t_sq);
    const Amplitude max_sq = ucf_sq.scaled(0.5);

    return {ucf_en, max_en, max_sq, ucf_sq};
}

// mu_I / mu_S of the optimal hybrid quadrature.
inline double weight_ratio(const Params& p) {
    p.validate();
    detail::require(p.r > 0.0, "weight ratio undefined at r = 0 (uncorrelated state)");
    detail::require(p.overlap.k_f != 0.0, "weight ratio undefined for k_f = 0 (uncorrelated state)");
    const double th = std::tanh(p.r);
    const double kk = std::abs(p.overlap.k_f);
    const double g = 2.0 * kk * std::sqrt(p.eta_i * p.eta_s);
    const double d = (p.eta_s - p.eta_i) * th;
    const double root = std::hypot(g, d);
    return d >= 0.0 ? (d + root) / g : g / (root - d);
}

inline double optimized_squeezing_closed(const Params& p) {
    p.validate();
    const double sh = std::sinh(p.r);
    const double ch = std::cosh(p.r);
    const double k = p.overlap.k_f;
    const double de = p.eta_i - p.eta_s;
    return 1.0 + (p.eta_i + p.eta_s) * sh * sh -
           sh * std::sqrt(4.0 * p.eta_i * p.eta_s * k * k * ch * ch + de * de * sh * sh);
}

} // namespace tmsf::tmsv

namespace tmsf {
using TmsvParams = tmsv::Params;
using TmsvCriticalPoints = tmsv::CriticalPoints;
} // namespace tmsf
