// thermal.hpp: filtered two-mode squeezed thermal state (perfect detection)
//
// A = n_I + n_S + 1, B = n_I - n_S. Lossy thermal states: compose covariance()
// with apply_loss(); the closed-form thresholds below assume eta = 1.

#pragma once

#include <cmath>
#include <optional>

#include "tmsf/amplitude.hpp"
#include "tmsf/errors.hpp"
#include "tmsf/filters.hpp"
#include "tmsf/gaussian.hpp"

namespace tmsf::thermal {

struct Params {
    double r{0.0};
    double n_i{0.0};
    double n_s{0.0};
    OverlapFactors overlap{};

    double a() const noexcept { return n_i + n_s + 1.0; }
    double b() const noexcept { return n_i - n_s; }

    void validate() const {
        detail::require(std::isfinite(r) && r >= 0.0, "r must be finite and >= 0");
        detail::require(std::isfinite(n_i) && n_i >= 0.0, "n_i must be finite and >= 0");
        detail::require(std::isfinite(n_s) && n_s >= 0.0, "n_s must be finite and >= 0");
        detail::require_finite(overlap.k_f, "k_f");
        detail::require_finite(overlap.l_f, "l_f");
        detail::require(overlap.k_f * overlap.k_f + overlap.l_f * overlap.l_f <= 1.0 + 1e-12,
                        "overlap factors must satisfy k_f^2 + l_f^2 <= 1");
    }
};

struct CriticalPoints {
    // Entanglement window; all three are empty when no r entangles the state.
    std::optional<Amplitude> r_lcf_en;
    std::optional<Amplitude> r_ucf_en;
    std::optional<Amplitude> r_max_en;

    // Optimized hybrid quadrature: the sub-SQL window is the entanglement
    // window and the variance minimum sits at the entanglement peak.
    std::optional<Amplitude> r_lcf_sq;
    std::optional<Amplitude> r_ucf_sq;
    std::optional<Amplitude> r_max_sq;

    // Equal weights at the optimal phase.
    std::optional<Amplitude> r_lcf_sq_equal;
    std::optional<Amplitude> r_ucf_sq_equal;
    Amplitude r_max_sq_equal = Amplitude::unbounded();

    double zeta{0.0}; // squeezing angle, radians

    bool window_empty() const noexcept { return !r_lcf_en.has_value(); }
};

inline CovarianceBlocks covariance(const Params& p) {
    p.validate();
    const double a = p.a(), b = p.b();
    const double ch = std::cosh(2.0 * p.r), sh = std::sinh(2.0 * p.r);
    return {b + a * ch, -b + a * ch, a * p.overlap.k_f * sh, -b * p.overlap.l_f * sh};
}

namespace internal {

inline constexpr double kDenominatorFloor = 1e-12;

struct Invariants {
    double a, b, g, den;
};

// g = A^2 K^2 + B^2 L^2, den = A^2 (1 - K^2) - B^2 L^2 = A^2 - g (>= 0 for physical overlaps).
inline Invariants invariants(const Params& p) {
    const double a = p.a(), b = p.b();
    const double k = p.overlap.k_f, l = p.overlap.l_f;
    const double g = a * a * k * k + b * b * l * l;
    const double den = std::max(0.0, a * a * (1.0 - k * k) - b * b * l * l);
    return {a, b, g, den};
}

} // namespace internal

inline CriticalPoints critical_points(const Params& p) {
    p.validate();
    const double k = p.overlap.k_f;
    tmsf::detail::require(k > 0.0 && k <= 1.0, "critical points need 0 < k_f <= 1");
    const auto [a, b, g, den] = internal::invariants(p);
    const bool unbounded_top = den <= internal::kDenominatorFloor;

    CriticalPoints cp;
    cp.zeta = squeezing_angle(covariance({1.0, p.n_i, p.n_s, p.overlap}));

    // Entanglement edges: roots in x = cosh 2r of den x^2 - 2 A x + P = 0.
    // The lower root is written as P / (A + sqrt(rad)), exact also when den -> 0.
    // Near x = 1 the amplitude goes like sqrt(x - 1), so x - 1 is formed without
    // cancellation: (P - A - sq)(P - A + sq) = P ((A - 1)^2 - B^2) = 4 n_I n_S P.
    const double big_p = 1.0 + g - b * b;
    const double rad = a * a - den * big_p;
    if (rad > 0.0) {
        const double sq = std::sqrt(rad);
        const double conj = big_p - a + sq;
        const double y = conj > 0.0 ? 4.0 * p.n_i * p.n_s * big_p / (conj * (a + sq))
                                    : (big_p - a - sq) / (a + sq);
        const double x_lo = 1.0 + std::max(0.0, y);
        const double x_hi = unbounded_top ? INFINITY : (a + sq) / den;
        if (x_hi > x_lo) {
            // cosh 2r = 1 + 2 sinh^2 r
            cp.r_lcf_en = Amplitude::finite(std::asinh(std::sqrt(0.5 * std::max(0.0, y))));
            cp.r_ucf_en = Amplitude::from_cosh(x_hi).scaled(0.5);
            if (unbounded_top) {
                cp.r_max_en = Amplitude::unbounded();
            } else {
                const double num = a * a * b * b * (p.overlap.l_f * p.overlap.l_f - 1.0) +
                                   a * a * a * a * k * k;
                cp.r_max_en = Amplitude::from_cosh(std::sqrt(std::max(num, 0.0) / (g * den))).scaled(0.5);
            }
            cp.r_lcf_sq = cp.r_lcf_en;
            cp.r_ucf_sq = cp.r_ucf_en;
            cp.r_max_sq = cp.r_max_en;
        }
    }

    // Equal weights: (A + 1) t^2 - 2 sqrt(G) t + (A - 1) = 0 in t = tanh r.
    const double disc = g - a * a + 1.0;
    if (disc > 0.0) {
        const double sg = std::sqrt(g), sd = std::sqrt(disc);
        cp.r_lcf_sq_equal = Amplitude::from_tanh((a - 1.0) / (sg + sd)); // = (sg - sd)/(A + 1)
        cp.r_ucf_sq_equal = Amplitude::from_tanh((sg + sd) / (a + 1.0));
    }
    cp.r_max_sq_equal = Amplitude::from_tanh(std::sqrt(g) / a).scaled(0.5);
    return cp;
}

inline double weight_ratio(const Params& p) {
    p.validate();
    tmsf::detail::require(p.r > 0.0, "weight ratio undefined at r = 0 (uncorrelated state)");
    const auto inv = internal::invariants(p);
    tmsf::detail::require(inv.g > 0.0, "weight ratio undefined for vanishing overlap");
    const double sh = std::sinh(2.0 * p.r);
    const double c = sh * std::sqrt(inv.g);
    const double root = std::hypot(c, inv.b);
    return inv.b <= 0.0 ? (root - inv.b) / c : c / (root + inv.b);
}

inline double optimized_squeezing_closed(const Params& p) {
    p.validate();
    const auto inv = internal::invariants(p);
    const double sh = std::sinh(2.0 * p.r);
    return inv.a * std::cosh(2.0 * p.r) - std::hypot(sh * std::sqrt(inv.g), inv.b);
}

} // namespace tmsf::thermal

namespace tmsf {
using ThermalParams = thermal::Params;
using ThermalCriticalPoints = thermal::CriticalPoints;
} // namespace tmsf
