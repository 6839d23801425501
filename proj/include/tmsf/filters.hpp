// filters.hpp: causal mode-selection filters and their pair overlaps
//
// Overlap convention: K + iL = integral of conj(h_I(t)) h_S(t) dt, so that a
// positive detuning Delta = Omega_I - Omega_S gives L > 0 for both families.

#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>
#include <utility>

#include "tmsf/errors.hpp"

namespace tmsf {

enum class FilterFamily { Step, Exponential };

inline const char* to_string(FilterFamily f) {
    return f == FilterFamily::Step ? "step" : "exponential";
}

inline FilterFamily parse_family(const std::string& s) {
    if (s == "step") return FilterFamily::Step;
    if (s == "exponential" || s == "exp") return FilterFamily::Exponential;
    throw InvalidArgument("unknown filter family '" + s + "' (expected step or exponential)");
}

struct FilterSpec {
    FilterFamily family{FilterFamily::Step};
    double omega{0.0}; // center frequency
    double tau{1.0};   // time constant, > 0

    void validate() const {
        detail::require_finite(omega, "omega");
        detail::require(std::isfinite(tau) && tau > 0.0, "tau must be finite and > 0");
    }
};

struct OverlapFactors {
    double k_f{1.0};
    double l_f{0.0};

    friend bool operator==(const OverlapFactors&, const OverlapFactors&) = default;
};

using cplx = std::complex<double>;

inline cplx eval_time(const FilterSpec& f, double t) {
    f.validate();
    if (t < 0.0) return {0.0, 0.0};
    const cplx phase = std::polar(1.0, -f.omega * t);
    if (f.family == FilterFamily::Step)
        return t < f.tau ? phase / std::sqrt(f.tau) : cplx{0.0, 0.0};
    return std::sqrt(2.0 / f.tau) * std::exp(-t / f.tau) * phase;
}

// Unitary Fourier transform (1/sqrt(2 pi)) int h(t) e^{i w t} dt.
inline cplx eval_freq(const FilterSpec& f, double omega) {
    f.validate();
    detail::require_finite(omega, "omega");
    const double delta = omega - f.omega;
    if (f.family == FilterFamily::Step) {
        const double x = 0.5 * delta * f.tau;
        const double sinc = std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
        return std::sqrt(f.tau / (2.0 * std::numbers::pi)) * std::polar(1.0, x) * sinc;
    }
    return std::sqrt(f.tau / std::numbers::pi) / cplx(1.0, -f.tau * delta);
}

inline OverlapFactors overlap_closed_form(const FilterSpec& fi, const FilterSpec& fs) {
    fi.validate();
    fs.validate();
    if (fi.family != fs.family)
        throw InvalidArgument("mixed filter families have no closed-form overlap; use overlap_numeric");
    const double delta = fi.omega - fs.omega;
    const double s = std::sqrt(fi.tau * fs.tau);

    if (fi.family == FilterFamily::Step) {
        const double tau = std::min(fi.tau, fs.tau);
        const double x = tau * delta;
        if (std::abs(delta) * std::max(fi.tau, fs.tau) < 1e-8)
            return {tau / s * (1.0 - x * x / 6.0), tau / s * (0.5 * x)};
        const double half = std::sin(0.5 * x);
        return {std::sin(x) / (s * delta), 2.0 * half * half / (s * delta)};
    }

    const double sum = fi.tau + fs.tau;
    const double den = fi.tau * fi.tau * fs.tau * fs.tau * delta * delta + sum * sum;
    return {2.0 * s * sum / den, 2.0 * s * s * s * delta / den};
}

namespace detail {

// Gauss-Kronrod 31 on [a, b], bisecting while |K31 - G15| exceeds an absolute
// target. Returns {value, error estimate}.
template <class F>
std::pair<double, double> gk_absolute(const F& f, double a, double b, double target, int depth) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
    double err = 0.0;
    const double v = GK::integrate(f, a, b, 0, 0.0, &err);
    if (err <= target || depth == 0) return {v, err};
    const double m = 0.5 * (a + b);
    const auto [lv, le] = gk_absolute(f, a, m, 0.5 * target, depth - 1);
    const auto [rv, re] = gk_absolute(f, m, b, 0.5 * target, depth - 1);
    return {lv + rv, le + re};
}

} // namespace detail

// Adaptive Gauss-Kronrod quadrature of the time-domain inner product. Works for
// mixed families too. Throws NumericalError when the accumulated error estimate
// exceeds tol.
inline OverlapFactors overlap_numeric(const FilterSpec& fi, const FilterSpec& fs, double tol = 1e-10) {
    fi.validate();
    fs.validate();
    detail::require(tol >= 1e-12 && tol <= 1e-3, "tol must lie in [1e-12, 1e-3]");

    // Support of the product: a step window truncates it exactly, otherwise cut
    // the exponential tail where its integral is below tol/10.
    double t_end;
    if (fi.family == FilterFamily::Step && fs.family == FilterFamily::Step)
        t_end = std::min(fi.tau, fs.tau);
    else if (fi.family == FilterFamily::Step)
        t_end = fi.tau;
    else if (fs.family == FilterFamily::Step)
        t_end = fs.tau;
    else {
        const double tmax = std::max(fi.tau, fs.tau);
        t_end = tmax * std::max(std::log(10.0 / tol), std::log(4.0 * tmax / tol));
    }

    // Panels no longer than half an oscillation and one decay length.
    const double delta = std::abs(fi.omega - fs.omega);
    double panel = t_end;
    if (delta > 0.0) panel = std::min(panel, std::numbers::pi / delta);
    if (fi.family == FilterFamily::Exponential) panel = std::min(panel, fi.tau);
    if (fs.family == FilterFamily::Exponential) panel = std::min(panel, fs.tau);
    const auto n_panels = static_cast<long>(std::ceil(t_end / panel));
    if (n_panels > 5'000'000) throw NumericalError("overlap quadrature: too many panels required");

    auto product = [&](double t) { return std::conj(eval_time(fi, t)) * eval_time(fs, t); };
    auto re = [&](double t) { return product(t).real(); };
    auto im = [&](double t) { return product(t).imag(); };

    const double target = 0.25 * tol / static_cast<double>(n_panels);
    double k = 0.0, l = 0.0, err_total = 0.0;
    const double h = t_end / static_cast<double>(n_panels);
    for (long p = 0; p < n_panels; ++p) {
        const double a = h * static_cast<double>(p);
        const double b = p + 1 == n_panels ? t_end : a + h;
        const auto [kv, ke] = detail::gk_absolute(re, a, b, target, 12);
        const auto [lv, le] = detail::gk_absolute(im, a, b, target, 12);
        k += kv;
        l += lv;
        err_total += ke + le;
    }
    if (!(err_total <= tol) || !std::isfinite(k) || !std::isfinite(l))
        throw NumericalError("overlap quadrature did not reach the requested tolerance", err_total);
    return {k, l};
}

// Center frequencies Omega + n 2 pi / tau for n in [n_lo, n_hi]. Step filters
// on this grid are mutually orthogonal.
inline std::vector<double> orthonormal_frequencies(const FilterSpec& f, int n_lo, int n_hi) {
    f.validate();
    detail::require(n_lo <= n_hi, "empty integer range");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n_hi - n_lo + 1));
    const double spacing = 2.0 * std::numbers::pi / f.tau;
    for (int n = n_lo; n <= n_hi; ++n) out.push_back(f.omega + n * spacing);
    return out;
}

} // namespace tmsf
