// amplitude.hpp: squeezing amplitude that may be unbounded

#pragma once

#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "tmsf/errors.hpp"

namespace tmsf {

// A critical squeezing amplitude. Cutoffs that only exist asymptotically
// (identical filters, perfect detection) are represented by the unbounded
// state, never by a large float.
class Amplitude {
public:
    static constexpr Amplitude unbounded() noexcept { return Amplitude(0.0, true); }

    static Amplitude finite(double r) {
        detail::require(std::isfinite(r), "finite amplitude requires a finite value");
        return Amplitude(r, false);
    }

    // atanh(x) for x < 1, unbounded for x >= 1.
    static Amplitude from_tanh(double x) {
        if (x >= 1.0) return unbounded();
        return finite(std::atanh(x));
    }

    // acosh(x) for finite x, clamped at 0 for x < 1.
    static Amplitude from_cosh(double x) {
        if (!std::isfinite(x)) return unbounded();
        return finite(x <= 1.0 ? 0.0 : std::acosh(x));
    }

    constexpr bool is_unbounded() const noexcept { return unbounded_; }
    constexpr bool is_finite() const noexcept { return !unbounded_; }

    double value() const {
        if (unbounded_) throw InvalidArgument("amplitude is unbounded");
        return r_;
    }

    // +inf for unbounded; meant for comparisons and plotting, not arithmetic.
    double value_or_inf() const noexcept {
        return unbounded_ ? std::numeric_limits<double>::infinity() : r_;
    }

    Amplitude scaled(double factor) const {
        return unbounded_ ? unbounded() : finite(r_ * factor);
    }

    friend constexpr bool operator==(const Amplitude& a, const Amplitude& b) noexcept {
        return a.unbounded_ == b.unbounded_ && (a.unbounded_ || a.r_ == b.r_);
    }

    friend std::ostream& operator<<(std::ostream& os, const Amplitude& a) {
        if (a.unbounded_) return os << "unbounded";
        return os << a.r_;
    }

private:
    constexpr Amplitude(double r, bool unbounded) noexcept : r_(r), unbounded_(unbounded) {}

    double r_;
    bool unbounded_;
};

} // namespace tmsf
