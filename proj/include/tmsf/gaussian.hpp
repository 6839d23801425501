// gaussian.hpp: two-mode Gaussian state machinery over the (X_I, Y_I, X_S, Y_S) ordering
//
// Covariances carry the global 1/2 of the symmetrized second moments, so the
// vacuum is I/2 and a single quadrature at the standard quantum limit has
// variance 1/2. Scalar "block" values (D_I, D_S, C11, C12) are the matrix
// elements without that factor.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "tmsf/errors.hpp"

namespace tmsf {

struct CovarianceBlocks {
    double d_i{1.0};
    double d_s{1.0};
    double c11{0.0};
    double c12{0.0};

    // C11^2 + C12^2, the squared correlation strength.
    double correlation_sq() const noexcept { return c11 * c11 + c12 * c12; }

    friend bool operator==(const CovarianceBlocks&, const CovarianceBlocks&) = default;
};

struct QuadratureSpec {
    double phi_i{0.0};
    double phi_s{0.0};
    double mu_i{1.0};
    double mu_s{1.0};
};

struct SymplecticPair {
    double nu_minus;
    double nu_plus;
};

struct EntanglementResult {
    double nu_minus;
    double e_n;
};

inline constexpr double kPhysicalTolerance = 1e-10;
inline constexpr double kStructureTolerance = 1e-12;

// 4x4 symmetric positive-definite covariance matrix.
class CovarianceMatrix {
public:
    // Validates symmetry (1e-12, relative to the largest entry) and positive definiteness.
    static CovarianceMatrix from_matrix(const Eigen::Matrix4d& m) {
        if (!m.allFinite()) throw InvalidArgument("covariance matrix has non-finite entries");
        const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
        if ((m - m.transpose()).cwiseAbs().maxCoeff() > kStructureTolerance * scale)
            throw InvalidArgument("covariance matrix is not symmetric");
        Eigen::Matrix4d sym = 0.5 * (m + m.transpose());
        if (Eigen::LLT<Eigen::Matrix4d>(sym).info() != Eigen::Success)
            throw InvalidArgument("covariance matrix is not positive definite");
        return CovarianceMatrix(sym);
    }

    const Eigen::Matrix4d& matrix() const noexcept { return m_; }
    double operator()(int i, int j) const { return m_(i, j); }

    // True when the matrix has the diag(D_I/2, D_I/2), diag(D_S/2, D_S/2),
    // [[C11, C12], [C12, -C11]]/2 layout produced by build_covariance.
    bool has_block_structure() const noexcept {
        const double tol = kStructureTolerance * std::max(1.0, m_.cwiseAbs().maxCoeff());
        return std::abs(m_(0, 0) - m_(1, 1)) <= tol && std::abs(m_(2, 2) - m_(3, 3)) <= tol &&
               std::abs(m_(0, 1)) <= tol && std::abs(m_(2, 3)) <= tol &&
               std::abs(m_(0, 3) - m_(1, 2)) <= tol && std::abs(m_(0, 2) + m_(1, 3)) <= tol;
    }

    CovarianceBlocks blocks() const {
        if (!has_block_structure())
            throw InvalidArgument("covariance matrix lacks the two-mode block structure");
        return {m_(0, 0) + m_(1, 1), m_(2, 2) + m_(3, 3), m_(0, 2) - m_(1, 3), m_(0, 3) + m_(1, 2)};
    }

    double determinant() const {
        if (has_block_structure()) {
            const auto b = blocks();
            const double q = b.d_i * b.d_s - b.correlation_sq();
            return q * q / 16.0;
        }
        return m_.determinant();
    }

private:
    explicit CovarianceMatrix(const Eigen::Matrix4d& m) : m_(m) {}

    Eigen::Matrix4d m_;

    friend CovarianceMatrix build_covariance(const CovarianceBlocks&);
};

inline CovarianceMatrix build_covariance(const CovarianceBlocks& b) {
    detail::require_finite(b.d_i, "d_i");
    detail::require_finite(b.d_s, "d_s");
    detail::require_finite(b.c11, "c11");
    detail::require_finite(b.c12, "c12");
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m(0, 0) = m(1, 1) = b.d_i;
    m(2, 2) = m(3, 3) = b.d_s;
    m(0, 2) = m(2, 0) = b.c11;
    m(1, 3) = m(3, 1) = -b.c11;
    m(0, 3) = m(3, 0) = b.c12;
    m(1, 2) = m(2, 1) = b.c12;
    m *= 0.5;
    if (Eigen::LLT<Eigen::Matrix4d>(m).info() != Eigen::Success)
        throw InvalidArgument("covariance blocks do not form a positive-definite matrix");
    return CovarianceMatrix(m);
}

inline CovarianceMatrix vacuum_covariance() { return build_covariance({1.0, 1.0, 0.0, 0.0}); }

namespace detail {

// Symplectic eigenvalues from the local invariants: nu^2 solves
// nu^4 - Sigma nu^2 + det V = 0. The small root is taken from the product
// of roots to avoid cancellation.
inline SymplecticPair symplectic_pair(const CovarianceMatrix& v, bool partial_transpose) {
    const auto& m = v.matrix();
    double det_a, det_b, det_c;
    if (v.has_block_structure()) {
        const auto b = v.blocks();
        det_a = b.d_i * b.d_i / 4.0;
        det_b = b.d_s * b.d_s / 4.0;
        det_c = -b.correlation_sq() / 4.0;
    } else {
        det_a = m.block<2, 2>(0, 0).determinant();
        det_b = m.block<2, 2>(2, 2).determinant();
        det_c = m.block<2, 2>(0, 2).determinant();
    }
    const double det_v = v.determinant();
    const double sigma = det_a + det_b + (partial_transpose ? -2.0 : 2.0) * det_c;
    double disc = sigma * sigma - 4.0 * det_v;
    if (disc < -kPhysicalTolerance * std::max(1.0, sigma * sigma))
        throw InvalidArgument("non-physical covariance: negative symplectic discriminant");
    disc = std::max(disc, 0.0);
    const double big = 0.5 * (sigma + std::sqrt(disc));
    const double small = big > 0.0 ? det_v / big : 0.0;
    return {std::sqrt(std::max(small, 0.0)), std::sqrt(big)};
}

} // namespace detail

inline SymplecticPair symplectic_eigenvalues(const CovarianceMatrix& v) {
    return detail::symplectic_pair(v, false);
}

inline SymplecticPair partial_transpose_symplectic_eigenvalues(const CovarianceMatrix& v) {
    return detail::symplectic_pair(v, true);
}

// Uncertainty principle: smallest symplectic eigenvalue >= 1/2.
inline bool is_physical(const CovarianceMatrix& v) {
    return symplectic_eigenvalues(v).nu_minus >= 0.5 - kPhysicalTolerance;
}

inline EntanglementResult log_negativity(const CovarianceMatrix& v) {
    if (!is_physical(v))
        throw InvalidArgument("non-physical covariance: symplectic eigenvalue below 1/2");
    const double nu = partial_transpose_symplectic_eigenvalues(v).nu_minus;
    return {nu, std::max(0.0, -std::log(2.0 * nu))};
}

// Tr[rho^2] = 1/|C11^2 + C12^2 - D_I D_S|, cross-checked against 1/(4 sqrt(det V)).
inline double purity(const CovarianceMatrix& v) {
    const auto b = v.blocks();
    const double q = std::abs(b.correlation_sq() - b.d_i * b.d_s);
    if (q < 1e-14) throw NumericalError("degenerate covariance: purity denominator vanishes");
    const double closed = 1.0 / q;

    // LU determinant of the raw matrix; its rounding grows with the fourth
    // power of the entries, hence the scaled tolerance.
    const double det_general = v.matrix().determinant();
    const double scale = std::pow(std::max(1.0, v.matrix().cwiseAbs().maxCoeff()), 4);
    if (!(det_general > 0.0) ||
        std::abs(closed - 1.0 / (4.0 * std::sqrt(det_general))) > 1e-10 * scale)
        throw NumericalError("purity cross-check against the determinant failed");
    return closed;
}

// Gaussian Wigner density W(u) = exp(-u^T V^-1 u / 2) / (pi^2 sqrt(det V)).
// This normalization integrates to 4 over d^4u (to 1 over the coherent-state
// measure d^2alpha d^2beta = d^4u / 4), so that (pi^2/4) W is the displaced parity.
class GaussianWigner {
public:
    explicit GaussianWigner(const CovarianceMatrix& v) {
        Eigen::LLT<Eigen::Matrix4d> llt(v.matrix());
        if (llt.info() != Eigen::Success) throw InvalidArgument("singular covariance matrix");
        inverse_ = llt.solve(Eigen::Matrix4d::Identity());
        const double sqrt_det = llt.matrixL().toDenseMatrix().diagonal().prod();
        if (!(sqrt_det > 0.0)) throw InvalidArgument("singular covariance matrix");
        prefactor_ = 1.0 / (std::numbers::pi * std::numbers::pi * sqrt_det);
    }

    double operator()(const Eigen::Vector4d& u) const {
        return prefactor_ * std::exp(-0.5 * u.dot(inverse_ * u));
    }

    double peak() const noexcept { return prefactor_; }

private:
    Eigen::Matrix4d inverse_;
    double prefactor_{0.0};
};

inline double wigner(const CovarianceMatrix& v, const Eigen::Vector4d& u) {
    return GaussianWigner(v)(u);
}

// Beamsplitter loss with independent efficiencies on each arm.
inline CovarianceMatrix apply_loss(const CovarianceMatrix& v, double eta_i, double eta_s) {
    detail::require(eta_i >= 0.0 && eta_i <= 1.0, "eta_i must lie in [0, 1]");
    detail::require(eta_s >= 0.0 && eta_s <= 1.0, "eta_s must lie in [0, 1]");
    const Eigen::Vector4d e(std::sqrt(eta_i), std::sqrt(eta_i), std::sqrt(eta_s), std::sqrt(eta_s));
    Eigen::Matrix4d out = e.asDiagonal() * v.matrix() * e.asDiagonal();
    out.diagonal() += 0.5 * (Eigen::Vector4d::Ones() - e.cwiseProduct(e));
    return CovarianceMatrix::from_matrix(out);
}

// Variance of the weighted hybrid quadrature, normalized so the vacuum gives 1:
// [mu_I^2 D_I + mu_S^2 D_S + 2 mu_I mu_S (cos(phi) C11 + sin(phi) C12)] / (mu_I^2 + mu_S^2),
// phi = phi_I + phi_S.
inline double quadrature_variance(const CovarianceMatrix& v, const QuadratureSpec& q) {
    detail::require(q.mu_i > 0.0 && q.mu_s > 0.0, "quadrature weights must be positive");
    detail::require_finite(q.phi_i, "phi_i");
    detail::require_finite(q.phi_s, "phi_s");
    // Rescale so the larger weight is 1; the variance is homogeneous of degree 0.
    const double norm = std::max(q.mu_i, q.mu_s);
    const double mi = q.mu_i / norm;
    const double ms = q.mu_s / norm;
    const Eigen::Vector4d w(mi * std::cos(q.phi_i), mi * std::sin(q.phi_i),
                            ms * std::cos(q.phi_s), ms * std::sin(q.phi_s));
    return 2.0 * w.dot(v.matrix() * w) / (mi * mi + ms * ms);
}

// mu_I / mu_S minimizing the hybrid variance at the optimal phase.
inline double optimal_weight_ratio(const CovarianceBlocks& b) {
    const double c = std::hypot(b.c11, b.c12);
    if (c == 0.0) throw InvalidArgument("uncorrelated state: weight ratio undefined");
    const double diff = b.d_s - b.d_i;
    const double root = std::hypot(2.0 * c, diff);
    return diff >= 0.0 ? (diff + root) / (2.0 * c) : 2.0 * c / (root - diff);
}

// Minimum of the hybrid variance over phases and weights:
// (D_I + D_S - sqrt(4 C11^2 + 4 C12^2 + (D_I - D_S)^2)) / 2.
// It equals twice the smallest partial-transpose symplectic eigenvalue.
inline double optimized_squeezing(const CovarianceBlocks& b) {
    const double root = std::hypot(2.0 * std::hypot(b.c11, b.c12), b.d_i - b.d_s);
    return 0.5 * (b.d_i + b.d_s - root);
}

// Squeezing angle zeta = arctan(-C12 / C11) in (-pi/2, pi/2]; with the
// variance convention above the optimal phase sum is pi - zeta when C11 > 0.
inline double squeezing_angle(const CovarianceBlocks& b) {
    if (b.c11 == 0.0) return b.c12 == 0.0 ? 0.0 : std::numbers::pi / 2.0;
    return std::atan(-b.c12 / b.c11);
}

// Phase sum phi_I + phi_S in [0, 2 pi) minimizing the hybrid variance, valid for any sign of C11.
inline double optimal_phase_sum(const CovarianceBlocks& b) {
    const double phi = std::numbers::pi - std::atan2(-b.c12, b.c11);
    const double two_pi = 2.0 * std::numbers::pi;
    return std::fmod(std::fmod(phi, two_pi) + two_pi, two_pi);
}

} // namespace tmsf
