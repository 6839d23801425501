// oracles.hpp: independent numerical references used by the tests
//
// Nothing here calls the library's closed forms. State quantities are
// recomputed from the raw 4x4 matrix with generic linear algebra.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using Fn = std::function<double(double)>;

// Root of f on [a, b]; f(a) and f(b) must differ in sign.
inline double bisect(const Fn& f, double a, double b, double tol = 1e-13) {
    double fa = f(a);
    for (int it = 0; it < 300 && b - a > tol; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if ((fm < 0) == (fa < 0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

// Golden-section minimum on [a, b], then a bisection on the central-difference
// derivative around it to go below the sqrt(eps) floor of pure comparisons.
inline double argmin(const Fn& f, double a, double b, double h = 1e-6) {
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > 1e-7 * std::max(1.0, std::abs(a) + std::abs(b))) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    const double x0 = 0.5 * (a + b);
    auto df = [&](double x) { return f(x + h) - f(x - h); };
    double lo = x0 - 1e-5, hi = x0 + 1e-5;
    if (df(lo) < 0 && df(hi) > 0) return bisect(df, lo, hi, 1e-14);
    return x0;
}

inline double argmax(const Fn& f, double a, double b, double h = 1e-6) {
    return argmin([&](double x) { return -f(x); }, a, b, h);
}

// Gauss-Legendre nodes and weights on [-1, 1] from the Jacobi matrix.
struct Rule {
    std::vector<double> x, w;
};

inline Rule gauss_legendre(int n) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double b = k / std::sqrt(4.0 * k * k - 1.0);
        j(k, k - 1) = j(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
    Rule r;
    for (int k = 0; k < n; ++k) {
        r.x.push_back(es.eigenvalues()[k]);
        const double v = es.eigenvectors()(0, k);
        r.w.push_back(2.0 * v * v);
    }
    return r;
}

// Composite Gauss-Legendre over `panels` equal panels.
template <class F>
auto integrate(F&& f, double a, double b, int panels = 64, int order = 20) {
    static thread_local std::vector<Rule> cache(64);
    if (cache[static_cast<std::size_t>(order)].x.empty()) cache[static_cast<std::size_t>(order)] = gauss_legendre(order);
    const Rule& r = cache[static_cast<std::size_t>(order)];
    using R = decltype(f(a));
    R sum{};
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        for (std::size_t k = 0; k < r.x.size(); ++k) sum += r.w[k] * f(mid + 0.5 * h * r.x[k]);
    }
    return sum * (0.5 * h);
}

// Covariance from block values, assembled here without the library.
inline Eigen::Matrix4d matrix(double d_i, double d_s, double c11, double c12) {
    Eigen::Matrix4d m;
    m << d_i, 0, c11, c12,
         0, d_i, c12, -c11,
         c11, c12, d_s, 0,
         c12, -c11, 0, d_s;
    return 0.5 * m;
}

// Symplectic eigenvalues: moduli of the eigenvalues of i Omega V, each appearing twice.
inline std::vector<double> symplectic_eigenvalues(const Eigen::Matrix4d& v) {
    Eigen::Matrix4d omega = Eigen::Matrix4d::Zero();
    omega(0, 1) = omega(2, 3) = 1.0;
    omega(1, 0) = omega(3, 2) = -1.0;
    Eigen::EigenSolver<Eigen::Matrix4d> es(omega * v);
    std::vector<double> nu;
    for (int k = 0; k < 4; ++k) nu.push_back(std::abs(es.eigenvalues()[k]));
    std::sort(nu.begin(), nu.end());
    return {nu[0], nu[2]};
}

// Partial transpose flips the sign of the signal momentum.
inline Eigen::Matrix4d partial_transpose(const Eigen::Matrix4d& v) {
    const Eigen::Vector4d p(1, 1, 1, -1);
    return p.asDiagonal() * v * p.asDiagonal();
}

inline double log_negativity(const Eigen::Matrix4d& v) {
    const double nu = symplectic_eigenvalues(partial_transpose(v))[0];
    return std::max(0.0, -std::log(2.0 * nu));
}

// 2 nu_minus of the partial transpose minus 1: negative exactly when entangled.
inline double entanglement_witness(const Eigen::Matrix4d& v) {
    return 2.0 * symplectic_eigenvalues(partial_transpose(v))[0] - 1.0;
}

// Hybrid quadrature variance normalized to the vacuum, from the raw matrix.
inline double variance(const Eigen::Matrix4d& v, double phi_i, double phi_s, double mu_i, double mu_s) {
    const Eigen::Vector4d w(mu_i * std::cos(phi_i), mu_i * std::sin(phi_i), mu_s * std::cos(phi_s),
                            mu_s * std::sin(phi_s));
    return 2.0 * w.dot(v * w) / (mu_i * mu_i + mu_s * mu_s);
}

// Minimum over the phase sum (phi_s = 0) at fixed weight ratio t = mu_I / mu_S.
inline double min_over_phase(const Eigen::Matrix4d& v, double t) {
    // coarse scan to bracket the single minimum in [0, 2 pi)
    const int n = 64;
    int best = 0;
    double fbest = INFINITY;
    for (int k = 0; k < n; ++k) {
        const double fk = variance(v, 2 * std::numbers::pi * k / n, 0.0, t, 1.0);
        if (fk < fbest) {
            fbest = fk;
            best = k;
        }
    }
    const double step = 2 * std::numbers::pi / n;
    const double phi = argmin([&](double p) { return variance(v, p, 0.0, t, 1.0); },
                              (best - 1) * step, (best + 1) * step);
    return variance(v, phi, 0.0, t, 1.0);
}

struct Optimum {
    double variance;
    double ratio;
    double phase_sum;
};

// Joint numeric minimum over (phase sum, weight ratio), ratio searched in log space.
inline Optimum minimize_quadrature(const Eigen::Matrix4d& v) {
    auto g = [&](double log_t) { return min_over_phase(v, std::exp(log_t)); };
    int best = 0;
    double fbest = INFINITY;
    const int n = 80;
    for (int k = 0; k <= n; ++k) {
        const double fk = g(-4.0 + 8.0 * k / n);
        if (fk < fbest) {
            fbest = fk;
            best = k;
        }
    }
    const double lt = argmin(g, -4.0 + 8.0 * (best - 1) / n, -4.0 + 8.0 * (best + 1) / n, 1e-5);
    const double t = std::exp(lt);
    // recover the phase
    const int m = 64;
    int kb = 0;
    double fb = INFINITY;
    for (int k = 0; k < m; ++k) {
        const double fk = variance(v, 2 * std::numbers::pi * k / m, 0.0, t, 1.0);
        if (fk < fb) {
            fb = fk;
            kb = k;
        }
    }
    const double step = 2 * std::numbers::pi / m;
    double phi = argmin([&](double p) { return variance(v, p, 0.0, t, 1.0); }, (kb - 1) * step, (kb + 1) * step);
    phi = std::fmod(std::fmod(phi, 2 * std::numbers::pi) + 2 * std::numbers::pi, 2 * std::numbers::pi);
    return {variance(v, phi, 0.0, t, 1.0), t, phi};
}

// Wigner density written out directly.
inline double wigner(const Eigen::Matrix4d& v, const Eigen::Vector4d& u) {
    return std::exp(-0.5 * u.dot(v.inverse() * u)) / (std::numbers::pi * std::numbers::pi * std::sqrt(v.determinant()));
}

inline double bell(const Eigen::Matrix4d& v, const double* c) {
    const Eigen::Matrix4d inv = v.inverse();
    const double pre = 1.0 / (std::numbers::pi * std::numbers::pi * std::sqrt(v.determinant()));
    auto w = [&](double a, double b, double x, double y) {
        const Eigen::Vector4d u(a, b, x, y);
        return pre * std::exp(-0.5 * u.dot(inv * u));
    };
    const double s = w(c[0], c[1], c[4], c[5]) + w(c[0], c[1], c[6], c[7]) + w(c[2], c[3], c[4], c[5]) -
                     w(c[2], c[3], c[6], c[7]);
    return std::numbers::pi * std::numbers::pi / 4.0 * s;
}

// Bell maximum over the origin-anchored settings (first setting of each party
// at the origin): dense 4-D lattice followed by compass-search refinement.
inline double bell_origin_anchored(const Eigen::Matrix4d& v, double half_width, int per_dim = 21) {
    double c[8] = {0, 0, 0, 0, 0, 0, 0, 0};
    auto value = [&](const double* x) {
        c[2] = x[0];
        c[3] = x[1];
        c[6] = x[2];
        c[7] = x[3];
        return std::abs(bell(v, c));
    };
    double best[4] = {0, 0, 0, 0}, fbest = value(best);
    double x[4];
    for (int a = 0; a < per_dim; ++a)
        for (int b = 0; b < per_dim; ++b)
            for (int d = 0; d < per_dim; ++d)
                for (int e = 0; e < per_dim; ++e) {
                    const int idx[4] = {a, b, d, e};
                    for (int k = 0; k < 4; ++k) x[k] = -half_width + 2.0 * half_width * idx[k] / (per_dim - 1);
                    const double f = value(x);
                    if (f > fbest) {
                        fbest = f;
                        std::copy(x, x + 4, best);
                    }
                }
    double step = 2.0 * half_width / (per_dim - 1);
    while (step > 1e-10) {
        bool moved = false;
        for (int k = 0; k < 4; ++k)
            for (double s : {step, -step}) {
                std::copy(best, best + 4, x);
                x[k] += s;
                const double f = value(x);
                if (f > fbest) {
                    fbest = f;
                    std::copy(x, x + 4, best);
                    moved = true;
                }
            }
        if (!moved) step *= 0.5;
    }
    return fbest;
}

} // namespace oracle
