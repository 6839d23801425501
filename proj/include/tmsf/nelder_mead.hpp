// nelder_mead.hpp: derivative-free simplex minimizer (standard coefficients)

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <numeric>
#include <vector>

#include "tmsf/errors.hpp"

namespace tmsf {

struct NelderMeadOptions {
    double initial_step{0.5};
    double f_tol{1e-10};       // stop when the simplex function values span less than this
    int max_evaluations{2000};
};

struct NelderMeadResult {
    Eigen::VectorXd x;
    double f{0.0};
    int evaluations{0};
    bool converged{false};
};

template <class F>
NelderMeadResult nelder_mead(F&& f, const Eigen::VectorXd& x0, const NelderMeadOptions& opt = {}) {
    const auto n = x0.size();
    detail::require(n >= 1, "nelder_mead needs at least one dimension");
    detail::require(opt.max_evaluations > static_cast<int>(n), "evaluation budget too small");

    std::vector<Eigen::VectorXd> pts(static_cast<std::size_t>(n + 1), x0);
    std::vector<double> fv(pts.size());
    int evals = 0;
    auto eval = [&](const Eigen::VectorXd& x) {
        ++evals;
        return f(x);
    };
    for (Eigen::Index i = 0; i < n; ++i) pts[static_cast<std::size_t>(i + 1)][i] += opt.initial_step;
    for (std::size_t i = 0; i < pts.size(); ++i) fv[i] = eval(pts[i]);

    std::vector<std::size_t> order(pts.size());
    bool converged = false;
    while (true) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return fv[a] < fv[b]; });
        const std::size_t best = order.front(), worst = order.back(), second = order[order.size() - 2];

        if (fv[worst] - fv[best] <= opt.f_tol) {
            converged = true;
            break;
        }
        if (evals >= opt.max_evaluations) break;

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (i != worst) centroid += pts[i];
        centroid /= static_cast<double>(n);

        const Eigen::VectorXd xr = centroid + (centroid - pts[worst]);
        const double fr = eval(xr);
        if (fr < fv[best]) {
            const Eigen::VectorXd xe = centroid + 2.0 * (centroid - pts[worst]);
            const double fe = eval(xe);
            if (fe < fr) { pts[worst] = xe; fv[worst] = fe; }
            else { pts[worst] = xr; fv[worst] = fr; }
            continue;
        }
        if (fr < fv[second]) {
            pts[worst] = xr;
            fv[worst] = fr;
            continue;
        }
        // contraction, outside or inside
        const bool outside = fr < fv[worst];
        const Eigen::VectorXd xc = outside ? Eigen::VectorXd(centroid + 0.5 * (xr - centroid))
                                           : Eigen::VectorXd(centroid + 0.5 * (pts[worst] - centroid));
        const double fc = eval(xc);
        if (fc < (outside ? fr : fv[worst])) {
            pts[worst] = xc;
            fv[worst] = fc;
            continue;
        }
        // shrink towards the best vertex
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i == best) continue;
            pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
            fv[i] = eval(pts[i]);
        }
    }
    const auto it = std::min_element(fv.begin(), fv.end());
    const auto idx = static_cast<std::size_t>(it - fv.begin());
    return {pts[idx], fv[idx], evals, converged};
}

} // namespace tmsf
