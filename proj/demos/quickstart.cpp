// quickstart.cpp: entanglement and squeezing of a filtered squeezed vacuum

#include <cstdio>

#include "tmsf/tmsf.hpp"

int main() {
    using namespace tmsf;

    // two step filters, detuned by 0.3, same window
    const FilterSpec idler{FilterFamily::Step, 1.0, 2.0};
    const FilterSpec signal{FilterFamily::Step, 0.7, 2.0};
    const auto ov = overlap_closed_form(idler, signal);
    std::printf("overlap   K_f = %.6f  L_f = %.6f\n", ov.k_f, ov.l_f);

    const TmsvParams p{1.0, 0.9, 0.98, ov};
    const auto blocks = tmsv::covariance(p);
    const auto v = build_covariance(blocks);
    std::printf("E_N       %.6f\n", log_negativity(v).e_n);
    std::printf("S_q opt   %.6f  (weights mu_I/mu_S = %.6f)\n", optimized_squeezing(blocks),
                optimal_weight_ratio(blocks));
    std::printf("purity    %.6f\n", purity(v));

    const auto cp = tmsv::critical_points(p);
    std::printf("E_N > 0 for r < %.6f, peak at r = %.6f\n", cp.r_ucf_en.value(), cp.r_max_en.value());

    const auto bell = bell_max(v, {});
    std::printf("Bell max  %.6f (%s)\n", bell.b_max, bell.converged ? "converged" : "not converged");
}
