#include <stdexcept>

#include "oqw/simulator.hpp"
#include "oqw/transport.hpp"

namespace oqw {

std::vector<SweepRow> sweep(const WalkFamily& family, const std::vector<double>& alpha_grid,
                            const std::vector<double>& theta_grid, const StateVector& psi0,
                            int t) {
    if (alpha_grid.empty() || theta_grid.empty())
        throw std::invalid_argument("empty parameter grid");
    if (family.kind == FamilyKind::custom)
        throw std::invalid_argument("sweep needs a built-in family (no coordinate map "
                                    "for custom graphs)");

    const int na = static_cast<int>(alpha_grid.size());
    const int nt = static_cast<int>(theta_grid.size());
    const int total = na * nt;
    std::vector<SweepRow> rows(total);

    // Input errors must surface before the parallel region (throwing across an
    // OpenMP boundary terminates).
    check_evolve_preconditions(family, psi0, t);

    // Grid points are independent; parallelize across rows and keep each row's
    // evolution serial. Rows land in their grid slot, so the returned order
    // (alpha outer, theta inner) never depends on scheduling.
    std::exception_ptr err;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int idx = 0; idx < total; ++idx) {
        try {
            WalkParams p;
            p.alpha = alpha_grid[idx / nt];
            p.theta = theta_grid[idx % nt];
            EvolveOptions opts;
            opts.exec = ExecPolicy::serial;
            RunResult run = evolve(family, p, psi0, t, opts);
            TransportStats st = stats_for_family(family, distribution(run.final_state));

            SweepRow& row = rows[idx];
            row.alpha = p.alpha;
            row.theta = p.theta;
            row.two_d = st.two_d;
            row.aliasing_possible = run.aliasing_possible;
            row.mean_x = st.mean_x;
            row.x2 = st.mean_x2;
            row.sigma = st.sigma;
            if (st.two_d) {
                row.mean_y = st.mean_y;
                row.mu = st.mu;
                row.sigma_x = st.sigma_x;
                row.sigma_y = st.sigma_y;
            }
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    return rows;
}

}  // namespace oqw
