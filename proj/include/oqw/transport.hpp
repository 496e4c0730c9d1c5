#pragma once

// Transport statistics over probability distributions: signed-coordinate
// moments on the line, torus-unwrapped displacement moments on the lattice,
// and the simulated-vs-asymptotic convergence table.

#include <complex>
#include <utility>
#include <vector>

#include "oqw/graph.hpp"
#include "oqw/operators.hpp"
#include "oqw/simulator.hpp"

namespace oqw {

struct TransportStats {
    bool two_d = false;
    double mean_x = 0.0;
    double mean_x2 = 0.0;  // 1D: <x^2>;  2D: <x^2 + y^2>
    double sigma = 0.0;    // 1D: sqrt(<x^2> - <x>^2);  2D: sqrt(sigma_x^2 + sigma_y^2)
    // 2D only
    double mean_y = 0.0;
    double mu = 0.0;  // sqrt(<x>^2 + <y>^2)
    double sigma_x = 0.0;
    double sigma_y = 0.0;
};

// coords[v] = signed coordinate of vertex v. Throws std::invalid_argument if
// the distribution is not normalized within kNormTol.
TransportStats moments_1d(const ProbabilityDistribution& dist,
                          const std::vector<double>& coords);

// Displacements from `origin` unwrapped into (-n, n] on the 2n-side torus.
// Unambiguous only while the light cone has not wrapped (t < n/2); the
// t-aware callers flag that case (RunResult/SweepRow.aliasing_possible) --
// this reduction sees only the distribution and cannot check it.
TransportStats moments_2d(const ProbabilityDistribution& dist, const LatticeSpec& spec,
                          std::pair<int, int> origin);

struct ConvergenceRow {
    int t = 0;
    double mean_rate = 0.0;       // <x>/t, signed
    double mean_asym = 0.0;       // closed-form rate, signed
    double mean_gap = 0.0;        // |mean_rate - mean_asym|
    double x2_rate = 0.0;         // <x^2>/t^2
    double x2_asym = 0.0;         // 4(1 - |cos theta|)
    double x2_gap = 0.0;
};

// Uniform-line run from a|0> + b|1>, one row per listed t (strictly
// increasing; checked). A single window M = 2*max(t) + 4 serves every row.
std::vector<ConvergenceRow> convergence_report(const WalkParams& params, Cx a, Cx b,
                                               const std::vector<int>& t_list);

TransportStats stats_for_family(const WalkFamily& family,
                                const ProbabilityDistribution& dist);

}  // namespace oqw
