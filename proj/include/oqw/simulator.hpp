#pragma once

// State-vector evolution under a step plan. Tiles touch disjoint amplitude
// ranges, so one local unitary applies its blocks independently (OpenMP when
// available and enabled); successive local unitaries are a sequential
// barrier. The serial path is the same kernel with the parallel branch off --
// it is the reference the tests and the benchmark compare against.

#include <complex>
#include <vector>

#include "oqw/graph.hpp"
#include "oqw/operators.hpp"

namespace oqw {

struct StateVector {
    std::vector<Cx> amp;

    int size() const { return static_cast<int>(amp.size()); }
    double norm() const;
};

struct ProbabilityDistribution {
    std::vector<double> probs;
};

constexpr double kNormTol = 1e-10;

// Throws std::invalid_argument if not normalized within kNormTol.
StateVector make_state(std::vector<Cx> amplitudes);

StateVector basis_state(int vertex_count, int v);
// a|0> + b|1>, normalized by the library (zero vector is an input error).
StateVector amplitude_pair_state(int vertex_count, Cx a, Cx b);
// (|0,0> + |1,0> + |0,1> + |1,1>)/2 on the 2n-side torus.
StateVector corner4_state(const LatticeSpec& spec);

enum class ExecPolicy { serial, parallel };

StateVector apply_local(const LocalUnitary& u, const StateVector& psi,
                        ExecPolicy exec = ExecPolicy::parallel);

StateVector step(const std::vector<LocalUnitary>& plan, const StateVector& psi,
                 ExecPolicy exec = ExecPolicy::parallel);

struct RunResult {
    int steps = 0;
    WalkParams params;
    StateVector final_state;
    bool recorded = false;
    std::vector<ProbabilityDistribution> per_step;  // t+1 entries when recorded
    // set when the run's light cone can wrap the torus (t >= n/2), in which
    // case unwrapped 2D moments mix wrapped probability mass
    bool aliasing_possible = false;
};

struct EvolveOptions {
    bool record_distributions = false;
    ExecPolicy exec = ExecPolicy::parallel;
};

// The input checks evolve runs up front, callable separately (sweep runs them
// before entering its parallel region): t >= 0, dimensions match, and for
// line families the no-wraparound window t <= (M-2)/2 -- violations raise
// std::invalid_argument naming the half-window the run would need (M >= 2t+2).
void check_evolve_preconditions(const WalkFamily& family, const StateVector& psi0, int t);

// Applies the step t times (preconditions above). Norm is re-checked after
// every step (kNormTol); violation is an internal error.
RunResult evolve(const WalkFamily& family, const WalkParams& params,
                 const StateVector& psi0, int t, const EvolveOptions& opts = {});

ProbabilityDistribution distribution(const StateVector& psi);

struct SweepRow {
    double alpha = 0.0;
    double theta = 0.0;
    // filled by the transport layer; declared here so sweep can return
    // everything in one deterministic grid-ordered table
    double mean_x = 0.0, mean_y = 0.0, mu = 0.0;
    double x2 = 0.0;
    double sigma = 0.0, sigma_x = 0.0, sigma_y = 0.0;
    bool two_d = false;
    bool aliasing_possible = false;
};

// Cartesian grid, alpha outer / theta inner; rows are computed independently
// (parallel across grid points, serial inside each) and returned in grid
// order so downstream CSV output is byte-identical however many threads ran.
std::vector<SweepRow> sweep(const WalkFamily& family,
                            const std::vector<double>& alpha_grid,
                            const std::vector<double>& theta_grid,
                            const StateVector& psi0, int t);

}  // namespace oqw
