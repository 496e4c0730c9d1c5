#pragma once

// Brute-force reference implementations used only by tests: dense full-space
// Hamiltonians, a series-based matrix exponential (scaling and squaring +
// order-20 Taylor), and the dense step operator. Deliberately shares no
// exponentiation code with the production path (which eigendecomposes
// per-tile Hermitian blocks) -- the whole point is independence.

#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "oqw/graph.hpp"
#include "oqw/operators.hpp"

namespace oqw::oracle {

constexpr int kMaxDenseDim = 64;

// Entry (u,v) = e^{i alpha} if arc (u,v) lies inside some tile of tess,
// e^{-i alpha} if arc (v,u) does, else 0.
Eigen::MatrixXcd dense_hamiltonian(const OrientedGraph& g, const Tessellation& tess,
                                   double alpha);

// exp(i theta H) for Hermitian H (checked, std::invalid_argument otherwise;
// same for N > kMaxDenseDim). Scales until the induced infinity norm of
// theta*H/2^s is <= 1/4 -- which makes the max-entry norm <= 1/4 a fortiori --
// then applies a 20-term Taylor series and squares back up.
Eigen::MatrixXcd series_expm(double theta, const Eigen::MatrixXcd& h);

// Ordered product of dense exponentials, first tessellation applied first.
Eigen::MatrixXcd dense_step(const TessellationCover& cover, const WalkParams& params);

// Reproducible RNG for oracle-vs-production trials: mt19937_64 with manual
// output mapping (std::uniform_*_distribution is not cross-platform
// deterministic, so its output could not be pinned in tests).
class TestRng {
public:
    explicit TestRng(std::uint64_t seed) : eng_(seed) {}
    double uniform() {  // [0, 1)
        return (eng_() >> 11) * (1.0 / 9007199254740992.0);
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int below(int n) {  // [0, n)
        return static_cast<int>(eng_() % static_cast<std::uint64_t>(n));
    }
    bool coin() { return (eng_() & 1u) != 0; }

private:
    std::mt19937_64 eng_;
};

// Erdos-Renyi oriented graph: N vertices, each undirected edge kept with
// p = 0.4 and oriented by a fair coin; cover built greedily from maximal
// matchings over still-uncovered edges (padded to partitions with singleton
// tiles) until every edge is covered.
TessellationCover random_oriented_cover(int vertex_count, TestRng& rng);

}  // namespace oqw::oracle
