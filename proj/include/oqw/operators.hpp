#pragma once

// Per-tessellation Hamiltonians and local unitaries.
//
//   H_k = e^{i alpha} A_k + e^{-i alpha} A_k^T   (restricted to each tile)
//   U_k = exp(i theta H_k)                       (block-diagonal over tiles)
//
// Blocks are dense d x d with rows/columns ordered by ascending vertex index
// within the tile. Exponentials go through a Hermitian eigendecomposition
// (the test oracle uses a Taylor series instead, on purpose -- the two paths
// must stay methodologically independent).

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "oqw/graph.hpp"

namespace oqw {

using Cx = std::complex<double>;

struct WalkParams {
    double alpha = 0.0;
    double theta = 0.0;
};

constexpr int kMaxTileSize = 64;        // bounds the dense per-tile eigensolve
constexpr double kUnitaryTol = 1e-12;   // ||B^H B - I||_max after construction

struct HamiltonianBlock {
    Tile tile;
    Eigen::MatrixXcd matrix;  // Hermitian, zero diagonal
};

struct LocalUnitary {
    Tessellation tess;
    std::vector<Eigen::MatrixXcd> blocks;  // one per tile, unitary
};

// Entry (i,j) = e^{i alpha} if arc (tile_i, tile_j), e^{-i alpha} if arc
// (tile_j, tile_i), else 0. Throws std::invalid_argument if the tile is not
// a clique of the symmetrized graph or exceeds kMaxTileSize.
HamiltonianBlock hamiltonian_block(const OrientedGraph& g, const Tile& tile, double alpha);

// exp(i theta H) per tile; singleton tiles yield the 1x1 identity. A
// unitarity check at kUnitaryTol always runs; failure is a std::runtime_error
// (internal error, never silently repaired).
LocalUnitary local_unitary(const OrientedGraph& g, const Tessellation& tess,
                           const WalkParams& params);

// H = a I + b A on a d-clique with a = 2/d - 1, b = 2/d (A = all-ones off the
// diagonal); satisfies H^2 = I. Real symmetric.
Eigen::MatrixXd involutory_hamiltonian(const Tile& tile);

// One LocalUnitary per tessellation, in cover (= application) order.
std::vector<LocalUnitary> evolution_step_plan(const TessellationCover& cover,
                                              const WalkParams& params);

// ||B^H B - I||_max, used by the construction check and by tests.
double unitarity_defect(const Eigen::MatrixXcd& b);

// Dense N x N assembly of a plan's ordered product (first factor applied
// first, i.e. result = U_last * ... * U_1). Test/debug helper; prefer the
// block application in the simulator for anything large.
Eigen::MatrixXcd assemble_dense_step(const std::vector<LocalUnitary>& plan, int vertex_count);

}  // namespace oqw
