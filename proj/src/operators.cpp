#include "oqw/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace oqw {

double unitarity_defect(const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd d = b.adjoint() * b;
    d.diagonal().array() -= 1.0;
    return d.cwiseAbs().maxCoeff();
}

namespace {

HamiltonianBlock hamiltonian_block_indexed(const ArcIndex& idx, const Tile& tile, double alpha) {
    const int d = static_cast<int>(tile.vertices.size());
    if (d == 0) throw std::invalid_argument("empty tile");
    if (d > kMaxTileSize)
        throw std::invalid_argument("tile size " + std::to_string(d) + " exceeds cap " +
                                    std::to_string(kMaxTileSize));

    const Cx w = std::polar(1.0, alpha);

    HamiltonianBlock out;
    out.tile = tile;
    out.matrix = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            int u = tile.vertices[i], v = tile.vertices[j];
            if (idx.has_arc(u, v)) {
                out.matrix(i, j) = w;
                out.matrix(j, i) = std::conj(w);
            } else if (idx.has_arc(v, u)) {
                out.matrix(i, j) = std::conj(w);
                out.matrix(j, i) = w;
            } else {
                throw std::invalid_argument("tile not a clique: no edge " + std::to_string(u) +
                                            "-" + std::to_string(v));
            }
        }
    }
    return out;
}

// exp(i theta H) for Hermitian H via eigendecomposition: H = V D V^H gives
// exp(i theta H) = V exp(i theta D) V^H. 1x1 and 2x2 zero-diagonal blocks get
// exact closed forms (for the 2x2 case H^2 = |h01|^2 I).
Eigen::MatrixXcd expi_hermitian(double theta, const Eigen::MatrixXcd& h) {
    const int d = static_cast<int>(h.rows());
    if (d == 1) return Eigen::MatrixXcd::Constant(1, 1, std::polar(1.0, theta * h(0, 0).real()));
    if (d == 2 && h(0, 0) == Cx(0, 0) && h(1, 1) == Cx(0, 0)) {
        const double r = std::abs(h(0, 1));
        Eigen::MatrixXcd u(2, 2);
        const double c = std::cos(theta * r), s = r > 0 ? std::sin(theta * r) / r : theta;
        u << c, Cx(0, 1) * s * h(0, 1), Cx(0, 1) * s * h(1, 0), c;
        return u;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("Hermitian eigendecomposition failed");
    Eigen::VectorXcd phases(d);
    for (int i = 0; i < d; ++i) phases(i) = std::polar(1.0, theta * es.eigenvalues()(i));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

HamiltonianBlock hamiltonian_block(const OrientedGraph& g, const Tile& tile, double alpha) {
    ArcIndex idx(g);
    return hamiltonian_block_indexed(idx, tile, alpha);
}

LocalUnitary local_unitary(const OrientedGraph& g, const Tessellation& tess,
                           const WalkParams& params) {
    ArcIndex idx(g);  // shared across tiles; rebuilding it per tile is the slow part
    LocalUnitary out;
    out.tess = tess;
    out.blocks.reserve(tess.tiles.size());
    for (const auto& tile : tess.tiles) {
        if (tile.vertices.size() == 1) {
            // singleton tile: no arcs, the walker stays put
            out.blocks.push_back(Eigen::MatrixXcd::Identity(1, 1));
            continue;
        }
        HamiltonianBlock h = hamiltonian_block_indexed(idx, tile, params.alpha);
        Eigen::MatrixXcd b = expi_hermitian(params.theta, h.matrix);
        double defect = unitarity_defect(b);
        if (defect > kUnitaryTol)
            throw std::runtime_error("local unitary block failed the unitarity check: defect " +
                                     std::to_string(defect));
        out.blocks.push_back(std::move(b));
    }
    return out;
}

Eigen::MatrixXd involutory_hamiltonian(const Tile& tile) {
    const int d = static_cast<int>(tile.vertices.size());
    if (d == 0) throw std::invalid_argument("empty tile");
    const double a = 2.0 / d - 1.0, b = 2.0 / d;
    Eigen::MatrixXd h = Eigen::MatrixXd::Constant(d, d, b);  // b * J
    h.diagonal().setConstant(a);                             // a on the diagonal (A has none)
    return h;
}

std::vector<LocalUnitary> evolution_step_plan(const TessellationCover& cover,
                                              const WalkParams& params) {
    std::vector<LocalUnitary> plan;
    plan.reserve(cover.tessellations.size());
    for (const auto& tess : cover.tessellations)
        plan.push_back(local_unitary(cover.host, tess, params));
    return plan;
}

Eigen::MatrixXcd assemble_dense_step(const std::vector<LocalUnitary>& plan, int vertex_count) {
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(vertex_count, vertex_count);
    for (const auto& lu : plan) {
        Eigen::MatrixXcd uk = Eigen::MatrixXcd::Zero(vertex_count, vertex_count);
        // vertices not in any tile (there are none for valid tessellations)
        // would stay identity; start from I and overwrite tile blocks
        uk.setIdentity();
        for (size_t ti = 0; ti < lu.tess.tiles.size(); ++ti) {
            const auto& vs = lu.tess.tiles[ti].vertices;
            const auto& b = lu.blocks[ti];
            for (size_t i = 0; i < vs.size(); ++i) {
                uk(vs[i], vs[i]) = b(i, i);
                for (size_t j = 0; j < vs.size(); ++j)
                    if (i != j) uk(vs[i], vs[j]) = b(i, j);
            }
        }
        u = uk * u;  // first listed applied first
    }
    return u;
}

}  // namespace oqw
