#include "oqw/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace oqw::oracle {

Eigen::MatrixXcd dense_hamiltonian(const OrientedGraph& g, const Tessellation& tess,
                                   double alpha) {
    ValidationReport rep = validate_tessellation(g, tess);
    if (!rep.ok) throw std::invalid_argument("invalid tessellation: " + rep.violations.front());

    const int n = g.vertex_count;
    ArcIndex idx(g);
    const Cx w = std::polar(1.0, alpha);

    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
    for (const auto& tile : tess.tiles) {
        const auto& vs = tile.vertices;
        for (size_t i = 0; i < vs.size(); ++i) {
            for (size_t j = i + 1; j < vs.size(); ++j) {
                int u = vs[i], v = vs[j];
                if (idx.has_arc(u, v)) {
                    h(u, v) = w;
                    h(v, u) = std::conj(w);
                } else if (idx.has_arc(v, u)) {
                    h(u, v) = std::conj(w);
                    h(v, u) = w;
                }
            }
        }
    }
    return h;
}

Eigen::MatrixXcd series_expm(double theta, const Eigen::MatrixXcd& h) {
    const int n = static_cast<int>(h.rows());
    if (n != h.cols()) throw std::invalid_argument("matrix not square");
    if (n > kMaxDenseDim)
        throw std::invalid_argument("oracle capped at N <= " + std::to_string(kMaxDenseDim));
    if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("series_expm expects a Hermitian matrix");

    Eigen::MatrixXcd a = Cx(0, 1) * theta * h;

    // scale: induced infinity norm (max absolute row sum) down to <= 1/4;
    // that bounds the max entry by 1/4 too and keeps the order-20 tail
    // negligible after squaring back
    double norm = 0.0;
    for (int i = 0; i < n; ++i) norm = std::max(norm, a.row(i).cwiseAbs().sum());
    int squarings = 0;
    while (norm > 0.25) {
        norm /= 2;
        ++squarings;
    }
    a /= std::pow(2.0, squarings);

    // plain truncated Taylor, order 20
    Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(n, n);
    Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(n, n);
    for (int k = 1; k <= 20; ++k) {
        term = term * a / static_cast<double>(k);
        result += term;
    }
    for (int s = 0; s < squarings; ++s) result = result * result;
    return result;
}

Eigen::MatrixXcd dense_step(const TessellationCover& cover, const WalkParams& params) {
    const int n = cover.host.vertex_count;
    if (n > kMaxDenseDim)
        throw std::invalid_argument("oracle capped at N <= " + std::to_string(kMaxDenseDim));
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(n, n);
    for (const auto& tess : cover.tessellations) {
        Eigen::MatrixXcd h = dense_hamiltonian(cover.host, tess, params.alpha);
        u = series_expm(params.theta, h) * u;  // first tessellation applied first
    }
    return u;
}

TessellationCover random_oriented_cover(int vertex_count, TestRng& rng) {
    OrientedGraph g;
    g.vertex_count = vertex_count;
    for (int u = 0; u < vertex_count; ++u) {
        for (int v = u + 1; v < vertex_count; ++v) {
            if (rng.uniform() >= 0.4) continue;  // keep edge with p = 0.4
            if (rng.coin())
                g.arcs.emplace_back(u, v);
            else
                g.arcs.emplace_back(v, u);
        }
    }

    // greedy cover: repeatedly take a maximal matching over the edges not yet
    // inside any tile, pad with singletons to make a partition
    std::vector<std::pair<int, int>> uncovered;
    for (const auto& [u, v] : g.arcs) uncovered.emplace_back(std::min(u, v), std::max(u, v));

    TessellationCover cover;
    cover.host = g;
    while (!uncovered.empty()) {
        Tessellation tess;
        std::vector<bool> used(vertex_count, false);
        std::vector<std::pair<int, int>> rest;
        for (const auto& [u, v] : uncovered) {
            if (used[u] || used[v]) {
                rest.emplace_back(u, v);
                continue;
            }
            used[u] = used[v] = true;
            Tile t;
            t.vertices = {u, v};
            tess.tiles.push_back(std::move(t));
        }
        for (int v = 0; v < vertex_count; ++v) {
            if (used[v]) continue;
            Tile t;
            t.vertices = {v};
            tess.tiles.push_back(std::move(t));
        }
        cover.tessellations.push_back(std::move(tess));
        uncovered = std::move(rest);
    }
    if (cover.tessellations.empty()) {
        // edgeless graph: a single all-singletons tessellation keeps the cover
        // well-formed (and its dynamics the identity)
        Tessellation tess;
        for (int v = 0; v < vertex_count; ++v) {
            Tile t;
            t.vertices = {v};
            tess.tiles.push_back(std::move(t));
        }
        cover.tessellations.push_back(std::move(tess));
    }
    return cover;
}

}  // namespace oqw::oracle
