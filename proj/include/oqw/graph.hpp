#pragma once

// Oriented graphs (directed, no self-loops, no bidirected pairs) plus the
// tessellation machinery that drives the walk: tiles are cliques of the
// symmetrized graph, a tessellation is a partition of V into tiles, and a
// cover is an ordered list of tessellations (order = order in which the
// local unitaries are applied, first listed first).
//
// Convention fixed here and used everywhere downstream:
//   arc (u,v)  <=>  A_{uv} = 1  <=>  outer-product term |u><v|.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>
#include <unordered_set>

namespace oqw {

struct OrientedGraph {
    int vertex_count = 0;
    std::vector<std::pair<int, int>> arcs;
};

// Fast arc membership; graphs are immutable after construction so building
// the hash set once is fine.
class ArcIndex {
public:
    explicit ArcIndex(const OrientedGraph& g);
    bool has_arc(int u, int v) const {
        return set_.count(key(u, v)) != 0;
    }
    // either direction
    bool has_edge(int u, int v) const { return has_arc(u, v) || has_arc(v, u); }

private:
    std::int64_t key(int u, int v) const {
        return static_cast<std::int64_t>(u) * n_ + v;
    }
    std::int64_t n_;
    std::unordered_set<std::int64_t> set_;
};

struct Tile {
    std::vector<int> vertices;  // kept sorted ascending; block row order
};

struct Tessellation {
    std::vector<Tile> tiles;
};

struct TessellationCover {
    OrientedGraph host;
    std::vector<Tessellation> tessellations;  // application order
};

struct LatticeSpec {
    int n = 0;  // torus side is 2n, vertex count (2n)^2; requires n > 1
    int side() const { return 2 * n; }
    int vertex_count() const { return side() * side(); }
    // vertex (x,y), 0 <= x,y < 2n  ->  index 2n*y + x
    int index(int x, int y) const {
        int s = side();
        int xm = ((x % s) + s) % s;
        int ym = ((y % s) + s) % s;
        return s * ym + xm;
    }
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> violations;
};

ValidationReport validate_oriented(const OrientedGraph& g);

// Throws std::invalid_argument on out-of-range vertex indices; partition and
// clique failures are reported, not thrown.
ValidationReport validate_tessellation(const OrientedGraph& g, const Tessellation& t);

// Throws std::invalid_argument naming the first invalid member tessellation;
// an incomplete cover is reported (uncovered edges listed), not an error --
// the dynamics is well-defined, it just never moves along uncovered edges.
ValidationReport validate_cover(const TessellationCover& cover);

OrientedGraph transpose(const OrientedGraph& g);

enum class LineVariant { uniform, alternating };

enum class FamilyKind { line_uniform, line_alternating, lattice, custom };

// A cover plus the metadata the simulator and stats layers need (window size
// for the cycle-as-line emulation, n for the torus coordinate maps).
struct WalkFamily {
    FamilyKind kind = FamilyKind::custom;
    int half_window = 0;  // line families: M, cycle has 2M vertices
    int n = 0;            // lattice: torus side 2n
    TessellationCover cover;
};

// Cycle on 2M vertices emulating integer positions x in [-M, M), index =
// x mod 2M. Tessellations in application order: blue {2x, 2x+1} first, then
// red {2x-1, 2x}. Arcs per variant:
//   uniform:     A+ = sum |2x><2x+1|   (blue),  A- = sum |2x-1><2x| (red)
//   alternating: A+ = sum |2x><2x+1|   (blue),  A- = sum |2x><2x-1| (red)
// Requires M >= 2.
WalkFamily build_oriented_line(LineVariant variant, int half_window);

// Torus on (2n)^2 vertices. Four tessellations in application order
// x+ (blue), y+ (green), x- (red), y- (gray):
//   A_x^± = sum_{x+y even} |x,y><x±1,y|,  A_y^± = sum_{x+y odd} |x,y><x,y±1|.
// Requires n > 1.
WalkFamily build_oriented_lattice(const LatticeSpec& spec);

// signed position of a line vertex: i for i < M, i - 2M otherwise
inline int line_position(int index, int half_window) {
    return index < half_window ? index : index - 2 * half_window;
}

}  // namespace oqw
