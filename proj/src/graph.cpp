#include "oqw/graph.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace oqw {

ArcIndex::ArcIndex(const OrientedGraph& g) : n_(g.vertex_count) {
    set_.reserve(g.arcs.size() * 2);
    for (const auto& [u, v] : g.arcs) set_.insert(key(u, v));
}

namespace {

std::string arc_str(int u, int v) {
    std::ostringstream os;
    os << "(" << u << "," << v << ")";
    return os.str();
}

}  // namespace

ValidationReport validate_oriented(const OrientedGraph& g) {
    ValidationReport rep;
    auto add = [&rep](const std::string& s) {
        rep.ok = false;
        rep.violations.push_back(s);
    };
    std::set<std::pair<int, int>> seen;
    for (const auto& [u, v] : g.arcs) {
        if (u < 0 || v < 0 || u >= g.vertex_count || v >= g.vertex_count) {
            add("arc " + arc_str(u, v) + " out of range for " +
                std::to_string(g.vertex_count) + " vertices");
            continue;
        }
        if (u == v) {
            add("self-loop at " + std::to_string(u));
            continue;
        }
        if (seen.count({u, v})) add("duplicate arc " + arc_str(u, v));
        if (seen.count({v, u})) add("bidirected pair " + arc_str(std::min(u, v), std::max(u, v)));
        seen.insert({u, v});
    }
    return rep;
}

ValidationReport validate_tessellation(const OrientedGraph& g, const Tessellation& t) {
    for (const auto& tile : t.tiles)
        for (int v : tile.vertices)
            if (v < 0 || v >= g.vertex_count)
                throw std::invalid_argument("tile vertex " + std::to_string(v) +
                                            " out of range for " +
                                            std::to_string(g.vertex_count) + " vertices");

    ValidationReport rep;
    auto add = [&rep](const std::string& s) {
        rep.ok = false;
        rep.violations.push_back(s);
    };

    std::vector<int> owner(g.vertex_count, -1);
    for (size_t ti = 0; ti < t.tiles.size(); ++ti) {
        const auto& tile = t.tiles[ti];
        if (tile.vertices.empty()) {
            add("tile " + std::to_string(ti) + " is empty");
            continue;
        }
        for (int v : tile.vertices) {
            if (owner[v] == static_cast<int>(ti)) {
                add("tile " + std::to_string(ti) + " repeats vertex " + std::to_string(v));
            } else if (owner[v] != -1) {
                add("overlap at vertex " + std::to_string(v));
            }
            owner[v] = static_cast<int>(ti);
        }
    }
    for (int v = 0; v < g.vertex_count; ++v)
        if (owner[v] == -1) add("vertex " + std::to_string(v) + " not covered by any tile");

    // clique test, brute force over all pairs inside each tile
    ArcIndex idx(g);
    for (size_t ti = 0; ti < t.tiles.size(); ++ti) {
        const auto& vs = t.tiles[ti].vertices;
        for (size_t i = 0; i < vs.size(); ++i)
            for (size_t j = i + 1; j < vs.size(); ++j)
                if (!idx.has_edge(vs[i], vs[j]))
                    add("tile " + std::to_string(ti) + " not a clique: no edge " +
                        std::to_string(vs[i]) + "-" + std::to_string(vs[j]));
    }
    return rep;
}

ValidationReport validate_cover(const TessellationCover& cover) {
    for (size_t i = 0; i < cover.tessellations.size(); ++i) {
        ValidationReport r = validate_tessellation(cover.host, cover.tessellations[i]);
        if (!r.ok)
            throw std::invalid_argument("tessellation " + std::to_string(i) +
                                        " invalid: " + r.violations.front());
    }

    // which underlying edges lie inside some tile of some tessellation?
    std::set<std::pair<int, int>> covered;
    for (const auto& tess : cover.tessellations)
        for (const auto& tile : tess.tiles)
            for (size_t i = 0; i < tile.vertices.size(); ++i)
                for (size_t j = i + 1; j < tile.vertices.size(); ++j) {
                    int a = tile.vertices[i], b = tile.vertices[j];
                    covered.insert({std::min(a, b), std::max(a, b)});
                }

    ValidationReport rep;
    for (const auto& [u, v] : cover.host.arcs) {
        if (!covered.count({std::min(u, v), std::max(u, v)})) {
            rep.ok = false;
            rep.violations.push_back("uncovered edge " + arc_str(u, v));
        }
    }
    return rep;
}

OrientedGraph transpose(const OrientedGraph& g) {
    OrientedGraph out;
    out.vertex_count = g.vertex_count;
    out.arcs.reserve(g.arcs.size());
    for (const auto& [u, v] : g.arcs) out.arcs.emplace_back(v, u);
    return out;
}

WalkFamily build_oriented_line(LineVariant variant, int half_window) {
    if (half_window < 2)
        throw std::invalid_argument("line half-window must be >= 2, got " +
                                    std::to_string(half_window));
    const int m = half_window;
    const int n = 2 * m;

    WalkFamily fam;
    fam.kind = variant == LineVariant::uniform ? FamilyKind::line_uniform
                                               : FamilyKind::line_alternating;
    fam.half_window = m;

    OrientedGraph g;
    g.vertex_count = n;
    Tessellation blue, red;
    for (int i = 0; i < n; i += 2) {
        int ip1 = (i + 1) % n;
        int im1 = (i - 1 + n) % n;
        g.arcs.emplace_back(i, ip1);  // A+ term |2x><2x+1|
        if (variant == LineVariant::uniform)
            g.arcs.emplace_back(im1, i);  // A- term |2x-1><2x|
        else
            g.arcs.emplace_back(i, im1);  // A- term |2x><2x-1|

        Tile b;
        b.vertices = {std::min(i, ip1), std::max(i, ip1)};
        blue.tiles.push_back(std::move(b));
        Tile r;
        r.vertices = {std::min(im1, i), std::max(im1, i)};
        red.tiles.push_back(std::move(r));
    }

    fam.cover.host = std::move(g);
    fam.cover.tessellations = {std::move(blue), std::move(red)};  // blue applied first
    return fam;
}

WalkFamily build_oriented_lattice(const LatticeSpec& spec) {
    if (spec.n <= 1)
        throw std::invalid_argument("lattice requires n > 1, got " + std::to_string(spec.n));
    const int side = spec.side();

    WalkFamily fam;
    fam.kind = FamilyKind::lattice;
    fam.n = spec.n;

    OrientedGraph g;
    g.vertex_count = spec.vertex_count();
    Tessellation xp, yp, xm, ym;
    for (int y = 0; y < side; ++y) {
        for (int x = 0; x < side; ++x) {
            int v = spec.index(x, y);
            if ((x + y) % 2 == 0) {
                // horizontal arcs leave even-parity vertices
                for (int dx : {+1, -1}) {
                    int w = spec.index(x + dx, y);
                    g.arcs.emplace_back(v, w);
                    Tile t;
                    t.vertices = {std::min(v, w), std::max(v, w)};
                    (dx > 0 ? xp : xm).tiles.push_back(std::move(t));
                }
            } else {
                // vertical arcs leave odd-parity vertices
                for (int dy : {+1, -1}) {
                    int w = spec.index(x, y + dy);
                    g.arcs.emplace_back(v, w);
                    Tile t;
                    t.vertices = {std::min(v, w), std::max(v, w)};
                    (dy > 0 ? yp : ym).tiles.push_back(std::move(t));
                }
            }
        }
    }

    fam.cover.host = std::move(g);
    // application order x+, y+, x-, y- (the displayed product read right to left)
    fam.cover.tessellations = {std::move(xp), std::move(yp), std::move(xm), std::move(ym)};
    return fam;
}

}  // namespace oqw
