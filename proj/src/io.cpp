#include "oqw/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace oqw {

namespace {

using nlohmann::json;

WalkFamily family_from_json(const json& doc, bool validate) {
    if (!doc.is_object()) throw std::invalid_argument("graph document must be a JSON object");
    if (!doc.contains("vertex_count") || !doc["vertex_count"].is_number_integer())
        throw std::invalid_argument("missing integer field 'vertex_count'");
    if (!doc.contains("arcs") || !doc["arcs"].is_array())
        throw std::invalid_argument("missing array field 'arcs'");

    WalkFamily fam;
    fam.kind = FamilyKind::custom;
    fam.cover.host.vertex_count = doc["vertex_count"].get<int>();
    if (fam.cover.host.vertex_count < 0)
        throw std::invalid_argument("vertex_count must be non-negative");

    for (const auto& arc : doc["arcs"]) {
        if (!arc.is_array() || arc.size() != 2 || !arc[0].is_number_integer() ||
            !arc[1].is_number_integer())
            throw std::invalid_argument("each arc must be a pair [u, v] of integers");
        fam.cover.host.arcs.emplace_back(arc[0].get<int>(), arc[1].get<int>());
    }

    if (validate) {
        ValidationReport rep = validate_oriented(fam.cover.host);
        if (!rep.ok) throw std::invalid_argument(rep.violations.front());
    }

    if (doc.contains("tessellations")) {
        if (!doc["tessellations"].is_array())
            throw std::invalid_argument("'tessellations' must be an array");
        for (const auto& jtess : doc["tessellations"]) {
            if (!jtess.is_array())
                throw std::invalid_argument("each tessellation must be an array of tiles");
            Tessellation tess;
            for (const auto& jtile : jtess) {
                if (!jtile.is_array() || jtile.empty())
                    throw std::invalid_argument("each tile must be a non-empty array of vertices");
                Tile tile;
                for (const auto& v : jtile) {
                    if (!v.is_number_integer())
                        throw std::invalid_argument("tile vertices must be integers");
                    tile.vertices.push_back(v.get<int>());
                }
                std::sort(tile.vertices.begin(), tile.vertices.end());
                tess.tiles.push_back(std::move(tile));
            }
            fam.cover.tessellations.push_back(std::move(tess));
        }
        if (validate) {
            for (size_t i = 0; i < fam.cover.tessellations.size(); ++i) {
                ValidationReport tr =
                    validate_tessellation(fam.cover.host, fam.cover.tessellations[i]);
                if (!tr.ok)
                    throw std::invalid_argument("tessellation " + std::to_string(i) + ": " +
                                                tr.violations.front());
            }
        }
    }
    return fam;
}

}  // namespace

WalkFamily load_family_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return family_from_json_text(buf.str());
}

WalkFamily family_from_json_text(const std::string& text, bool validate) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
    }
    return family_from_json(doc, validate);
}

std::string family_to_json_text(const TessellationCover& cover) {
    json doc;
    doc["vertex_count"] = cover.host.vertex_count;
    doc["arcs"] = json::array();
    for (const auto& [u, v] : cover.host.arcs) doc["arcs"].push_back({u, v});
    doc["tessellations"] = json::array();
    for (const auto& tess : cover.tessellations) {
        json jtess = json::array();
        for (const auto& tile : tess.tiles) jtess.push_back(tile.vertices);
        doc["tessellations"].push_back(jtess);
    }
    return doc.dump(2) + "\n";
}

std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::string>& rows) {
    std::ofstream out(path, std::ios::binary);  // binary: "\n" stays "\n"
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << header << "\n";
    for (const auto& row : rows) out << row << "\n";
    if (!out) throw std::invalid_argument("write failed for " + path);
}

namespace {

// number | pi, combined with * and /, optional leading sign
struct AngleParser {
    const std::string& s;
    size_t pos = 0;

    explicit AngleParser(const std::string& text) : s(text) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    double factor() {
        skip_ws();
        if (pos + 2 <= s.size() && (s.compare(pos, 2, "pi") == 0 || s.compare(pos, 2, "PI") == 0)) {
            pos += 2;
            return std::numbers::pi;
        }
        size_t start = pos;
        while (pos < s.size() &&
               (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.' ||
                s[pos] == 'e' || s[pos] == 'E' ||
                ((s[pos] == '+' || s[pos] == '-') && pos > start &&
                 (s[pos - 1] == 'e' || s[pos - 1] == 'E'))))
            ++pos;
        if (pos == start) throw std::invalid_argument("bad angle expression: '" + s + "'");
        try {
            return std::stod(s.substr(start, pos - start));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad number in angle expression: '" + s + "'");
        }
    }

    double parse() {
        skip_ws();
        double sign = 1.0;
        while (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
            if (s[pos] == '-') sign = -sign;
            ++pos;
            skip_ws();
        }
        double v = factor();
        for (;;) {
            skip_ws();
            if (pos < s.size() && s[pos] == '*') {
                ++pos;
                v *= factor();
            } else if (pos < s.size() && s[pos] == '/') {
                ++pos;
                double d = factor();
                if (d == 0.0) throw std::invalid_argument("division by zero in angle expression");
                v /= d;
            } else {
                break;
            }
        }
        skip_ws();
        if (pos != s.size()) throw std::invalid_argument("bad angle expression: '" + s + "'");
        return sign * v;
    }
};

}  // namespace

double parse_angle(const std::string& text) {
    AngleParser p(text);
    return p.parse();
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<std::string> parts;
    size_t start = 0;
    for (size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == ':') {
            parts.push_back(text.substr(start, i - start));
            start = i + 1;
        }
    }
    if (parts.size() == 1) return {parse_angle(parts[0])};
    if (parts.size() != 3)
        throw std::invalid_argument("grid must be 'a:b:step' or a single value, got '" + text +
                                    "'");
    const double a = parse_angle(parts[0]);
    const double b = parse_angle(parts[1]);
    const double step = parse_angle(parts[2]);
    if (step <= 0) throw std::invalid_argument("grid step must be positive");
    if (b < a) throw std::invalid_argument("grid end below start");

    // a, a+step, ..., up through b (inclusive within a relative fuzz, so
    // "0:3.1415927:0.19634954" yields all 17 points)
    const long count = static_cast<long>(std::floor((b - a) / step + 1e-6)) + 1;
    std::vector<double> grid;
    grid.reserve(count);
    for (long i = 0; i < count; ++i) grid.push_back(a + i * step);
    return grid;
}

}  // namespace oqw
