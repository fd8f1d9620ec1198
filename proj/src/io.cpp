#include "kcross/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace kcross {

namespace {

std::string strip(std::string line) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = line.find_last_not_of(" \t\r");
    return line.substr(first, last - first + 1);
}

template <class T>
std::vector<T> parse_fields(const std::string& text, std::size_t expected, std::size_t line_no) {
    std::istringstream fields(text);
    std::vector<T> values;
    T value{};
    while (fields >> value) values.push_back(value);
    if (!fields.eof() || values.size() != expected) {
        throw ParseError("expected " + std::to_string(expected) + " integers, got \"" + text + "\"", line_no);
    }
    return values;
}

// Reads points until EOF or the EDGES marker; returns true if the marker was seen.
bool read_point_section(std::istream& in, std::vector<Point>& points, std::size_t& line_no) {
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = strip(raw);
        if (line.empty()) continue;
        if (line == "EDGES") return true;
        const auto xy = parse_fields<long long>(line, 2, line_no);
        points.push_back({xy[0], xy[1]});
    }
    return false;
}

} // namespace

std::vector<Point> read_points(std::istream& in) {
    std::vector<Point> points;
    std::size_t line_no = 0;
    if (read_point_section(in, points, line_no)) {
        throw ParseError("unexpected EDGES marker in a point-set file", line_no);
    }
    return points;
}

PointSet read_point_set(std::istream& in) { return PointSet(read_points(in)); }

GeometricGraph read_graph(std::istream& in) {
    std::vector<Point> points;
    std::size_t line_no = 0;
    const bool has_edges = read_point_section(in, points, line_no);
    std::vector<Edge> edges;
    if (has_edges) {
        std::string raw;
        while (std::getline(in, raw)) {
            ++line_no;
            const auto line = strip(raw);
            if (line.empty()) continue;
            const auto ij = parse_fields<long long>(line, 2, line_no);
            if (ij[0] < 0 || ij[1] < 0) throw ParseError("negative vertex id", line_no);
            edges.push_back({static_cast<VertexId>(ij[0]), static_cast<VertexId>(ij[1])});
        }
    }
    return GeometricGraph(PointSet(std::move(points)), std::move(edges));
}

std::vector<std::vector<VertexId>> read_parts(std::istream& in) {
    std::vector<std::vector<VertexId>> parts;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = strip(raw);
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::vector<VertexId> part;
        long long id = 0;
        while (fields >> id) {
            if (id < 0) throw ParseError("negative vertex id", line_no);
            part.push_back(static_cast<VertexId>(id));
        }
        if (!fields.eof()) throw ParseError("malformed part \"" + line + "\"", line_no);
        parts.push_back(std::move(part));
    }
    return parts;
}

void write_point_set(std::ostream& out, const PointSet& points) {
    for (const auto& p : points.points()) out << p.x << ' ' << p.y << '\n';
}

void write_graph(std::ostream& out, const GeometricGraph& g) {
    out << "# " << g.vertex_count() << " vertices, " << g.edge_count() << " edges\n";
    write_point_set(out, g.vertices());
    out << "EDGES\n";
    for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

GeometricGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_graph(in);
}

void save_graph(const std::string& path, const GeometricGraph& g) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_graph(out, g);
}

} // namespace kcross
