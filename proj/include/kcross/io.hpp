#pragma once

#include "kcross/graph.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace kcross {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Point-set files: one "x y" per line, '#' starts a comment, blank lines ignored.
// Graph files: a point-set section, a line "EDGES", then one "i j" per line.
// Coloring files: one "i j c" per edge, in edge order.

std::vector<Point> read_points(std::istream& in);
PointSet read_point_set(std::istream& in);
GeometricGraph read_graph(std::istream& in);
std::vector<std::vector<VertexId>> read_parts(std::istream& in);

void write_point_set(std::ostream& out, const PointSet& points);
void write_graph(std::ostream& out, const GeometricGraph& g);

GeometricGraph load_graph(const std::string& path);
void save_graph(const std::string& path, const GeometricGraph& g);

} // namespace kcross
