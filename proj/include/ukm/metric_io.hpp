#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "ukm/metric.hpp"

namespace ukm {

enum class InputFormat { csv, edges, matrix };

InputFormat parse_input_format(const std::string& name);

// Euclidean points: one row per point, numeric columns only. A first row that
// does not parse as numbers is treated as a header.
std::shared_ptr<const EuclideanSpace> read_euclidean_csv(std::istream& in);

// Undirected edge list: `u v w` per line, 0-based ids, positive weights.
// Blank lines and lines starting with '#' are skipped. The vertex count is
// one past the largest id unless given explicitly.
std::shared_ptr<const GraphSpace> read_edge_list(std::istream& in,
                                                 std::size_t num_vertices = 0);

// n x n CSV distance table.
std::shared_ptr<const MatrixSpace> read_distance_matrix(
    std::istream& in, bool check_triangle = false);

std::shared_ptr<const MetricBackend> load_backend(const std::string& path,
                                                  InputFormat format);

void write_euclidean_csv(std::ostream& out, const EuclideanSpace& space);
void write_edge_list(std::ostream& out, const GraphSpace& graph);
void write_distance_matrix(std::ostream& out, const MatrixSpace& matrix);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

}  // namespace ukm
