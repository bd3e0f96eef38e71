#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "ukm/error.hpp"
#include "ukm/metric_io.hpp"

namespace ukm {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool parse_number(std::string_view s, double& out) {
  s = trim(s);
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

// Splits on commas; returns false if any field is not a number.
bool parse_csv_row(std::string_view line, std::vector<double>& out) {
  out.clear();
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    const auto field = line.substr(start, comma == std::string_view::npos
                                              ? std::string_view::npos
                                              : comma - start);
    double v = 0.0;
    if (!parse_number(field, v)) return false;
    out.push_back(v);
    if (comma == std::string_view::npos) return true;
    start = comma + 1;
  }
}

std::vector<std::vector<double>> read_numeric_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::vector<double> row;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    if (!parse_csv_row(line, row)) {
      if (rows.empty() && lineno == 1) continue;  // header
      fail(ErrorCode::invalid_input,
           "non-numeric field on line " + std::to_string(lineno));
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      fail(ErrorCode::invalid_input, "ragged row on line " + std::to_string(lineno));
    }
    rows.push_back(row);
  }
  require(!rows.empty(), "input contains no data rows");
  return rows;
}

}  // namespace

InputFormat parse_input_format(const std::string& name) {
  if (name == "csv") return InputFormat::csv;
  if (name == "edges") return InputFormat::edges;
  if (name == "matrix") return InputFormat::matrix;
  fail(ErrorCode::invalid_input, "unknown input format '" + name + "'");
}

std::shared_ptr<const EuclideanSpace> read_euclidean_csv(std::istream& in) {
  const auto rows = read_numeric_csv(in);
  return std::make_shared<EuclideanSpace>(rows.front().size(), rows);
}

std::shared_ptr<const GraphSpace> read_edge_list(std::istream& in,
                                                 std::size_t num_vertices) {
  std::vector<Edge> edges;
  std::string line;
  std::size_t lineno = 0;
  std::size_t max_id = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::istringstream fields{std::string(t)};
    long long u = -1, v = -1;
    double w = 0.0;
    std::string rest;
    if (!(fields >> u >> v >> w) || (fields >> rest) || u < 0 || v < 0) {
      fail(ErrorCode::invalid_input, "malformed edge on line " + std::to_string(lineno));
    }
    edges.push_back({static_cast<PointId>(u), static_cast<PointId>(v), w});
    max_id = std::max<std::size_t>(max_id, std::max(u, v));
  }
  require(!edges.empty(), "edge list is empty");
  const std::size_t n = num_vertices ? num_vertices : max_id + 1;
  return std::make_shared<GraphSpace>(n, edges);
}

std::shared_ptr<const MatrixSpace> read_distance_matrix(std::istream& in,
                                                        bool check_triangle) {
  const auto rows = read_numeric_csv(in);
  const std::size_t n = rows.size();
  require(rows.front().size() == n, "distance matrix must be square");
  std::vector<double> table;
  table.reserve(n * n);
  for (const auto& r : rows) table.insert(table.end(), r.begin(), r.end());
  return std::make_shared<MatrixSpace>(n, std::move(table), check_triangle);
}

std::shared_ptr<const MetricBackend> load_backend(const std::string& path,
                                                  InputFormat format) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "cannot open '" + path + "'");
  switch (format) {
    case InputFormat::csv: return read_euclidean_csv(in);
    case InputFormat::edges: return read_edge_list(in);
    case InputFormat::matrix: return read_distance_matrix(in);
  }
  fail(ErrorCode::invalid_input, "unknown input format");
}

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void write_euclidean_csv(std::ostream& out, const EuclideanSpace& space) {
  for (PointId i = 0; i < space.size(); ++i) {
    for (std::size_t d = 0; d < space.dimension(); ++d) {
      if (d) out << ',';
      out << format_double(space.coordinate(i, d));
    }
    out << '\n';
  }
}

void write_edge_list(std::ostream& out, const GraphSpace& graph) {
  for (const Edge& e : graph.edges()) {
    out << e.u << ' ' << e.v << ' ' << format_double(e.w) << '\n';
  }
}

void write_distance_matrix(std::ostream& out, const MatrixSpace& matrix) {
  for (PointId i = 0; i < matrix.size(); ++i) {
    const auto r = matrix.table_row(i);
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (j) out << ',';
      out << format_double(r[j]);
    }
    out << '\n';
  }
}

}  // namespace ukm
