#include <cmath>
#include <sstream>

#include "ukm/error.hpp"
#include "ukm/harness.hpp"

namespace ukm {

namespace {

bool is_timing(const std::string& name) {
  return name.size() > 3 && name.compare(name.size() - 3, 3, "_ms") == 0;
}

void write_cell(std::ostream& out, const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) {
    out << cell;
    return;
  }
  out << '"';
  for (char c : cell) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

}  // namespace

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  fail(ErrorCode::invalid_input, "no column named '" + name + "'");
}

std::string CsvTable::to_string() const {
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      write_cell(out, cells[i]);
    }
    out << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out.str();
}

CsvTable CsvTable::without_timings() const {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (!is_timing(header[i])) keep.push_back(i);
  }
  CsvTable t;
  for (auto i : keep) t.header.push_back(header[i]);
  for (const auto& r : rows) {
    std::vector<std::string> out;
    for (auto i : keep) out.push_back(i < r.size() ? r[i] : "");
    t.rows.push_back(std::move(out));
  }
  return t;
}

CsvTable CsvTable::parse(const std::string& text) {
  std::vector<std::vector<std::string>> lines;
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false, any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
      continue;
    }
    any = true;
    if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
    } else if (c == '\n') {
      cells.push_back(std::move(cell));
      cell.clear();
      lines.push_back(std::move(cells));
      cells.clear();
      any = false;
    } else if (c != '\r') {
      cell += c;
    }
  }
  require(!quoted, "unterminated quoted CSV cell");
  if (any) {
    cells.push_back(std::move(cell));
    lines.push_back(std::move(cells));
  }
  require(!lines.empty(), "CSV text has no header row");
  CsvTable t;
  t.header = std::move(lines.front());
  t.rows.assign(std::make_move_iterator(lines.begin() + 1), std::make_move_iterator(lines.end()));
  return t;
}

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return format_double(v);
}

std::string csv_flag(bool v) { return v ? "1" : "0"; }

}  // namespace ukm
