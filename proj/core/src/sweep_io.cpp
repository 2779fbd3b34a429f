#include <cstdio>
#include <map>
#include <sstream>
#include <string>

#include "capamp/errors.hpp"
#include "capamp/thresholds.hpp"

namespace capamp {

namespace {

std::string number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  return out;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InvalidSpec("bad number in CSV: '" + s + "'");
  }
  if (used != s.size()) throw InvalidSpec("bad number in CSV: '" + s + "'");
  return v;
}

}  // namespace

std::string to_csv(const SweepGrid& grid) {
  const bool depol = grid.kind == MarginKind::Depolarizing;
  std::string out = grid.axis1 + "," + grid.axis2 + ",margin" + (depol ? ",case" : "") + "\n";
  for (std::size_t i = 0; i < grid.rows(); ++i) {
    for (std::size_t j = 0; j < grid.cols(); ++j) {
      const std::size_t k = i * grid.cols() + j;
      out += number(grid.axis1_values[i]) + "," + number(grid.axis2_values[j]) + "," +
             number(grid.margins[k]);
      if (depol) out += "," + std::to_string(grid.cases[k]);
      out += "\n";
    }
  }
  return out;
}

SweepGrid parse_csv(const std::string& text, int d) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw InvalidSpec("empty CSV");
  SweepGrid g;
  g.d = d;
  if (line == "lambda,q,margin") {
    g.kind = MarginKind::Erasure;
    g.axis1 = "lambda";
  } else if (line == "p,q,margin,case") {
    g.kind = MarginKind::Depolarizing;
    g.axis1 = "p";
  } else {
    throw InvalidSpec("unknown CSV header '" + line + "'");
  }
  g.axis2 = "q";
  const std::size_t width = g.kind == MarginKind::Depolarizing ? 4 : 3;

  std::map<double, std::size_t> rows, cols;
  struct Cell {
    double a1, a2, m;
    int c;
  };
  std::vector<Cell> cells;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = split(line);
    if (f.size() != width) throw InvalidSpec("CSV row has the wrong number of fields");
    Cell c{parse_double(f[0]), parse_double(f[1]), parse_double(f[2]), 0};
    if (width == 4) c.c = static_cast<int>(parse_double(f[3]));
    rows.emplace(c.a1, 0);
    cols.emplace(c.a2, 0);
    cells.push_back(c);
  }
  if (cells.size() != rows.size() * cols.size()) throw InvalidSpec("CSV does not describe a full grid");
  for (auto& [v, idx] : rows) {
    idx = g.axis1_values.size();
    g.axis1_values.push_back(v);
  }
  for (auto& [v, idx] : cols) {
    idx = g.axis2_values.size();
    g.axis2_values.push_back(v);
  }
  g.margins.assign(cells.size(), 0.0);
  if (width == 4) g.cases.assign(cells.size(), 0);
  std::vector<bool> seen(cells.size(), false);
  for (const Cell& c : cells) {
    const std::size_t k = rows[c.a1] * cols.size() + cols[c.a2];
    if (seen[k]) throw InvalidSpec("duplicate CSV cell");
    seen[k] = true;
    g.margins[k] = c.m;
    if (width == 4) g.cases[k] = c.c;
  }
  return g;
}

}  // namespace capamp
