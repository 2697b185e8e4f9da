#include "gravdg/field_io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "gravdg/errors.hpp"

namespace gravdg {

std::string field_csv_header(int dim) {
  return dim == 1 ? "x,cell,i1,rho,mom_x,energy" : "x,y,cell,i1,j1,rho,mom_x,mom_y,energy";
}

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  return os;
}

}  // namespace

std::vector<std::array<double, 1>> node_coordinates(const Mesh1D& mesh, const LobattoOperators& ops) {
  std::vector<std::array<double, 1>> out;
  out.reserve(static_cast<size_t>(mesh.n_cells) * ops.size());
  for (int c = 0; c < mesh.n_cells; ++c)
    for (int i = 0; i < ops.size(); ++i) out.push_back({mesh.node_x(c, ops.nodes[i])});
  return out;
}

std::vector<std::array<double, 2>> node_coordinates(const Mesh2D& mesh, const LobattoOperators& ops) {
  std::vector<std::array<double, 2>> out;
  const int n = ops.size();
  out.reserve(static_cast<size_t>(mesh.n_cells()) * n * n);
  for (int c = 0; c < mesh.n_cells(); ++c)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) out.push_back({mesh.node_x(c, ops.nodes[i]), mesh.node_y(c, ops.nodes[j])});
  return out;
}

void write_field_csv(const std::string& path, const NodalField<1>& field, const Mesh1D& mesh,
                     const LobattoOperators& ops) {
  auto os = open_out(path);
  os << field_csv_header(1) << '\n';
  for (int c = 0; c < field.n_cells; ++c)
    for (int i = 0; i < ops.size(); ++i) {
      const auto& u = field.at(c, i);
      os << fmt17(mesh.node_x(c, ops.nodes[i])) << ',' << c << ',' << i << ',' << fmt17(u[0]) << ','
         << fmt17(u[1]) << ',' << fmt17(u[2]) << '\n';
    }
}

void write_field_csv(const std::string& path, const NodalField<2>& field, const Mesh2D& mesh,
                     const LobattoOperators& ops) {
  auto os = open_out(path);
  os << field_csv_header(2) << '\n';
  const int n = ops.size();
  for (int c = 0; c < field.n_cells; ++c)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const auto& u = field.at(c, j * n + i);
        os << fmt17(mesh.node_x(c, ops.nodes[i])) << ',' << fmt17(mesh.node_y(c, ops.nodes[j])) << ','
           << c << ',' << i << ',' << j << ',' << fmt17(u[0]) << ',' << fmt17(u[1]) << ','
           << fmt17(u[2]) << ',' << fmt17(u[3]) << '\n';
      }
}

template <int D>
FieldFile<D> read_field_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ParseError("cannot open " + path, 0);
  std::string line;
  if (!std::getline(is, line)) throw ParseError("empty file " + path, 1);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != field_csv_header(D))
    throw ParseError("header mismatch: expected '" + field_csv_header(D) + "'", 1);

  constexpr int kCols = D == 1 ? 6 : 9;
  struct Row {
    std::array<double, kCols> v;
  };
  std::vector<Row> rows;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    Row r;
    std::stringstream ss(line);
    std::string tok;
    int col = 0;
    while (std::getline(ss, tok, ',')) {
      if (col >= kCols) throw ParseError("too many columns", lineno);
      char* end = nullptr;
      errno = 0;
      const double v = std::strtod(tok.c_str(), &end);
      if (tok.empty() || *end != '\0' || errno == ERANGE) throw ParseError("bad number '" + tok + "'", lineno);
      r.v[col++] = v;
    }
    if (col != kCols) throw ParseError("expected " + std::to_string(kCols) + " columns", lineno);
    rows.push_back(r);
  }
  if (rows.empty()) throw ParseError("no data rows", lineno);

  // Node count per cell from the first cell's rows.
  const int cell_col = D;
  int per_cell = 0;
  while (per_cell < static_cast<int>(rows.size()) && rows[per_cell].v[cell_col] == rows[0].v[cell_col]) ++per_cell;
  int k = -1;
  if constexpr (D == 1) {
    k = per_cell - 1;
  } else {
    for (int m = 1; m <= kMaxDegree; ++m)
      if ((m + 1) * (m + 1) == per_cell) k = m;
  }
  if (k < 1 || rows.size() % per_cell != 0) throw ParseError("inconsistent nodes per cell", 2);
  const int n_cells = static_cast<int>(rows.size() / per_cell);

  FieldFile<D> out;
  out.field = NodalField<D>(n_cells, k);
  out.coords.resize(rows.size());
  for (size_t r = 0; r < rows.size(); ++r) {
    const auto& v = rows[r].v;
    const int expect_cell = static_cast<int>(r / per_cell);
    const int node = static_cast<int>(r % per_cell);
    const int ln = static_cast<int>(r) + 2;
    if (v[cell_col] != expect_cell) throw ParseError("unexpected cell index", ln);
    if constexpr (D == 1) {
      if (v[2] != node) throw ParseError("unexpected node index", ln);
    } else {
      if (v[3] != node % (k + 1) || v[4] != node / (k + 1)) throw ParseError("unexpected node index", ln);
    }
    for (int d = 0; d < D; ++d) out.coords[r][d] = v[d];
    const int first = D == 1 ? 3 : 5;
    for (int c = 0; c < State<D>::kSize; ++c) out.field.values[r].q[c] = v[first + c];
  }
  return out;
}

template FieldFile<1> read_field_csv<1>(const std::string&);
template FieldFile<2> read_field_csv<2>(const std::string&);

}  // namespace gravdg
