#pragma once

// Nodal field CSV: header `x[,y],cell,i1[,j1],rho,mom_x[,mom_y],energy`,
// rows ordered by cell then node, 17 significant digits.

#include <array>
#include <string>
#include <vector>

#include "gravdg/field.hpp"
#include "gravdg/mesh.hpp"
#include "gravdg/sbp.hpp"

namespace gravdg {

template <int D>
struct FieldFile {
  NodalField<D> field;
  std::vector<std::array<double, D>> coords;  ///< per node, same order as field.values
};

std::string field_csv_header(int dim);

void write_field_csv(const std::string& path, const NodalField<1>& field, const Mesh1D& mesh,
                     const LobattoOperators& ops);
void write_field_csv(const std::string& path, const NodalField<2>& field, const Mesh2D& mesh,
                     const LobattoOperators& ops);

/// Reads a field written by write_field_csv. Throws ParseError (with line) on a header
/// mismatch, wrong column count, bad number, or inconsistent cell/node indices.
template <int D>
FieldFile<D> read_field_csv(const std::string& path);

/// Node coordinates in field order.
std::vector<std::array<double, 1>> node_coordinates(const Mesh1D& mesh, const LobattoOperators& ops);
std::vector<std::array<double, 2>> node_coordinates(const Mesh2D& mesh, const LobattoOperators& ops);

}  // namespace gravdg
