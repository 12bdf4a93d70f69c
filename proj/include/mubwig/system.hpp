#pragma once
// One MUB construction bundled with its phase-space geometry: the field, the
// point dictionary, the expanded generator table, the eigenbases, the
// striations, and the two lookups everything downstream keeps asking for
// (which striation owns a Pauli class, which line of a striation passes
// through a point).
//
// The Field sits behind a shared_ptr so the TranslationMap's back-pointer
// survives copies and moves of the bundle.

#include <memory>
#include <string>
#include <vector>

#include "mubwig/mubtab.hpp"
#include "mubwig/phasespace.hpp"

namespace mubwig {

struct MubSystem {
  std::shared_ptr<const Field> field;
  TranslationMap map;
  GeneratorTable table;
  std::vector<MubBasis> bases;        // one per row, same order
  std::vector<Striation> striations;  // canonical coset partitions, row order
  std::string label;                  // fixture id, file path, or "custom"

  // [class_key] -> owning row, -1 for the identity class
  std::vector<int> row_of_class;
  // [row][point_index] -> index into striations[row].lines
  std::vector<std::vector<int>> line_of_point;

  int n() const { return field->degree(); }
  int dim() const { return 1 << field->degree(); }
  int rows() const { return static_cast<int>(table.rows.size()); }
  int points() const { return dim() * dim(); }

  int row_of(const PauliString& p) const { return row_of_class[class_key(p)]; }
  int line_through(int row, const PhasePoint& p) const {
    return line_of_point[row][map.point_index(p)];
  }
};

// Validates the table (throwing std::invalid_argument with the first failure)
// and builds bases, striations, and lookups.
MubSystem make_system(GeneratorTable table, std::string label = "custom");

// Accepts a named seed fixture (table1, table2a..table2e, table3..table6) or
// a path to a seed file holding the two generator rows.
MubSystem load_system(const std::string& spec);

// Single-generator tables whose rows are the affine line pencil of the small
// fields: n=1 gives {Z},{X},{Y}; n=2 the five GF(4) slope groups.  These are
// the systems small enough for exhaustive net enumeration.
MubSystem ray_system(int n);

}  // namespace mubwig
