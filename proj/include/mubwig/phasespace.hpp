#pragma once
// Discrete phase space over GF(2^n).
//
// A self-dual basis d_1..d_n ties Pauli translations to grid points: an X
// factor on qubit i adds d_i to the horizontal coordinate alpha, a Z factor
// adds d_i to the vertical coordinate beta.  Phase-free multiplication turns
// into componentwise field addition, so each table row group sweeps out an
// order-2^n additive subgroup ("homogeneous curve"), and its cosets tile the
// grid as one striation of parallel lines.
//
// Grid conventions, used by every renderer and fixture: columns left to
// right and rows bottom to top follow the axis order 0, 1, u, u^2, ..., the
// origin cell prints "o", and published grids label the row-1 striation "2"
// and the row-2 striation "1" (rows >= 3 keep their index).

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "mubwig/field.hpp"
#include "mubwig/mubtab.hpp"
#include "mubwig/pauli.hpp"

namespace mubwig {

struct PhasePoint {
  FieldElement alpha, beta;
  friend bool operator==(const PhasePoint&, const PhasePoint&) = default;
  friend auto operator<=>(const PhasePoint&, const PhasePoint&) = default;
};

// Pauli class <-> phase-space point dictionary for one field + basis choice.
class TranslationMap {
 public:
  explicit TranslationMap(const Field& f);                      // default self-dual basis
  TranslationMap(const Field& f, std::vector<FieldElement> basis);

  const Field& field() const { return *field_; }
  const std::vector<FieldElement>& basis() const { return basis_; }

  PhasePoint to_point(const PauliString& p) const;
  PauliString to_op(const PhasePoint& pt) const;  // Hermitian representative

  // Grid bookkeeping: 0 -> 0, u^k -> k+1; scan index = row-major from the
  // bottom-left corner, matching rendered output read bottom-up.
  int axis_index(const FieldElement& e) const;
  FieldElement axis_element(int index) const;
  int point_index(const PhasePoint& pt) const;
  PhasePoint point_at(int index) const;
  std::vector<PhasePoint> all_points() const;

  PhasePoint add(const PhasePoint& a, const PhasePoint& b) const;

 private:
  const Field* field_;
  std::vector<FieldElement> basis_;
};

struct Curve {
  int row = -1;                     // generating table row (0-based), -1 = free-standing
  std::vector<PhasePoint> points;   // sorted by scan index
  std::vector<PhasePoint> generators;  // images of the row's chosen generators
};

struct Striation {
  int row = -1;
  Curve ray;                  // the homogeneous curve (contains the origin)
  std::vector<Curve> lines;   // 2^n cosets, ray first, then sorted by anchor
};

// Image of a row group plus the origin; throws std::invalid_argument if the
// images are not 2^n distinct points or fail closure under addition.
Curve curve_from_row(const std::vector<PauliString>& row, const TranslationMap& map);

// Cosets of `ray` under all sums of `shifts`; throws if that yields fewer
// than 2^n distinct cosets or they fail to tile the grid.
Striation striation_from_curve(const Curve& ray, const std::vector<PhasePoint>& shifts,
                               const TranslationMap& map);

// Canonical striations of a table: coset partition of each row's curve,
// independent of any shift choice.
std::vector<Striation> table_striations(const GeneratorTable& t, const TranslationMap& map);

struct GeometryReport {
  bool pass = false;
  std::vector<std::string> failures;
};
// Partition per striation, exactly-one crossing for lines of different
// striations, rays meeting only at the origin, 2^n+1 lines through each point.
GeometryReport verify_geometry(const std::vector<Striation>& striations,
                               const TranslationMap& map);

// beta = c1*alpha + c2*alpha^2 + c4*alpha^4
struct ExplicitForm {
  FieldElement c1, c2, c4;
};
// beta^2 + t*beta = u*alpha^2 + v*alpha (shape of the published relations)
struct ImplicitForm {
  FieldElement t, u, v;
};
// alpha = nu1*k + nu2*k^2 + nu3*k^4, beta likewise with eta, k over the field
struct ParametricForm {
  std::array<FieldElement, 3> nu, eta;
};

struct CurveFormReport {
  bool vertical = false;    // alpha identically zero
  bool horizontal = false;  // beta identically zero
  bool functional = false;  // alpha takes 2^n distinct values
  std::optional<FieldElement> slope;      // beta = slope*alpha, when linear
  std::optional<ExplicitForm> fitted;     // present iff functional
};
CurveFormReport fit_curve_forms(const Curve& curve, const Field& f);

// Violation counts let callers report printed equations without asserting.
int count_explicit_misses(const Curve& curve, const ExplicitForm& form, const Field& f);
int count_implicit_misses(const Curve& curve, const ImplicitForm& form, const Field& f);
std::vector<PhasePoint> implicit_solutions(const ImplicitForm& form, const Field& f);
std::vector<PhasePoint> parametric_orbit(const ParametricForm& form, const Field& f);

enum class GridLabels {
  paper,   // rows 1 and 2 print as "2" and "1" (published convention)
  by_row,  // row k prints as k
};

// 2^n text lines, top row beta = u^(2^n - 2) down to beta = 0, cells separated
// by single spaces; the common point of the depicted curves prints "o".
// `displacement` shifts every homogeneous curve; omitted = show the rays.
std::string render_grid(const std::vector<Striation>& striations, const TranslationMap& map,
                        GridLabels labels = GridLabels::paper,
                        std::optional<PhasePoint> displacement = std::nullopt);

struct GridDiff {
  int total = 0;                       // cells compared
  int matches = 0;                     // identical before any relabeling
  std::vector<std::string> mismatches; // "(alpha,beta): ours L, theirs M"
  std::array<int, 10> relabel{};       // best label map ours->theirs, [1..9]
  bool relabel_is_identity = true;
  int relabeled_matches = 0;
  std::vector<std::string> residual;   // mismatches that survive relabeling
};
// Cell-level comparison of two rendered grids (same shape, tokens "o"/1..9).
// Also reports the best cell-overlap label matching, to separate systematic
// renumbering from genuine per-cell disagreements.
GridDiff diff_grids(const std::string& ours, const std::string& theirs,
                    const TranslationMap& map);

}  // namespace mubwig
