#pragma once
// Generator tables for complete sets of mutually unbiased bases (MUBs).
//
// A table for n qubits has 2^n + 1 rows of 2^n - 1 commuting Pauli classes;
// the rows partition the non-identity classes, and each row's joint eigenbases
// form one basis of the MUB set.  For three qubits a full 9x7 table grows out
// of a 2x3 seed:
//   - rows 1 and 2 extend by the cyclic rule  O[r][c] = O[r][c-2] * O[r][c-3]
//     (1-based columns mod 7), enumerating each row group's non-identity part;
//   - rows 3..9 are the cross products  O[r][c] = O[2][c] * O[1][c + r - 3]
//     (column shift mod 7).
// All products are phase-free; cells are stored as Hermitian representatives.
//
// Row/label bookkeeping is 0-based in code, 1-based in rendered output.

#include <array>
#include <string>
#include <vector>

#include "mubwig/dense.hpp"
#include "mubwig/exec.hpp"
#include "mubwig/pauli.hpp"

namespace mubwig {

struct SeedTable {
  std::array<std::array<PauliString, 3>, 2> rows;
};

struct GeneratorTable {
  int n = 3;
  std::vector<std::vector<PauliString>> rows;  // (2^n+1) x (2^n-1)
};

SeedTable parse_seed(const std::string& text);  // two lines of Pauli strings
std::string format_seed(const SeedTable& seed);

// Throws std::invalid_argument if seed rows fail to commute or be independent.
GeneratorTable expand_seed(const SeedTable& seed);

struct TableCheck {
  bool pass = false;
  std::vector<std::string> failures;
};
// Row groups abelian and of full rank, cells phase-free-distinct, rows
// partition the non-identity classes.
TableCheck validate_table(const GeneratorTable& t);

struct MubBasis {
  std::vector<PauliString> generators;  // n independent row members
  std::vector<Matrix> projectors;       // 2^n rank-1 projectors
};
// State j has generator i sign +1 iff bit (n-1-i) of j is 0, so j=0 is the
// all-plus state; for a z-type row that is the computational |0...0>.
MubBasis eigenbasis(const std::vector<PauliString>& row,
                    const std::vector<PauliString>* generators = nullptr);
std::vector<MubBasis> table_bases(const GeneratorTable& t);

struct MubReport {
  bool pass = false;
  double max_dev = 0;       // worst |overlap - 1/2^n| across cross-basis pairs
  double max_self_dev = 0;  // worst orthonormality defect within a basis
  long long pairs = 0;      // cross-basis vector pairs checked
};
MubReport verify_mub(const std::vector<MubBasis>& bases, Exec ex = Exec::par);

enum class SepClass { triseparable, biseparable, nonseparable };
const char* to_string(SepClass c);

// Classification by purity of the three single-qubit reductions; all eight
// basis states must agree (they are Pauli translates of each other).
SepClass classify_separability(const MubBasis& basis);
// Independent oracle: Schmidt ranks across the three 1|2 bipartitions.
SepClass classify_by_schmidt(const MubBasis& basis);

// Counts (triseparable, biseparable, nonseparable) over the table's rows.
std::array<int, 3> structure_signature(const GeneratorTable& t);
std::string signature_string(const std::array<int, 3>& sig);  // "(2,3,4)"

// Seed shapes that can be enumerated exhaustively.
enum class SeedPattern {
  single_single,  // row 1 orders {ZII,IZI,IIZ}, row 2 orders {XII,IXI,IIX}
  double_single,  // one weight-2 single-axis entry + two weight-1 entries per
                  // row, x row supports matching the z row columnwise
};

struct SeedClass {
  std::string canonical_key;
  std::vector<SeedTable> members;
};
struct SeedSearch {
  std::vector<SeedTable> valid;     // every ordered seed that expands cleanly
  std::vector<SeedClass> classes;   // grouped by table equivalence
};
// Equivalence: simultaneous cyclic qubit shift x optional global x<->z swap,
// tables compared as unordered sets of row groups.  Cyclic shifts (not
// arbitrary permutations) because those are the relabelings induced by field
// automorphisms of the phase-space embedding; a qubit transposition maps the
// straight-ray (3,0,6) table onto the curved-ray one, which the structure
// search must keep apart.
SeedSearch enumerate_seeds(SeedPattern pattern);

// Canonical key of the expanded table under the 6-element equivalence group;
// equal keys <=> equivalent tables.
std::string table_equivalence_key(const GeneratorTable& t);

PauliString permute_qubits(const PauliString& p, const std::array<int, 3>& perm);
PauliString swap_axes(const PauliString& p);  // x <-> z masks

}  // namespace mubwig
