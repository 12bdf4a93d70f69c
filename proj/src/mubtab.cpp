#include "mubwig/mubtab.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

namespace mubwig {

namespace {

// Incremental GF(2) rank tracker over (x|z) symplectic coordinate vectors.
struct BitSpan {
  std::vector<uint32_t> pivots;
  bool add(uint32_t v) {  // returns false if v was already in the span
    for (uint32_t p : pivots) v = std::min(v, v ^ p);
    if (v == 0) return false;
    pivots.push_back(v);
    return true;
  }
};

uint32_t symp_vec(const PauliString& p) { return class_key(p); }

void check_row_invariants(const std::vector<PauliString>& row, int n, const char* what) {
  for (size_t i = 0; i < row.size(); ++i) {
    if (row[i].n != n) throw std::invalid_argument(std::string(what) + ": qubit count mismatch");
    if (is_identity_class(row[i]))
      throw std::invalid_argument(std::string(what) + ": identity entry");
    for (size_t j = i + 1; j < row.size(); ++j)
      if (!commutes(row[i], row[j]))
        throw std::invalid_argument(std::string(what) + ": entries " + format_pauli(row[i]) +
                                    " and " + format_pauli(row[j]) + " anticommute");
  }
  BitSpan span;
  for (auto& p : row)
    if (!span.add(symp_vec(p)))
      throw std::invalid_argument(std::string(what) + ": entries are dependent");
}

PauliString cell_product(const PauliString& a, const PauliString& b) {
  return hermitian(phase_free(multiply(a, b)));
}

}  // namespace

SeedTable parse_seed(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<PauliString>> rows;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<PauliString> row;
    std::string tok;
    while (ls >> tok) row.push_back(hermitian(parse_pauli(tok)));
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.size() != 2 || rows[0].size() != 3 || rows[1].size() != 3)
    throw std::invalid_argument("seed must be two rows of three Pauli strings");
  SeedTable seed;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 3; ++c) seed.rows[r][c] = rows[r][c];
  return seed;
}

std::string format_seed(const SeedTable& seed) {
  std::string out;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 3; ++c) {
      if (c) out += ' ';
      out += format_pauli(phase_free(seed.rows[r][c]));
    }
    out += '\n';
  }
  return out;
}

GeneratorTable expand_seed(const SeedTable& seed) {
  for (int r = 0; r < 2; ++r)
    check_row_invariants({seed.rows[r].begin(), seed.rows[r].end()}, 3,
                         r == 0 ? "seed row 1" : "seed row 2");

  GeneratorTable t;
  t.n = 3;
  t.rows.assign(9, std::vector<PauliString>(7));
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 3; ++c) t.rows[r][c] = hermitian(seed.rows[r][c]);
    // O[c] = O[c-2] * O[c-3] with 1-based columns; cycles through the row group.
    for (int c = 3; c < 7; ++c) t.rows[r][c] = cell_product(t.rows[r][c - 2], t.rows[r][c - 3]);
  }
  // Row r >= 3 (1-based): O[r][c] = O[2][c] * O[1][c + r - 3], columns mod 7.
  for (int r = 2; r < 9; ++r)
    for (int c = 0; c < 7; ++c)
      t.rows[r][c] = cell_product(t.rows[1][c], t.rows[0][(c + r - 2) % 7]);
  return t;
}

TableCheck validate_table(const GeneratorTable& t) {
  TableCheck out;
  const int n = t.n;
  const size_t want_rows = (1u << n) + 1, want_cols = (1u << n) - 1;
  auto fail = [&](const std::string& msg) { out.failures.push_back(msg); };

  if (t.rows.size() != want_rows) {
    fail("expected " + std::to_string(want_rows) + " rows");
    return out;
  }
  std::map<uint32_t, int> seen;  // class key -> row
  for (size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    std::string tag = "row " + std::to_string(r + 1);
    if (row.size() != want_cols) {
      fail(tag + ": expected " + std::to_string(want_cols) + " entries");
      continue;
    }
    BitSpan span;
    int rank = 0;
    for (auto& p : row) {
      if (p.n != n) fail(tag + ": qubit count mismatch");
      if (is_identity_class(p)) fail(tag + ": identity entry");
      if (span.add(symp_vec(p))) ++rank;
      auto [it, fresh] = seen.emplace(class_key(p), static_cast<int>(r));
      if (!fresh)
        fail(tag + ": " + format_pauli(phase_free(p)) + " already used in row " +
             std::to_string(it->second + 1));
    }
    if (rank != n) fail(tag + ": group rank " + std::to_string(rank) + ", expected " + std::to_string(n));
    for (size_t i = 0; i < row.size(); ++i)
      for (size_t j = i + 1; j < row.size(); ++j)
        if (!commutes(row[i], row[j]))
          fail(tag + ": " + format_pauli(phase_free(row[i])) + " and " +
               format_pauli(phase_free(row[j])) + " anticommute");
    // Closure: with rank n and 2^n - 1 distinct commuting non-identity
    // members, the row plus identity is forced to be the full group; verify
    // anyway so corrupted tables fail loudly.
    for (size_t i = 0; i < row.size() && out.failures.empty(); ++i)
      for (size_t j = i + 1; j < row.size(); ++j) {
        auto prod = phase_free(multiply(row[i], row[j]));
        bool found = is_identity_class(prod);
        for (auto& q : row) found = found || same_class(q, prod);
        if (!found) fail(tag + ": not closed under products");
      }
  }
  if (seen.size() != want_rows * want_cols)
    fail("rows do not partition the non-identity classes");
  out.pass = out.failures.empty();
  return out;
}

MubBasis eigenbasis(const std::vector<PauliString>& row,
                    const std::vector<PauliString>* generators) {
  if (row.empty()) throw std::invalid_argument("empty row");
  const int n = row[0].n;
  const int dim = 1 << n;

  MubBasis basis;
  if (generators) {
    basis.generators = *generators;
  } else {
    // First independent entries in row order; for expanded tables this is
    // exactly columns 1..n.
    BitSpan span;
    for (auto& p : row)
      if (static_cast<int>(basis.generators.size()) < n && span.add(symp_vec(p)))
        basis.generators.push_back(hermitian(p));
  }
  if (static_cast<int>(basis.generators.size()) != n)
    throw std::invalid_argument("could not select " + std::to_string(n) + " independent generators");
  check_row_invariants(basis.generators, n, "generators");

  std::vector<Matrix> gm;
  for (auto& g : basis.generators) gm.push_back(to_matrix(hermitian(g)));
  basis.projectors.reserve(dim);
  for (int j = 0; j < dim; ++j) {
    Matrix p = Matrix::Identity(dim, dim);
    for (int i = 0; i < n; ++i) {
      double s = (j >> (n - 1 - i)) & 1 ? -1.0 : 1.0;
      p = p * (Matrix::Identity(dim, dim) + s * gm[i]) * 0.5;
    }
    if (std::abs(p.trace().real() - 1.0) > 1e-9)
      throw std::logic_error("stabilizer projector is not rank one");
    basis.projectors.push_back(std::move(p));
  }
  return basis;
}

std::vector<MubBasis> table_bases(const GeneratorTable& t) {
  std::vector<MubBasis> out;
  out.reserve(t.rows.size());
  for (auto& row : t.rows) out.push_back(eigenbasis(row));
  return out;
}

MubReport verify_mub(const std::vector<MubBasis>& bases, Exec ex) {
  MubReport rep;
  const size_t nb = bases.size();
  if (nb == 0) return rep;
  const int dim = static_cast<int>(bases[0].projectors.size());
  const double target = 1.0 / dim;

  std::vector<std::pair<size_t, size_t>> pairs;
  for (size_t a = 0; a < nb; ++a)
    for (size_t b = a + 1; b < nb; ++b) pairs.emplace_back(a, b);

  std::vector<double> cross_dev(pairs.size(), 0.0);
  for_each_index(pairs.size(), ex, [&](size_t k) {
    auto [a, b] = pairs[k];
    double worst = 0;
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        double ov = (bases[a].projectors[i] * bases[b].projectors[j]).trace().real();
        worst = std::max(worst, std::abs(ov - target));
      }
    cross_dev[k] = worst;
  });

  std::vector<double> self_dev(nb, 0.0);
  for_each_index(nb, ex, [&](size_t a) {
    double worst = 0;
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        double ov = (bases[a].projectors[i] * bases[a].projectors[j]).trace().real();
        worst = std::max(worst, std::abs(ov - (i == j ? 1.0 : 0.0)));
      }
    self_dev[a] = worst;
  });

  for (double d : cross_dev) rep.max_dev = std::max(rep.max_dev, d);
  for (double d : self_dev) rep.max_self_dev = std::max(rep.max_self_dev, d);
  rep.pairs = static_cast<long long>(pairs.size()) * dim * dim;
  rep.pass = rep.max_dev <= 1e-12 && rep.max_self_dev <= 1e-12;
  return rep;
}

const char* to_string(SepClass c) {
  switch (c) {
    case SepClass::triseparable: return "triseparable";
    case SepClass::biseparable: return "biseparable";
    case SepClass::nonseparable: return "nonseparable";
  }
  return "?";
}

namespace {

SepClass class_from_pure_count(int pure, const char* what) {
  switch (pure) {
    case 3: return SepClass::triseparable;
    case 1: return SepClass::biseparable;
    case 0: return SepClass::nonseparable;
    default:
      throw std::logic_error(std::string(what) + ": impossible single-qubit purity pattern");
  }
}

}  // namespace

SepClass classify_separability(const MubBasis& basis) {
  const int n = 3;
  bool first = true;
  SepClass cls = SepClass::nonseparable;
  for (auto& p : basis.projectors) {
    int pure = 0;
    uint32_t pure_mask = 0;
    for (int q = 0; q < n; ++q) {
      Matrix red = partial_trace(p, n, 1u << q);
      if (std::abs(purity(red) - 1.0) < 1e-9) {
        ++pure;
        pure_mask |= 1u << q;
      }
    }
    SepClass c = class_from_pure_count(pure, "classify_separability");
    if (c == SepClass::biseparable) {
      // The two mixed qubits must jointly carry a pure (entangled) state.
      Matrix pair = partial_trace(p, n, 0b111u ^ pure_mask);
      if (std::abs(purity(pair) - 1.0) > 1e-9)
        throw std::logic_error("biseparable state with mixed two-qubit remainder");
    }
    if (first) {
      cls = c;
      first = false;
    } else if (c != cls) {
      throw std::logic_error("basis states disagree on separability class");
    }
  }
  return cls;
}

SepClass classify_by_schmidt(const MubBasis& basis) {
  const int n = 3;
  bool first = true;
  SepClass cls = SepClass::nonseparable;
  for (auto& p : basis.projectors) {
    CVector psi = state_from_projector(p);
    int product_cuts = 0;
    for (int q = 0; q < n; ++q)
      if (schmidt_rank(psi, n, 1u << q) == 1) ++product_cuts;
    SepClass c = class_from_pure_count(product_cuts, "classify_by_schmidt");
    if (first) {
      cls = c;
      first = false;
    } else if (c != cls) {
      throw std::logic_error("basis states disagree on separability class");
    }
  }
  return cls;
}

std::array<int, 3> structure_signature(const GeneratorTable& t) {
  std::array<int, 3> sig{0, 0, 0};
  for (auto& row : t.rows) {
    switch (classify_separability(eigenbasis(row))) {
      case SepClass::triseparable: ++sig[0]; break;
      case SepClass::biseparable: ++sig[1]; break;
      case SepClass::nonseparable: ++sig[2]; break;
    }
  }
  return sig;
}

std::string signature_string(const std::array<int, 3>& sig) {
  return "(" + std::to_string(sig[0]) + "," + std::to_string(sig[1]) + "," +
         std::to_string(sig[2]) + ")";
}

PauliString permute_qubits(const PauliString& p, const std::array<int, 3>& perm) {
  PauliString out = p;
  out.x = 0;
  out.z = 0;
  for (int j = 0; j < 3; ++j) {
    if (p.x >> perm[j] & 1) out.x |= 1u << j;
    if (p.z >> perm[j] & 1) out.z |= 1u << j;
  }
  return hermitian(out);
}

PauliString swap_axes(const PauliString& p) {
  PauliString out = p;
  std::swap(out.x, out.z);
  return hermitian(out);
}

std::string table_equivalence_key(const GeneratorTable& t) {
  // Cyclic qubit shifts only: under the self-dual phase-space correspondence
  // they are the Frobenius field automorphisms, so they (like the axis swap)
  // preserve curve geometry.  A transposition does not: it maps the
  // straight-ray table onto the curved-ray one, collapsing the two structures
  // the search is meant to distinguish.
  static const std::array<std::array<int, 3>, 3> kPerms = {{
      {0, 1, 2}, {1, 2, 0}, {2, 0, 1}}};
  std::string best;
  for (auto& perm : kPerms) {
    for (int axis = 0; axis < 2; ++axis) {
      std::vector<std::vector<uint32_t>> rows;
      for (auto& row : t.rows) {
        std::vector<uint32_t> keys;
        for (auto& p : row) {
          PauliString q = permute_qubits(p, perm);
          if (axis) q = swap_axes(q);
          keys.push_back(class_key(q));
        }
        std::sort(keys.begin(), keys.end());
        rows.push_back(std::move(keys));
      }
      std::sort(rows.begin(), rows.end());
      std::string key;
      char buf[8];
      for (auto& row : rows) {
        for (uint32_t k : row) {
          std::snprintf(buf, sizeof buf, "%03x", k);
          key += buf;
        }
        key += '|';
      }
      if (best.empty() || key < best) best = key;
    }
  }
  return best;
}

namespace {

PauliString axis_op(char letter, int qubit) {  // weight-1
  std::string s = "III";
  s[qubit] = letter;
  return hermitian(parse_pauli(s));
}

PauliString axis_op2(char letter, int qa, int qb) {  // weight-2, single axis
  std::string s = "III";
  s[qa] = letter;
  s[qb] = letter;
  return hermitian(parse_pauli(s));
}

}  // namespace

SeedSearch enumerate_seeds(SeedPattern pattern) {
  std::vector<SeedTable> candidates;

  if (pattern == SeedPattern::single_single) {
    std::array<int, 3> pz = {0, 1, 2};
    do {
      std::array<int, 3> px = {0, 1, 2};
      do {
        SeedTable s;
        for (int c = 0; c < 3; ++c) {
          s.rows[0][c] = axis_op('Z', pz[c]);
          s.rows[1][c] = axis_op('X', px[c]);
        }
        candidates.push_back(s);
      } while (std::next_permutation(px.begin(), px.end()));
    } while (std::next_permutation(pz.begin(), pz.end()));
  } else {
    static const std::array<std::pair<int, int>, 3> kPairs = {{{0, 1}, {0, 2}, {1, 2}}};
    for (int slot = 0; slot < 3; ++slot) {        // position of the weight-2 entry
      for (auto [a, b] : kPairs) {                // its support
        for (int c = 0; c < 3; ++c)
          for (int d = 0; d < 3; ++d) {           // ordered weight-1 supports
            if (c == d) continue;
            if ((c == a && d == b) || (c == b && d == a)) continue;  // dependent
            SeedTable s;
            int singles[2] = {c, d};
            int si = 0;
            for (int col = 0; col < 3; ++col) {
              if (col == slot) {
                s.rows[0][col] = axis_op2('Z', a, b);
                s.rows[1][col] = axis_op2('X', a, b);
              } else {
                s.rows[0][col] = axis_op('Z', singles[si]);
                s.rows[1][col] = axis_op('X', singles[si]);
                ++si;
              }
            }
            candidates.push_back(s);
          }
      }
    }
  }

  SeedSearch out;
  std::map<std::string, std::vector<SeedTable>> grouped;
  for (auto& seed : candidates) {
    GeneratorTable t;
    try {
      t = expand_seed(seed);
    } catch (const std::invalid_argument&) {
      continue;
    }
    if (!validate_table(t).pass) continue;
    out.valid.push_back(seed);
    grouped[table_equivalence_key(t)].push_back(seed);
  }
  for (auto& [key, members] : grouped) {
    std::sort(members.begin(), members.end(), [](const SeedTable& a, const SeedTable& b) {
      return format_seed(a) < format_seed(b);
    });
    out.classes.push_back({key, members});
  }
  return out;
}

}  // namespace mubwig
