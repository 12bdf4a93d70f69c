#include "mubwig/phasespace.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mubwig {

namespace {

void check_self_dual(const Field& f, const std::vector<FieldElement>& basis) {
  if (basis.size() != static_cast<size_t>(f.degree()))
    throw std::invalid_argument("basis size must equal the field degree");
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t j = 0; j < basis.size(); ++j) {
      int want = i == j ? 1 : 0;
      if (f.trace(f.mul(basis[i], basis[j])) != want)
        throw std::invalid_argument("basis fails the self-dual Gram condition");
    }
}

}  // namespace

TranslationMap::TranslationMap(const Field& f)
    : TranslationMap(f, default_self_dual_basis(f)) {}

TranslationMap::TranslationMap(const Field& f, std::vector<FieldElement> basis)
    : field_(&f), basis_(std::move(basis)) {
  check_self_dual(f, basis_);
}

PhasePoint TranslationMap::to_point(const PauliString& p) const {
  const int n = field_->degree();
  if (p.n != n) throw std::invalid_argument("operator length does not match the field degree");
  PhasePoint pt{field_->zero(), field_->zero()};
  for (int i = 0; i < n; ++i) {
    if (p.x >> i & 1) pt.alpha = field_->add(pt.alpha, basis_[i]);
    if (p.z >> i & 1) pt.beta = field_->add(pt.beta, basis_[i]);
  }
  return pt;
}

PauliString TranslationMap::to_op(const PhasePoint& pt) const {
  const int n = field_->degree();
  PauliString p;
  p.n = static_cast<uint8_t>(n);
  // Self-duality makes the bit recovery a plain trace projection.
  for (int i = 0; i < n; ++i) {
    if (field_->trace(field_->mul(pt.alpha, basis_[i]))) p.x |= 1u << i;
    if (field_->trace(field_->mul(pt.beta, basis_[i]))) p.z |= 1u << i;
  }
  return hermitian(p);
}

int TranslationMap::axis_index(const FieldElement& e) const {
  if (e == field_->zero()) return 0;
  return *field_->dlog(e) + 1;
}

FieldElement TranslationMap::axis_element(int index) const {
  if (index == 0) return field_->zero();
  return field_->primitive_pow(index - 1);
}

int TranslationMap::point_index(const PhasePoint& pt) const {
  return axis_index(pt.beta) * field_->size() + axis_index(pt.alpha);
}

PhasePoint TranslationMap::point_at(int index) const {
  const int size = field_->size();
  return {axis_element(index % size), axis_element(index / size)};
}

std::vector<PhasePoint> TranslationMap::all_points() const {
  const int size = field_->size();
  std::vector<PhasePoint> out;
  out.reserve(size * size);
  for (int i = 0; i < size * size; ++i) out.push_back(point_at(i));
  return out;
}

PhasePoint TranslationMap::add(const PhasePoint& a, const PhasePoint& b) const {
  return {field_->add(a.alpha, b.alpha), field_->add(a.beta, b.beta)};
}

namespace {

std::vector<PhasePoint> sorted_by_scan(std::vector<PhasePoint> pts, const TranslationMap& map) {
  std::sort(pts.begin(), pts.end(), [&](const PhasePoint& a, const PhasePoint& b) {
    return map.point_index(a) < map.point_index(b);
  });
  return pts;
}

}  // namespace

Curve curve_from_row(const std::vector<PauliString>& row, const TranslationMap& map) {
  const Field& f = map.field();
  Curve c;
  c.points.push_back({f.zero(), f.zero()});
  for (auto& op : row) c.points.push_back(map.to_point(op));
  c.points = sorted_by_scan(std::move(c.points), map);

  std::set<int> distinct;
  for (auto& p : c.points) distinct.insert(map.point_index(p));
  if (distinct.size() != row.size() + 1)
    throw std::invalid_argument("row operators do not map to distinct phase-space points");
  for (auto& p : c.points)
    for (auto& q : c.points)
      if (!distinct.count(map.point_index(map.add(p, q))))
        throw std::invalid_argument("curve points are not closed under addition");

  // Images of the first independent triple, mirroring the generator choice
  // used for eigenbases.
  std::vector<uint32_t> pivots;
  for (auto& op : row) {
    uint32_t v = class_key(op);
    for (uint32_t piv : pivots) v = std::min(v, v ^ piv);
    if (v != 0 && c.generators.size() < static_cast<size_t>(f.degree())) {
      pivots.push_back(v);
      c.generators.push_back(map.to_point(op));
    }
  }
  return c;
}

namespace {

std::vector<PhasePoint> coset_of(const Curve& ray, const PhasePoint& shift,
                                 const TranslationMap& map) {
  std::vector<PhasePoint> pts;
  pts.reserve(ray.points.size());
  for (auto& p : ray.points) pts.push_back(map.add(p, shift));
  return sorted_by_scan(std::move(pts), map);
}

Striation assemble_striation(const Curve& ray, std::vector<std::vector<PhasePoint>> cosets,
                             const TranslationMap& map) {
  const int size = map.field().size();
  std::sort(cosets.begin(), cosets.end(),
            [&](const std::vector<PhasePoint>& a, const std::vector<PhasePoint>& b) {
              return map.point_index(a.front()) < map.point_index(b.front());
            });
  cosets.erase(std::unique(cosets.begin(), cosets.end()), cosets.end());
  if (cosets.size() != static_cast<size_t>(size))
    throw std::invalid_argument("shifts generate " + std::to_string(cosets.size()) +
                                " cosets, expected " + std::to_string(size));
  std::set<int> covered;
  for (auto& line : cosets)
    for (auto& p : line) covered.insert(map.point_index(p));
  if (covered.size() != static_cast<size_t>(size * size))
    throw std::invalid_argument("cosets fail to tile the grid");

  Striation st;
  st.row = ray.row;
  st.ray = ray;
  for (auto& line : cosets) {
    Curve c;
    c.row = ray.row;
    c.points = line;
    c.generators = ray.generators;
    st.lines.push_back(std::move(c));
  }
  return st;
}

}  // namespace

Striation striation_from_curve(const Curve& ray, const std::vector<PhasePoint>& shifts,
                               const TranslationMap& map) {
  const Field& f = map.field();
  // All sums of subsets of the shift set.
  std::vector<PhasePoint> sums = {{f.zero(), f.zero()}};
  for (auto& s : shifts) {
    size_t count = sums.size();
    for (size_t i = 0; i < count; ++i) sums.push_back(map.add(sums[i], s));
  }
  std::vector<std::vector<PhasePoint>> cosets;
  for (auto& v : sums) cosets.push_back(coset_of(ray, v, map));
  return assemble_striation(ray, std::move(cosets), map);
}

std::vector<Striation> table_striations(const GeneratorTable& t, const TranslationMap& map) {
  std::vector<Striation> out;
  for (size_t r = 0; r < t.rows.size(); ++r) {
    Curve ray = curve_from_row(t.rows[r], map);
    ray.row = static_cast<int>(r);
    // Canonical partition: cosets collected by scan order of their anchors,
    // so the result does not depend on any particular shift choice.
    std::vector<std::vector<PhasePoint>> cosets;
    std::set<int> seen;
    for (auto& p : map.all_points()) {
      if (seen.count(map.point_index(p))) continue;
      auto line = coset_of(ray, p, map);
      for (auto& q : line) seen.insert(map.point_index(q));
      cosets.push_back(std::move(line));
    }
    out.push_back(assemble_striation(ray, std::move(cosets), map));
  }
  return out;
}

GeometryReport verify_geometry(const std::vector<Striation>& striations,
                               const TranslationMap& map) {
  GeometryReport rep;
  const int size = map.field().size();
  auto fail = [&](const std::string& msg) { rep.failures.push_back(msg); };

  for (auto& st : striations) {
    std::set<int> covered;
    for (auto& line : st.lines) {
      if (line.points.size() != static_cast<size_t>(size))
        fail("striation " + std::to_string(st.row + 1) + ": line of wrong size");
      for (auto& p : line.points) covered.insert(map.point_index(p));
    }
    if (st.lines.size() != static_cast<size_t>(size) ||
        covered.size() != static_cast<size_t>(size * size))
      fail("striation " + std::to_string(st.row + 1) + " is not a partition");
  }

  auto intersection_size = [&](const Curve& a, const Curve& b) {
    std::set<int> in_a;
    for (auto& p : a.points) in_a.insert(map.point_index(p));
    int count = 0;
    for (auto& p : b.points) count += in_a.count(map.point_index(p));
    return count;
  };
  for (size_t i = 0; i < striations.size(); ++i)
    for (size_t j = i + 1; j < striations.size(); ++j) {
      for (auto& la : striations[i].lines)
        for (auto& lb : striations[j].lines)
          if (intersection_size(la, lb) != 1) {
            fail("lines of striations " + std::to_string(striations[i].row + 1) + " and " +
                 std::to_string(striations[j].row + 1) + " do not cross exactly once");
            goto next_pair;  // one report per striation pair is enough
          }
    next_pair:;
      int rays = intersection_size(striations[i].ray, striations[j].ray);
      if (rays != 1)
        fail("rays " + std::to_string(striations[i].row + 1) + " and " +
             std::to_string(striations[j].row + 1) + " share " + std::to_string(rays) +
             " points");
    }

  std::vector<int> lines_through(size * size, 0);
  for (auto& st : striations)
    for (auto& line : st.lines)
      for (auto& p : line.points) ++lines_through[map.point_index(p)];
  for (int i = 0; i < size * size; ++i)
    if (lines_through[i] != static_cast<int>(striations.size())) {
      fail("a point lies on " + std::to_string(lines_through[i]) + " lines");
      break;
    }

  rep.pass = rep.failures.empty();
  return rep;
}

namespace {

FieldElement explicit_eval(const ExplicitForm& form, const FieldElement& a, const Field& f) {
  FieldElement a2 = f.sqr(a);
  FieldElement a4 = f.sqr(a2);
  return f.add(f.add(f.mul(form.c1, a), f.mul(form.c2, a2)), f.mul(form.c4, a4));
}

bool implicit_holds(const ImplicitForm& form, const PhasePoint& p, const Field& f) {
  FieldElement lhs = f.add(f.sqr(p.beta), f.mul(form.t, p.beta));
  FieldElement rhs = f.add(f.mul(form.u, f.sqr(p.alpha)), f.mul(form.v, p.alpha));
  return lhs == rhs;
}

}  // namespace

CurveFormReport fit_curve_forms(const Curve& curve, const Field& f) {
  CurveFormReport rep;
  rep.vertical = true;
  rep.horizontal = true;
  std::set<uint8_t> alphas;
  for (auto& p : curve.points) {
    rep.vertical = rep.vertical && p.alpha == f.zero();
    rep.horizontal = rep.horizontal && p.beta == f.zero();
    alphas.insert(p.alpha.bits);
  }
  rep.functional = alphas.size() == curve.points.size();
  if (!rep.functional) return rep;

  // Linearized polynomials through 8 prescribed values are unique, so a
  // 512-candidate scan is both exhaustive and unambiguous at this size.
  for (auto& c1 : f.elements())
    for (auto& c2 : f.elements())
      for (auto& c4 : f.elements()) {
        ExplicitForm cand{c1, c2, c4};
        if (count_explicit_misses(curve, cand, f) == 0) {
          rep.fitted = cand;
          if (c2 == f.zero() && c4 == f.zero()) rep.slope = c1;
          return rep;
        }
      }
  return rep;  // unreachable for genuine additive curves
}

int count_explicit_misses(const Curve& curve, const ExplicitForm& form, const Field& f) {
  int misses = 0;
  for (auto& p : curve.points)
    if (explicit_eval(form, p.alpha, f) != p.beta) ++misses;
  return misses;
}

int count_implicit_misses(const Curve& curve, const ImplicitForm& form, const Field& f) {
  int misses = 0;
  for (auto& p : curve.points)
    if (!implicit_holds(form, p, f)) ++misses;
  return misses;
}

std::vector<PhasePoint> implicit_solutions(const ImplicitForm& form, const Field& f) {
  std::vector<PhasePoint> out;
  for (auto& b : f.elements())
    for (auto& a : f.elements())
      if (implicit_holds(form, {a, b}, f)) out.push_back({a, b});
  return out;
}

std::vector<PhasePoint> parametric_orbit(const ParametricForm& form, const Field& f) {
  std::vector<PhasePoint> out;
  for (auto& k : f.elements()) {
    FieldElement k2 = f.sqr(k);
    FieldElement k4 = f.sqr(k2);
    out.push_back({f.add(f.add(f.mul(form.nu[0], k), f.mul(form.nu[1], k2)),
                         f.mul(form.nu[2], k4)),
                   f.add(f.add(f.mul(form.eta[0], k), f.mul(form.eta[1], k2)),
                         f.mul(form.eta[2], k4))});
  }
  return out;
}

namespace {

int paper_label(int row) {  // published figures swap the first two striations
  if (row == 0) return 2;
  if (row == 1) return 1;
  return row + 1;
}

}  // namespace

std::string render_grid(const std::vector<Striation>& striations, const TranslationMap& map,
                        GridLabels labels, std::optional<PhasePoint> displacement) {
  const Field& f = map.field();
  const int size = f.size();
  const PhasePoint shift = displacement.value_or(PhasePoint{f.zero(), f.zero()});
  std::vector<int> label_at(size * size, -1);
  for (auto& st : striations) {
    int label = labels == GridLabels::paper ? paper_label(st.row) : st.row + 1;
    for (auto& p : st.ray.points) {
      int idx = map.point_index(map.add(p, shift));
      label_at[idx] = label;
    }
  }
  // The displaced curves all pass through the displacement point; mark it o.
  label_at[map.point_index(shift)] = 0;

  std::string out;
  for (int brow = size - 1; brow >= 0; --brow) {
    for (int acol = 0; acol < size; ++acol) {
      if (acol) out += ' ';
      int lab = label_at[brow * size + acol];
      out += lab == 0 ? std::string("o") : std::to_string(lab);
    }
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::vector<int>> parse_grid(const std::string& text, int size) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<int>> rows;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<int> row;
    std::string tok;
    while (ls >> tok) {
      if (tok == "o")
        row.push_back(0);
      else if (tok.size() == 1 && tok[0] >= '1' && tok[0] <= '9')
        row.push_back(tok[0] - '0');
      else
        throw std::invalid_argument("bad grid token '" + tok + "'");
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.size() != static_cast<size_t>(size))
    throw std::invalid_argument("grid must have " + std::to_string(size) + " rows");
  for (auto& row : rows)
    if (row.size() != static_cast<size_t>(size))
      throw std::invalid_argument("grid rows must have " + std::to_string(size) + " cells");
  return rows;
}

}  // namespace

GridDiff diff_grids(const std::string& ours, const std::string& theirs,
                    const TranslationMap& map) {
  const Field& f = map.field();
  const int size = f.size();
  auto a = parse_grid(ours, size);
  auto b = parse_grid(theirs, size);

  GridDiff diff;
  diff.total = size * size;
  // Text rows run top to bottom; translate to (alpha, beta) when reporting.
  auto cell_name = [&](int trow, int tcol) {
    FieldElement beta = map.axis_element(size - 1 - trow);
    FieldElement alpha = map.axis_element(tcol);
    return "(" + f.str(alpha) + "," + f.str(beta) + ")";
  };
  auto token = [](int label) { return label == 0 ? std::string("o") : std::to_string(label); };

  int overlap[10][10] = {};
  for (int r = 0; r < size; ++r)
    for (int c = 0; c < size; ++c) {
      if (a[r][c] == b[r][c])
        ++diff.matches;
      else
        diff.mismatches.push_back(cell_name(r, c) + ": ours " + token(a[r][c]) +
                                  ", theirs " + token(b[r][c]));
      if (a[r][c] != 0 && b[r][c] != 0) ++overlap[a[r][c]][b[r][c]];
    }

  // Best bijective matching of the nine labels by total cell overlap; small
  // enough to scan outright.
  std::array<int, 9> perm;
  for (int i = 0; i < 9; ++i) perm[i] = i + 1;
  std::array<int, 9> best = perm;
  int best_score = -1;
  do {
    int score = 0;
    for (int i = 0; i < 9; ++i) score += overlap[i + 1][perm[i]];
    if (score > best_score) {
      best_score = score;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  diff.relabel[0] = 0;
  for (int i = 0; i < 9; ++i) {
    diff.relabel[i + 1] = best[i];
    if (best[i] != i + 1) diff.relabel_is_identity = false;
  }
  for (int r = 0; r < size; ++r)
    for (int c = 0; c < size; ++c) {
      int mapped = diff.relabel[a[r][c]];
      if (mapped == b[r][c])
        ++diff.relabeled_matches;
      else
        diff.residual.push_back(cell_name(r, c) + ": ours " + token(a[r][c]) +
                                " (as " + token(mapped) + "), theirs " + token(b[r][c]));
    }
  return diff;
}

}  // namespace mubwig
