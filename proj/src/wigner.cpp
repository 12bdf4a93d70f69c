#include "mubwig/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace mubwig {

int translation_twist(const MubSystem& sys, int row, const PhasePoint& v) {
  const PauliString op = sys.map.to_op(v);
  const auto& gens = sys.bases[row].generators;
  const int n = sys.n();
  int twist = 0;
  for (int i = 0; i < n; ++i)
    twist |= symplectic(op, gens[i]) << (n - 1 - i);
  return twist;
}

QuantumNet build_net(const MubSystem& sys, std::vector<int> ray_assignment) {
  if (ray_assignment.size() != static_cast<size_t>(sys.rows()))
    throw std::invalid_argument("net needs one ray state per striation");
  for (int j : ray_assignment)
    if (j < 0 || j >= sys.dim())
      throw std::invalid_argument("ray state index " + std::to_string(j) + " out of range");

  QuantumNet net{&sys, std::move(ray_assignment), {}};
  net.line_state.assign(sys.rows(), {});
  for (int k = 0; k < sys.rows(); ++k) {
    const Striation& st = sys.striations[k];
    net.line_state[k].resize(st.lines.size());
    for (size_t li = 0; li < st.lines.size(); ++li) {
      // Propagate from every point of the line; the offsets must agree
      // because any two points differ by a ray element, which commutes with
      // the whole row.
      int state = -1;
      for (const auto& p : st.lines[li].points) {
        int j = net.ray_assignment[k] ^ translation_twist(sys, k, p);
        if (state < 0) state = j;
        if (state != j) throw std::logic_error("net propagation is ambiguous");
      }
      net.line_state[k][li] = state;
    }
  }
  return net;
}

QuantumNet default_net(const MubSystem& sys) {
  return build_net(sys, std::vector<int>(sys.rows(), 0));
}

QuantumNet random_net(const MubSystem& sys, Rng& rng) {
  std::vector<int> assign(sys.rows());
  for (int& j : assign) j = static_cast<int>(rng.below(sys.dim()));
  return build_net(sys, assign);
}

QuantumNet translate_net(const QuantumNet& net, const PhasePoint& v) {
  const MubSystem& sys = *net.sys;
  std::vector<int> assign(sys.rows());
  for (int k = 0; k < sys.rows(); ++k)
    assign[k] = net.ray_assignment[k] ^ translation_twist(sys, k, v);
  return build_net(sys, assign);
}

Matrix point_operator(const QuantumNet& net, const PhasePoint& p) {
  const MubSystem& sys = *net.sys;
  const int idx = sys.map.point_index(p);
  Matrix acc = -Matrix::Identity(sys.dim(), sys.dim());
  for (int k = 0; k < sys.rows(); ++k) {
    int li = sys.line_of_point[k][idx];
    acc += sys.bases[k].projectors[net.line_state[k][li]];
  }
  return acc;
}

std::vector<Matrix> all_point_operators(const QuantumNet& net, Exec ex) {
  const MubSystem& sys = *net.sys;
  std::vector<Matrix> ops(sys.points());
  for_each_index(ops.size(), ex, [&](size_t i) {
    ops[i] = point_operator(net, sys.map.point_at(static_cast<int>(i)));
  });
  return ops;
}

double WignerTable::sum() const {
  double s = 0;
  for (double v : values) s += v;
  return s;
}

WignerTable wigner(const Matrix& rho, const QuantumNet& net, Exec ex) {
  const MubSystem& sys = *net.sys;
  if (max_abs(Matrix(rho - rho.adjoint())) > 1e-10)
    throw std::invalid_argument("wigner: state is not Hermitian");

  // Line weights Tr(rho P) per striation; assembling W from them is the
  // point-operator formula with the projector sums grouped per row.
  std::vector<std::vector<double>> q(sys.rows());
  for_each_index(q.size(), ex, [&](size_t k) {
    const auto& st = sys.striations[k];
    q[k].resize(st.lines.size());
    for (size_t li = 0; li < st.lines.size(); ++li) {
      const Matrix& p = sys.bases[k].projectors[net.line_state[k][li]];
      q[k][li] = rho.transpose().cwiseProduct(p).sum().real();
    }
  });

  WignerTable w;
  w.values.resize(sys.points());
  const double trace = rho.trace().real();
  for (int i = 0; i < sys.points(); ++i) {
    double s = -trace;
    for (int k = 0; k < sys.rows(); ++k) s += q[k][sys.line_of_point[k][i]];
    w.values[i] = s / sys.dim();
  }
  return w;
}

Matrix invert_wigner(const WignerTable& w, const QuantumNet& net) {
  const MubSystem& sys = *net.sys;
  if (w.values.size() != static_cast<size_t>(sys.points()))
    throw std::invalid_argument("wigner table size does not match the grid");
  Matrix acc = Matrix::Zero(sys.dim(), sys.dim());
  for (int k = 0; k < sys.rows(); ++k) {
    const Striation& st = sys.striations[k];
    for (size_t li = 0; li < st.lines.size(); ++li) {
      double weight = 0;
      for (const auto& p : st.lines[li].points) weight += w.values[sys.map.point_index(p)];
      acc += weight * sys.bases[k].projectors[net.line_state[k][li]];
    }
  }
  acc -= w.sum() * Matrix::Identity(sys.dim(), sys.dim());
  return acc;
}

double marginal(const WignerTable& w, const QuantumNet& net, int row, int line) {
  const MubSystem& sys = *net.sys;
  if (row < 0 || row >= sys.rows())
    throw std::invalid_argument("no striation " + std::to_string(row));
  if (line < 0 || line >= static_cast<int>(sys.striations[row].lines.size()))
    throw std::invalid_argument("striation " + std::to_string(row) + " has no line " +
                                std::to_string(line));
  double s = 0;
  for (const auto& p : sys.striations[row].lines[line].points)
    s += w.values[sys.map.point_index(p)];
  return s;
}

std::vector<double> marginals(const WignerTable& w, const QuantumNet& net, int row) {
  std::vector<double> out(net.sys->striations[row].lines.size());
  for (size_t li = 0; li < out.size(); ++li)
    out[li] = marginal(w, net, row, static_cast<int>(li));
  return out;
}

bool check_covariance(const QuantumNet& net, const PhasePoint& v, const Matrix& rho,
                      double tol) {
  const MubSystem& sys = *net.sys;
  const Matrix u = to_matrix(sys.map.to_op(v));
  WignerTable before = wigner(rho, net);
  WignerTable after = wigner(Matrix(u * rho * u.adjoint()), net);
  for (int i = 0; i < sys.points(); ++i) {
    PhasePoint shifted = sys.map.add(sys.map.point_at(i), v);
    if (std::abs(after.values[sys.map.point_index(shifted)] - before.values[i]) > tol)
      return false;
  }
  return true;
}

std::string wigner_csv(const WignerTable& w, const MubSystem& sys) {
  std::string out;
  char buf[32];
  for (int b = 0; b < sys.dim(); ++b) {
    for (int a = 0; a < sys.dim(); ++a) {
      std::snprintf(buf, sizeof buf, "%.17g", w.values[b * sys.dim() + a]);
      out += buf;
      out += (a + 1 < sys.dim()) ? ',' : '\n';
    }
  }
  return out;
}

WignerTable parse_wigner_csv(const std::string& text, const MubSystem& sys) {
  WignerTable w;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream cells(line);
    std::string cell;
    int got = 0;
    while (std::getline(cells, cell, ',')) {
      size_t used = 0;
      w.values.push_back(std::stod(cell, &used));
      ++got;
    }
    if (got != sys.dim()) throw std::invalid_argument("wigner csv row needs " +
                                                      std::to_string(sys.dim()) + " cells");
  }
  if (w.values.size() != static_cast<size_t>(sys.points()))
    throw std::invalid_argument("wigner csv needs " + std::to_string(sys.dim()) + " rows");
  return w;
}

void validate_density(const Matrix& rho, double tol) {
  if (max_abs(Matrix(rho - rho.adjoint())) > tol)
    throw std::invalid_argument("density matrix is not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > tol)
    throw std::invalid_argument("density matrix trace differs from 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol)
    throw std::invalid_argument("density matrix has a negative eigenvalue");
}

NetCount count_nets(int n) {
  if (n < 1 || n > 3) throw std::invalid_argument("net counting supports n in {1,2,3}");
  const int N = 1 << n;
  NetCount out;
  out.n = n;
  out.total = 1LL << (n * (N + 1));
  out.classes = 1LL << (n * (N - 1));
  out.class_size = 1LL << (2 * n);
  if (n == 3) return out;  // 8^9 nets: formula values only, left unverified

  MubSystem sys = ray_system(n);
  const int rows = sys.rows(), points = sys.points();
  std::vector<uint32_t> mask(points, 0);
  for (int v = 0; v < points; ++v)
    for (int k = 0; k < rows; ++k)
      mask[v] |= static_cast<uint32_t>(translation_twist(sys, k, sys.map.point_at(v))) << (n * k);
  // v -> mask is injective exactly when orbits have full size N^2.
  std::vector<uint32_t> sorted = mask;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::logic_error("translation twists collide; orbits would be degenerate");

  std::vector<char> seen(static_cast<size_t>(out.total), 0);
  long long classes = 0;
  for (uint32_t a = 0; a < static_cast<uint32_t>(out.total); ++a) {
    if (seen[a]) continue;
    ++classes;
    for (int v = 0; v < points; ++v) {
      uint32_t b = a ^ mask[v];
      if (seen[b]) throw std::logic_error("net orbits are not disjoint");
      seen[b] = 1;
    }
  }
  if (classes != out.classes)
    throw std::logic_error("net enumeration found " + std::to_string(classes) + " classes");
  out.verified = true;
  return out;
}

bool fully_factorizable(const Matrix& op, int n, double tol) {
  for (int i = 0; i < n; ++i)
    if (operator_schmidt_rank(op, n, 1u << i, tol) != 1) return false;
  return true;
}

namespace {

Matrix random_hermitian2(Rng& rng) {
  Matrix h(2, 2);
  double a = rng.normal(), b = rng.normal(), c = rng.normal(), d = rng.normal();
  h << Cplx(a, 0), Cplx(c, d), Cplx(c, -d), Cplx(b, 0);
  return h;
}

}  // namespace

FactorSearchReport search_factorizable(const MubSystem& sys, int random_nets, uint64_t seed) {
  FactorSearchReport rep;

  // Self-check: a manufactured product operator must be recognized, an
  // entangling sum must not.
  Rng check_rng = Rng::derive(seed, 0);
  Matrix product = kron(kron(random_hermitian2(check_rng), random_hermitian2(check_rng)),
                        random_hermitian2(check_rng));
  Matrix entangled = to_matrix(parse_pauli("XXX")) + to_matrix(parse_pauli("ZZZ"));
  rep.self_check_pass =
      fully_factorizable(product, 3) && !fully_factorizable(entangled, 3);

  auto scan = [&](const QuantumNet& net, const std::string& tag) {
    ++rep.nets_tested;
    for (const auto& p : sys.map.all_points()) {
      ++rep.points_tested;
      if (fully_factorizable(point_operator(net, p), sys.n())) {
        ++rep.hits;
        rep.notes.push_back(tag + " at (" + sys.field->str(p.alpha) + "," +
                            sys.field->str(p.beta) + ")");
      }
    }
  };

  // Within one net the 64 point operators realize 64 distinct assignment
  // patterns, so each scanned net covers a fresh slice of the 8^9 space.
  scan(default_net(sys), "default net");
  for (int t = 0; t < random_nets; ++t) {
    Rng rng = Rng::derive(seed, 1 + static_cast<uint64_t>(t));
    scan(random_net(sys, rng), "net #" + std::to_string(t));
  }
  return rep;
}

}  // namespace mubwig
