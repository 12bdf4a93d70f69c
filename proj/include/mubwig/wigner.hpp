#pragma once
// Quantum nets and the discrete Wigner transform on the GF(2^n) grid.
//
// A net glues one basis state to every line.  The only freedom is the state
// given to each striation's ray; the line ray+v must then carry U_v applied
// to the ray's state, U_v the Hermitian Pauli at phase-space point v.  At the
// index level that conjugation is an XOR: state j of basis k goes to
// j ^ twist_k(v), where bit (n-1-i) of twist_k(v) records whether U_v
// anticommutes with the row's i-th generator.
//
// The net's point operators  A_p = sum_k P_{k, line through p} - identity
// satisfy Tr A_p = 1 and Tr[A_p A_q] = 2^n delta_pq, so
//   W(p) = Tr(rho A_p) / 2^n,     rho = sum_p W(p) A_p
// is an invertible quasiprobability representation whose line sums are Born
// probabilities and which rides rigidly along with phase-space translations.

#include <cstdint>
#include <string>
#include <vector>

#include "mubwig/dense.hpp"
#include "mubwig/exec.hpp"
#include "mubwig/rng.hpp"
#include "mubwig/system.hpp"

namespace mubwig {

struct QuantumNet {
  const MubSystem* sys = nullptr;  // non-owning; keep the system alive
  std::vector<int> ray_assignment;           // [row] -> state glued to the ray
  std::vector<std::vector<int>> line_state;  // [row][line] -> state index
};

// XOR offset applied to basis-k state indices by the translation v.
int translation_twist(const MubSystem& sys, int row, const PhasePoint& v);

// Throws std::invalid_argument if an assignment index is out of range, and
// std::logic_error if propagation were ambiguous (every point of a line must
// yield the same state — guaranteed by row commutativity, verified anyway).
QuantumNet build_net(const MubSystem& sys, std::vector<int> ray_assignment);
QuantumNet default_net(const MubSystem& sys);  // all-plus state on every ray
QuantumNet random_net(const MubSystem& sys, Rng& rng);

// The same assignment pattern read in coordinates shifted by v: ray k takes
// what the line ray+v carried.  Equivalent nets (any net and any translate)
// produce point operators that are translates of one another, so this orbit
// is the net-equivalence relation.
QuantumNet translate_net(const QuantumNet& net, const PhasePoint& v);

Matrix point_operator(const QuantumNet& net, const PhasePoint& p);
// All 4^n point operators in grid scan order (beta-major from the bottom).
std::vector<Matrix> all_point_operators(const QuantumNet& net, Exec ex = Exec::par);

struct WignerTable {
  std::vector<double> values;  // grid scan order, same as all_point_operators
  double sum() const;
};

// Throws std::invalid_argument unless rho is Hermitian (1e-10).
WignerTable wigner(const Matrix& rho, const QuantumNet& net, Exec ex = Exec::par);
Matrix invert_wigner(const WignerTable& w, const QuantumNet& net);

// Sum of W over one line; equals Tr(rho P) for the line's assigned state.
double marginal(const WignerTable& w, const QuantumNet& net, int row, int line);
std::vector<double> marginals(const WignerTable& w, const QuantumNet& net, int row);

// W of the displaced state equals the rigidly displaced W.
bool check_covariance(const QuantumNet& net, const PhasePoint& v, const Matrix& rho,
                      double tol = 1e-12);

// 2^n lines bottom row first, comma-separated cells in axis order.
std::string wigner_csv(const WignerTable& w, const MubSystem& sys);
WignerTable parse_wigner_csv(const std::string& text, const MubSystem& sys);

// Hermitian, positive semidefinite, unit trace; throws std::invalid_argument.
void validate_density(const Matrix& rho, double tol = 1e-10);

struct NetCount {
  int n = 0;
  long long total = 0;       // N^(N+1) nets, N = 2^n
  long long classes = 0;     // N^(N-1) translation-equivalence classes
  long long class_size = 0;  // N^2, one net per translation
  bool verified = false;     // true when found by exhaustive enumeration
};
// Exhaustive for n = 1 and 2 over the ray systems (throws std::logic_error
// if the enumeration ever disagreed with the formulas); formula-only,
// flagged unverified, for n = 3.
NetCount count_nets(int n);

// True when op is a tensor product of three single-qubit operators, i.e. the
// operator Schmidt rank is 1 across every one-qubit-vs-rest bipartition.
bool fully_factorizable(const Matrix& op, int n, double tol = 1e-8);

struct FactorSearchReport {
  bool self_check_pass = false;  // manufactured a (x) b (x) c is detected
  int nets_tested = 0;
  long long points_tested = 0;
  int hits = 0;                     // factorizable point operators found
  std::vector<std::string> notes;   // one entry per hit (expected none)
  std::string rng = kRngAlgorithm;  // generator behind the sampled nets
};
// Scans every point operator of the default net and of `random_nets` sampled
// nets.  Reports; never asserts the open question either way.
FactorSearchReport search_factorizable(const MubSystem& sys, int random_nets, uint64_t seed);

}  // namespace mubwig
