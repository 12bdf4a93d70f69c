#include "mubwig/dense.hpp"

#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace mubwig {

namespace {

Matrix single_qubit(bool xb, bool zb) {
  Matrix m(2, 2);
  if (!xb && !zb)
    m << 1, 0, 0, 1;
  else if (xb && !zb)
    m << 0, 1, 1, 0;
  else if (!xb && zb)
    m << 1, 0, 0, -1;
  else  // X*Z (the bare product; the i of Y lives in the phase field)
    m << 0, -1, 1, 0;
  return m;
}

}  // namespace

Matrix to_matrix(const PauliString& p) {
  if (p.n > 5) throw std::invalid_argument("dense realization limited to n <= 5");
  static const Cplx kI(0, 1);
  Matrix m = Matrix::Identity(1, 1);
  for (int q = 0; q < p.n; ++q)  // qubit 1 first = most significant factor
    m = kron(m, single_qubit(p.x >> q & 1, p.z >> q & 1));
  Cplx ph = 1;
  for (int k = 0; k < (p.phase & 3); ++k) ph *= kI;
  return ph * m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix partial_trace(const Matrix& m, int n, uint32_t keep_mask) {
  const int dim = 1 << n;
  if (m.rows() != dim || m.cols() != dim)
    throw std::invalid_argument("partial_trace: matrix size does not match qubit count");
  std::vector<int> keep, drop;
  for (int q = 0; q < n; ++q)
    (keep_mask >> q & 1 ? keep : drop).push_back(q);
  const int dk = 1 << keep.size();
  const int dd = 1 << drop.size();
  // Map (kept index, dropped index) to the original basis index.  Qubit q
  // occupies bit (n - 1 - q) of the index: qubit 1 is most significant.
  auto compose = [&](int kbits, int dbits) {
    int idx = 0;
    for (size_t i = 0; i < keep.size(); ++i)
      if (kbits >> (keep.size() - 1 - i) & 1) idx |= 1 << (n - 1 - keep[i]);
    for (size_t i = 0; i < drop.size(); ++i)
      if (dbits >> (drop.size() - 1 - i) & 1) idx |= 1 << (n - 1 - drop[i]);
    return idx;
  };
  Matrix out = Matrix::Zero(dk, dk);
  for (int r = 0; r < dk; ++r)
    for (int c = 0; c < dk; ++c)
      for (int d = 0; d < dd; ++d) out(r, c) += m(compose(r, d), compose(c, d));
  return out;
}

double purity(const Matrix& rho) { return (rho * rho).trace().real(); }

double trace_distance(const Matrix& a, const Matrix& b) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a - b);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

int schmidt_rank(const CVector& psi, int n, uint32_t side_mask, double tol) {
  std::vector<int> side, rest;
  for (int q = 0; q < n; ++q)
    (side_mask >> q & 1 ? side : rest).push_back(q);
  const int ds = 1 << side.size();
  const int dr = 1 << rest.size();
  Matrix m(ds, dr);
  for (int s = 0; s < ds; ++s)
    for (int r = 0; r < dr; ++r) {
      int idx = 0;
      for (size_t i = 0; i < side.size(); ++i)
        if (s >> (side.size() - 1 - i) & 1) idx |= 1 << (n - 1 - side[i]);
      for (size_t i = 0; i < rest.size(); ++i)
        if (r >> (rest.size() - 1 - i) & 1) idx |= 1 << (n - 1 - rest[i]);
      m(s, r) = psi(idx);
    }
  Eigen::JacobiSVD<Matrix> svd(m);
  double top = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  int rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > tol * std::max(top, 1.0)) ++rank;
  return rank;
}

int operator_schmidt_rank(const Matrix& m, int n, uint32_t side_mask, double tol) {
  std::vector<int> side, rest;
  for (int q = 0; q < n; ++q)
    (side_mask >> q & 1 ? side : rest).push_back(q);
  const int ds = 1 << side.size();
  const int dr = 1 << rest.size();
  auto split = [&](int full, const std::vector<int>& qs) {
    int out = 0;
    for (size_t i = 0; i < qs.size(); ++i)
      if (full >> (n - 1 - qs[i]) & 1) out |= 1 << (qs.size() - 1 - i);
    return out;
  };
  // Realignment: R[(row_side, col_side), (row_rest, col_rest)] = M[row, col].
  Matrix r(ds * ds, dr * dr);
  for (int row = 0; row < (1 << n); ++row)
    for (int col = 0; col < (1 << n); ++col) {
      int rs = split(row, side), cs = split(col, side);
      int rr = split(row, rest), cr = split(col, rest);
      r(rs * ds + cs, rr * dr + cr) = m(row, col);
    }
  Eigen::JacobiSVD<Matrix> svd(r);
  double top = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  int rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > tol * std::max(top, 1.0)) ++rank;
  return rank;
}

CVector state_from_projector(const Matrix& p) {
  Eigen::Index best = 0;
  double best_norm = 0;
  for (Eigen::Index c = 0; c < p.cols(); ++c) {
    double nr = p.col(c).norm();
    if (nr > best_norm) {
      best_norm = nr;
      best = c;
    }
  }
  if (best_norm < 1e-12) throw std::invalid_argument("projector is numerically zero");
  return p.col(best) / best_norm;
}

Matrix random_pure(Rng& rng, int dim) {
  CVector psi(dim);
  for (int i = 0; i < dim; ++i) psi(i) = Cplx(rng.normal(), rng.normal());
  psi.normalize();
  return psi * psi.adjoint();
}

Matrix random_mixed(Rng& rng, int dim) {
  Matrix g(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) g(r, c) = Cplx(rng.normal(), rng.normal());
  Matrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

}  // namespace mubwig
