#pragma once
// Dense operator realizations and small linear-algebra helpers used both by
// the production code (projectors, Wigner machinery) and as the independent
// cross-check for the symplectic Pauli algebra.
//
// Index convention: basis state b of dimension 2^n has the bit of qubit i
// (1-based, leftmost letter) at position n-i, i.e. qubit 1 is the most
// significant Kronecker factor.  to_matrix(parse_pauli("ZII")) is therefore
// diag(1,1,1,1,-1,-1,-1,-1).

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "mubwig/pauli.hpp"
#include "mubwig/rng.hpp"

namespace mubwig {

using Cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

Matrix to_matrix(const PauliString& p);  // requires n <= 5
Matrix kron(const Matrix& a, const Matrix& b);

// Traces out every qubit not in keep_mask (bit i-1 = qubit i); the result is
// ordered by the kept qubits, original order preserved.
Matrix partial_trace(const Matrix& m, int n, uint32_t keep_mask);

double purity(const Matrix& rho);
double trace_distance(const Matrix& a, const Matrix& b);  // (1/2)||a-b||_1, Hermitian inputs
double max_abs(const Matrix& m);

// Schmidt rank of a pure state across the bipartition (side_mask | rest).
int schmidt_rank(const CVector& psi, int n, uint32_t side_mask, double tol = 1e-8);
// Operator Schmidt rank (rank of the realignment) across the same bipartition.
int operator_schmidt_rank(const Matrix& m, int n, uint32_t side_mask, double tol = 1e-8);

// Unit vector spanning the range of a rank-1 projector.
CVector state_from_projector(const Matrix& p);

Matrix random_pure(Rng& rng, int dim);   // |psi><psi| with Haar-distributed psi
Matrix random_mixed(Rng& rng, int dim);  // normalized G G^dagger, G Ginibre

}  // namespace mubwig
