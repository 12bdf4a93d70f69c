#pragma once
// n-qubit Pauli operators in symplectic form.
//
// A PauliString encodes the operator  i^phase * X^x * Z^z  where
// X^x = X_1^{x_1} (x) ... (x) X_n^{x_n} and likewise for Z.  Conventions:
//   - Qubit 1 is the leftmost letter of the string form and bit 0 of the
//     masks; in matrix form it is the most significant Kronecker factor.
//   - Y carries x = z = 1 and contributes +1 to the phase (Y = i X Z), so the
//     parse/format round trip is phase-exact.
//   - A "class" is an operator modulo phase, i.e. just the (x, z) pair.  The
//     Hermitian representative of a class fixes phase = |x & z| mod 4.

#include <cstdint>
#include <string>

namespace mubwig {

struct PauliString {
  uint16_t x = 0;
  uint16_t z = 0;
  uint8_t phase = 0;  // exponent of i, mod 4
  uint8_t n = 0;
  friend bool operator==(const PauliString&, const PauliString&) = default;
};

// Accepts an optional leading sign token (+, -, i, -i) followed by n letters
// from {I, X, Y, Z}; throws std::invalid_argument on anything else.
PauliString parse_pauli(const std::string& s);
std::string format_pauli(const PauliString& p);

PauliString multiply(const PauliString& a, const PauliString& b);
// 0 if the operators commute, 1 if they anticommute (the symplectic form).
int symplectic(const PauliString& a, const PauliString& b);
bool commutes(const PauliString& a, const PauliString& b);

PauliString phase_free(PauliString p);  // projects onto the class: phase := 0
PauliString hermitian(PauliString p);   // class representative with phase = |x&z| mod 4
bool same_class(const PauliString& a, const PauliString& b);

int weight(const PauliString& p);  // number of non-identity letters
inline bool is_identity_class(const PauliString& p) { return p.x == 0 && p.z == 0; }

// Class key that ignores phase; stable across runs, usable as an array index
// (range [0, 4^n)).
inline uint32_t class_key(const PauliString& p) {
  return static_cast<uint32_t>(p.x) << p.n | p.z;
}

inline int popcount16(uint16_t v) { return __builtin_popcount(v); }

}  // namespace mubwig
