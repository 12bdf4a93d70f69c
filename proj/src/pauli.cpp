#include "mubwig/pauli.hpp"

#include <stdexcept>

namespace mubwig {

PauliString parse_pauli(const std::string& s) {
  size_t pos = 0;
  uint8_t phase = 0;
  if (s.rfind("-i", 0) == 0) {
    phase = 3;
    pos = 2;
  } else if (!s.empty() && s[0] == 'i') {
    phase = 1;
    pos = 1;
  } else if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    phase = s[0] == '-' ? 2 : 0;
    pos = 1;
  }
  std::string body = s.substr(pos);
  if (body.empty() || body.size() > 16)
    throw std::invalid_argument("bad Pauli string: " + s);
  PauliString p;
  p.n = static_cast<uint8_t>(body.size());
  p.phase = phase;
  for (size_t i = 0; i < body.size(); ++i) {
    switch (body[i]) {
      case 'I':
        break;
      case 'X':
        p.x |= 1u << i;
        break;
      case 'Z':
        p.z |= 1u << i;
        break;
      case 'Y':
        p.x |= 1u << i;
        p.z |= 1u << i;
        p.phase = (p.phase + 1) & 3;  // Y = i X Z
        break;
      default:
        throw std::invalid_argument("bad Pauli letter in: " + s);
    }
  }
  return p;
}

std::string format_pauli(const PauliString& p) {
  // Phase relative to the Hermitian representative, so plain strings like
  // "XYZ" round-trip without a sign prefix.
  int rel = (p.phase - popcount16(p.x & p.z)) & 3;
  static const char* kPrefix[4] = {"", "i", "-", "-i"};
  std::string out = kPrefix[rel];
  for (int i = 0; i < p.n; ++i) {
    bool xb = p.x >> i & 1, zb = p.z >> i & 1;
    out += xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
  }
  return out;
}

PauliString multiply(const PauliString& a, const PauliString& b) {
  if (a.n != b.n) throw std::invalid_argument("Pauli length mismatch");
  PauliString p;
  p.n = a.n;
  p.x = a.x ^ b.x;
  p.z = a.z ^ b.z;
  // Moving Z^za past X^xb costs (-1)^|za & xb|.
  p.phase = static_cast<uint8_t>((a.phase + b.phase + 2 * popcount16(a.z & b.x)) & 3);
  return p;
}

int symplectic(const PauliString& a, const PauliString& b) {
  if (a.n != b.n) throw std::invalid_argument("Pauli length mismatch");
  return (popcount16(a.x & b.z) + popcount16(a.z & b.x)) & 1;
}

bool commutes(const PauliString& a, const PauliString& b) { return symplectic(a, b) == 0; }

PauliString phase_free(PauliString p) {
  p.phase = 0;
  return p;
}

PauliString hermitian(PauliString p) {
  p.phase = static_cast<uint8_t>(popcount16(p.x & p.z) & 3);
  return p;
}

bool same_class(const PauliString& a, const PauliString& b) {
  return a.n == b.n && a.x == b.x && a.z == b.z;
}

int weight(const PauliString& p) { return popcount16(p.x | p.z); }

}  // namespace mubwig
