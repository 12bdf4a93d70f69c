#pragma once
// Arithmetic in the binary fields GF(2^n), n <= 8.
//
// Conventions:
//   - An element is a coefficient vector over the polynomial basis (1, u, u^2, ...)
//     where u is a root of the field's modulus polynomial.  Bit i of
//     FieldElement::bits is the coefficient of u^i.
//   - The modulus is serialized as a bit string, most significant coefficient
//     first: "1011" is x^3 + x + 1.
//   - Elements render as "0", "1", "u", "u^2", ... using the discrete log with
//     respect to the field's fixed primitive element (u itself whenever u
//     generates the multiplicative group, as it does for all default moduli).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mubwig {

struct FieldElement {
  uint8_t bits = 0;
  uint8_t deg = 0;  // degree of the parent field; catches cross-field mixups
  friend bool operator==(const FieldElement&, const FieldElement&) = default;
  friend auto operator<=>(const FieldElement&, const FieldElement&) = default;
};

class Field {
 public:
  // Uses a fixed primitive modulus for the degree (e.g. x^3 + x + 1 for n=3).
  explicit Field(int degree);
  // modulus_bits: bit i = coefficient of x^i; must be monic of degree `degree`
  // and irreducible over GF(2).  Throws std::invalid_argument otherwise.
  Field(int degree, unsigned modulus_bits);
  // Parses an MSB-first coefficient string such as "1011".
  static Field from_modulus_string(const std::string& poly);

  int degree() const { return n_; }
  unsigned size() const { return 1u << n_; }   // number of field elements
  unsigned order() const { return size() - 1; }  // multiplicative group order
  unsigned modulus_bits() const { return mod_; }
  std::string modulus_string() const;

  FieldElement zero() const { return {0, static_cast<uint8_t>(n_)}; }
  FieldElement one() const { return element(1); }
  FieldElement x() const { return element(2); }  // the root of the modulus
  FieldElement primitive() const { return primitive_; }
  FieldElement element(unsigned bits) const;

  FieldElement add(FieldElement a, FieldElement b) const;
  FieldElement mul(FieldElement a, FieldElement b) const;
  FieldElement sqr(FieldElement a) const { return mul(a, a); }
  FieldElement pow(FieldElement a, long long e) const;
  FieldElement inv(FieldElement a) const;  // throws on zero
  int trace(FieldElement a) const;         // absolute trace, in {0, 1}

  // Exponent k with primitive()^k == a; nullopt for zero.
  std::optional<int> dlog(FieldElement a) const;
  FieldElement primitive_pow(long long k) const;

  std::string str(FieldElement a) const;          // "0", "1", "u", "u^2", ...
  FieldElement parse(const std::string& s) const;  // inverse of str()

  // All elements in bit order 0, 1, u, u+1, ...
  std::vector<FieldElement> elements() const;
  // Grid-axis order: 0, 1, u, u^2, ..., u^(2^n-2).
  std::vector<FieldElement> axis_order() const;

 private:
  void check(FieldElement a) const;  // membership / degree guard
  void build_tables();

  int n_;
  unsigned mod_;  // full modulus including the x^n bit
  FieldElement primitive_{};
  std::vector<uint8_t> pow_;   // pow_[k] = primitive^k, k in [0, 2^n-2]
  std::vector<int> log_;       // log_[bits] = dlog, -1 for zero
};

// Reference multiplication: schoolbook polynomial product followed by modulus
// reduction, no table lookups.  Used as an independent cross-check in tests.
uint8_t mul_schoolbook(int degree, unsigned modulus_bits, uint8_t a, uint8_t b);

bool is_irreducible(int degree, unsigned modulus_bits);

// All ordered n-tuples (d1..dn) with trace(di*dj) = [i==j], i.e. bases that are
// their own trace-duals.  Exhaustive (intended for n <= 5); output is sorted
// lexicographically by element bits and is closed under tuple permutation.
std::vector<std::vector<FieldElement>> find_self_dual_bases(const Field& f);

// The tuple used by the standard phase-space association: members of the
// lexicographically smallest self-dual set, ordered by discrete log.
// For GF(8) with modulus 1011 this is (u^3, u^5, u^6).
std::vector<FieldElement> default_self_dual_basis(const Field& f);

}  // namespace mubwig
