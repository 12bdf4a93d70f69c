#include "mubwig/field.hpp"

#include <algorithm>
#include <stdexcept>

namespace mubwig {

namespace {

// Primitive moduli, one per degree (bit i = coefficient of x^i).
constexpr unsigned kDefaultModulus[9] = {
    0,
    0b11,         // x + 1
    0b111,        // x^2 + x + 1
    0b1011,       // x^3 + x + 1
    0b10011,      // x^4 + x + 1
    0b100101,     // x^5 + x^2 + 1
    0b1000011,    // x^6 + x + 1
    0b10001001,   // x^7 + x^3 + 1
    0b100011011,  // x^8 + x^4 + x^3 + x + 1
};

int poly_degree(unsigned p) {
  int d = -1;
  for (int i = 0; i < 32; ++i)
    if (p >> i & 1) d = i;
  return d;
}

// Product of GF(2)[x] polynomials reduced mod `mod` (degree n).
uint8_t clmul_mod(int n, unsigned mod, uint8_t a, uint8_t b) {
  unsigned acc = 0;
  unsigned aa = a;
  for (int i = 0; i < 8; ++i)
    if (b >> i & 1) acc ^= aa << i;
  for (int i = 2 * n - 2; i >= n; --i)
    if (acc >> i & 1) acc ^= mod << (i - n);
  return static_cast<uint8_t>(acc);
}

}  // namespace

uint8_t mul_schoolbook(int degree, unsigned modulus_bits, uint8_t a, uint8_t b) {
  return clmul_mod(degree, modulus_bits, a, b);
}

bool is_irreducible(int degree, unsigned modulus_bits) {
  if (poly_degree(modulus_bits) != degree) return false;
  if ((modulus_bits & 1) == 0) return false;  // divisible by x
  // Trial division by every polynomial of degree 1..degree/2.
  for (int d = 1; 2 * d <= degree; ++d) {
    for (unsigned q = 1u << d; q < 2u << d; ++q) {
      // Long division modulus_bits / q over GF(2); check remainder.
      unsigned rem = modulus_bits;
      while (poly_degree(rem) >= d) rem ^= q << (poly_degree(rem) - d);
      if (rem == 0) return false;
    }
  }
  return true;
}

Field::Field(int degree) : Field(degree, kDefaultModulus[degree <= 8 && degree >= 1 ? degree : 0]) {}

Field::Field(int degree, unsigned modulus_bits) : n_(degree), mod_(modulus_bits) {
  if (degree < 1 || degree > 8)
    throw std::invalid_argument("field degree must be in [1, 8]");
  if (!is_irreducible(degree, modulus_bits))
    throw std::invalid_argument("modulus is not a monic irreducible of degree " +
                                std::to_string(degree));
  build_tables();
}

Field Field::from_modulus_string(const std::string& poly) {
  if (poly.size() < 2 || poly.front() != '1')
    throw std::invalid_argument("modulus string must start with 1: " + poly);
  unsigned bits = 0;
  for (char c : poly) {
    if (c != '0' && c != '1')
      throw std::invalid_argument("modulus string must be binary: " + poly);
    bits = bits << 1 | (c == '1');
  }
  return Field(static_cast<int>(poly.size()) - 1, bits);
}

std::string Field::modulus_string() const {
  std::string s;
  for (int i = n_; i >= 0; --i) s += (mod_ >> i & 1) ? '1' : '0';
  return s;
}

void Field::build_tables() {
  // Pick the primitive element: u if it generates, else the smallest generator.
  const unsigned N = size();
  auto mul_raw = [&](uint8_t a, uint8_t b) { return clmul_mod(n_, mod_, a, b); };
  auto order_of = [&](uint8_t a) {
    uint8_t v = a;
    unsigned k = 1;
    while (v != 1) {
      v = mul_raw(v, a);
      ++k;
    }
    return k;
  };
  // u (bits 0b10) is tried first; all default moduli are primitive so it wins.
  uint8_t gen = 0;
  for (unsigned c = 2; c < N; ++c) {
    if (order_of(static_cast<uint8_t>(c)) == order()) {
      gen = static_cast<uint8_t>(c);
      break;
    }
  }
  if (gen == 0) gen = 1;  // n == 1: the only nonzero element

  primitive_ = {gen, static_cast<uint8_t>(n_)};

  pow_.assign(order(), 0);
  log_.assign(N, -1);
  uint8_t v = 1;
  for (unsigned k = 0; k < order(); ++k) {
    pow_[k] = v;
    log_[v] = static_cast<int>(k);
    v = mul_raw(v, gen);
  }
  if (v != 1) throw std::logic_error("primitive element does not close the cycle");
}

FieldElement Field::element(unsigned bits) const {
  if (bits >= size()) throw std::invalid_argument("element bits out of range for field");
  return {static_cast<uint8_t>(bits), static_cast<uint8_t>(n_)};
}

void Field::check(FieldElement a) const {
  if (a.deg != n_)
    throw std::invalid_argument("element belongs to GF(2^" + std::to_string(a.deg) +
                                "), expected GF(2^" + std::to_string(n_) + ")");
  if (a.bits >= size()) throw std::invalid_argument("element bits out of range for field");
}

FieldElement Field::add(FieldElement a, FieldElement b) const {
  check(a);
  check(b);
  return {static_cast<uint8_t>(a.bits ^ b.bits), static_cast<uint8_t>(n_)};
}

FieldElement Field::mul(FieldElement a, FieldElement b) const {
  check(a);
  check(b);
  if (a.bits == 0 || b.bits == 0) return zero();
  int k = log_[a.bits] + log_[b.bits];
  if (k >= static_cast<int>(order())) k -= order();
  return {pow_[k], static_cast<uint8_t>(n_)};
}

FieldElement Field::pow(FieldElement a, long long e) const {
  check(a);
  if (a.bits == 0) {
    if (e < 0) throw std::invalid_argument("zero has no negative powers");
    return e == 0 ? one() : zero();
  }
  long long m = order();
  long long k = (log_[a.bits] * (e % m)) % m;
  if (k < 0) k += m;
  return {pow_[k], static_cast<uint8_t>(n_)};
}

FieldElement Field::inv(FieldElement a) const {
  check(a);
  if (a.bits == 0) throw std::invalid_argument("zero is not invertible");
  return {pow_[(order() - log_[a.bits]) % order()], static_cast<uint8_t>(n_)};
}

int Field::trace(FieldElement a) const {
  check(a);
  // tr(a) = a + a^2 + a^4 + ... + a^(2^(n-1)), which lands in GF(2).
  uint8_t acc = 0;
  uint8_t v = a.bits;
  for (int i = 0; i < n_; ++i) {
    acc ^= v;
    v = clmul_mod(n_, mod_, v, v);
  }
  if (acc > 1) throw std::logic_error("trace escaped the prime subfield");
  return acc;
}

std::optional<int> Field::dlog(FieldElement a) const {
  check(a);
  if (a.bits == 0) return std::nullopt;
  return log_[a.bits];
}

FieldElement Field::primitive_pow(long long k) const {
  long long m = order();
  k %= m;
  if (k < 0) k += m;
  return {pow_[k], static_cast<uint8_t>(n_)};
}

std::string Field::str(FieldElement a) const {
  check(a);
  if (a.bits == 0) return "0";
  int k = log_[a.bits];
  if (k == 0) return "1";
  if (k == 1) return "u";
  return "u^" + std::to_string(k);
}

FieldElement Field::parse(const std::string& s) const {
  if (s == "0") return zero();
  if (s == "1") return one();
  if (s == "u") return primitive_pow(1);
  if (s.rfind("u^", 0) == 0) {
    size_t pos = 0;
    int k = std::stoi(s.substr(2), &pos);
    if (pos == s.size() - 2 && k >= 0) return primitive_pow(k);
  }
  throw std::invalid_argument("cannot parse field element: " + s);
}

std::vector<FieldElement> Field::elements() const {
  std::vector<FieldElement> out;
  out.reserve(size());
  for (unsigned b = 0; b < size(); ++b) out.push_back(element(b));
  return out;
}

std::vector<FieldElement> Field::axis_order() const {
  std::vector<FieldElement> out;
  out.reserve(size());
  out.push_back(zero());
  for (unsigned k = 0; k < order(); ++k) out.push_back(primitive_pow(k));
  return out;
}

std::vector<std::vector<FieldElement>> find_self_dual_bases(const Field& f) {
  const int n = f.degree();
  if (n > 5) throw std::invalid_argument("self-dual search is exhaustive; degree must be <= 5");
  // Diagonal condition first: trace(d*d) = trace(d) (Frobenius), so candidates
  // are exactly the trace-one elements.
  std::vector<FieldElement> cand;
  for (auto e : f.elements())
    if (e.bits != 0 && f.trace(e) == 1) cand.push_back(e);

  std::vector<std::vector<FieldElement>> sets;
  std::vector<FieldElement> cur;
  // Depth-first over increasing-bits subsets with pairwise trace(di*dj) = 0.
  auto rec = [&](auto&& self, size_t start) -> void {
    if (static_cast<int>(cur.size()) == n) {
      sets.push_back(cur);
      return;
    }
    for (size_t i = start; i < cand.size(); ++i) {
      bool ok = true;
      for (auto d : cur)
        if (f.trace(f.mul(d, cand[i])) != 0) {
          ok = false;
          break;
        }
      if (!ok) continue;
      cur.push_back(cand[i]);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);

  // A tuple with identity Gram matrix is automatically linearly independent,
  // but keep the guard explicit for clarity.
  std::vector<std::vector<FieldElement>> out;
  for (auto& set : sets) {
    std::vector<FieldElement> perm = set;
    std::sort(perm.begin(), perm.end());
    do {
      out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<FieldElement> default_self_dual_basis(const Field& f) {
  auto all = find_self_dual_bases(f);
  if (all.empty()) throw std::logic_error("no self-dual basis found");
  // The output is sorted and the ascending ordering of a set is its smallest
  // tuple, so all.front() is the lexicographically smallest set in ascending
  // bit order.  Reorder it by discrete log for the phase-space association.
  std::vector<FieldElement> set = all.front();
  std::sort(set.begin(), set.end(), [&](FieldElement a, FieldElement b) {
    return f.dlog(a).value() < f.dlog(b).value();
  });
  return set;
}

}  // namespace mubwig
