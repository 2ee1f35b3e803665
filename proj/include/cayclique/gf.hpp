#pragma once

// GF(p) polynomial helpers and GF(p^m) = GF(p)[x]/(f) arithmetic.
//
// Polynomials and field elements are little-endian coefficient vectors. All
// enumerations (monic polynomials, field elements) count upwards treating the
// coefficients as base-p digits with c0 least significant, so "first" always
// means smallest in that order.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cayclique {

using Coeff = std::uint32_t;
using PolyZp = std::vector<Coeff>;  // trimmed: no trailing zeros, zero polynomial is empty

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline Coeff inv_mod(Coeff a, Coeff p) {
  if (a % p == 0) throw std::domain_error("inverse of zero mod p");
  // Fermat: a^(p-2)
  std::uint64_t result = 1;
  std::uint64_t base = a % p;
  for (std::uint64_t e = p - 2; e; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return static_cast<Coeff>(result);
}

namespace poly {

inline void trim(PolyZp& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int degree(const PolyZp& a) { return static_cast<int>(a.size()) - 1; }

inline PolyZp mul(const PolyZp& a, const PolyZp& b, Coeff p) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] = (acc[i + j] + std::uint64_t{a[i]} * b[j]) % p;
  PolyZp out(acc.begin(), acc.end());
  trim(out);
  return out;
}

// Remainder of a modulo a nonzero b.
inline PolyZp mod(PolyZp a, const PolyZp& b, Coeff p) {
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  trim(a);
  const Coeff lead_inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    const std::uint64_t factor = std::uint64_t{a.back()} * lead_inv % p;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i)
      a[shift + i] = static_cast<Coeff>((a[shift + i] + (p - factor) * b[i]) % p);
    trim(a);
  }
  return a;
}

// Monic polynomial of the given degree whose lower coefficients are the
// base-p digits of `index`.
inline PolyZp monic_from_index(std::uint64_t index, unsigned deg, Coeff p) {
  PolyZp f(deg + 1, 0);
  for (unsigned i = 0; i < deg; ++i) {
    f[i] = static_cast<Coeff>(index % p);
    index /= p;
  }
  f[deg] = 1;
  return f;
}

inline std::uint64_t ipow(std::uint64_t base, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= base;
  return r;
}

inline bool has_root(const PolyZp& f, Coeff p) {
  for (Coeff x = 0; x < p; ++x) {
    std::uint64_t acc = 0;
    for (std::size_t i = f.size(); i-- > 0;) acc = (acc * x + f[i]) % p;
    if (acc == 0) return true;
  }
  return false;
}

// Degree <= 3: irreducible iff root-free. Otherwise trial division by every
// monic polynomial of degree 1..deg/2.
inline bool is_irreducible(PolyZp f, Coeff p) {
  trim(f);
  const int deg = degree(f);
  if (deg < 1) return false;
  if (deg == 1) return true;
  if (deg <= 3) return !has_root(f, p);
  for (unsigned d = 1; d <= static_cast<unsigned>(deg) / 2; ++d) {
    const std::uint64_t count = ipow(p, d);
    for (std::uint64_t idx = 0; idx < count; ++idx)
      if (mod(f, monic_from_index(idx, d, p), p).empty()) return false;
  }
  return true;
}

inline std::string to_string(const PolyZp& f) {
  std::ostringstream out;
  for (std::size_t i = 0; i < f.size(); ++i) out << (i ? " " : "") << f[i];
  return out.str();
}

inline PolyZp parse(const std::string& text, Coeff p) {
  std::istringstream in(text);
  PolyZp f;
  long long c = 0;
  while (in >> c) {
    if (c < 0 || static_cast<std::uint64_t>(c) >= p) throw std::invalid_argument("polynomial coefficient out of range");
    f.push_back(static_cast<Coeff>(c));
  }
  if (!in.eof()) throw std::invalid_argument("malformed polynomial text");
  trim(f);
  return f;
}

}  // namespace poly

// Lexicographically first monic irreducible polynomial of degree m over Z_p.
inline PolyZp find_irreducible(Coeff p, unsigned m) {
  if (!is_prime(p)) throw std::invalid_argument("find_irreducible: p must be prime");
  if (m < 1) throw std::invalid_argument("find_irreducible: degree must be >= 1");
  const std::uint64_t count = poly::ipow(p, m);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    auto f = poly::monic_from_index(idx, m, p);
    if (poly::is_irreducible(f, p)) return f;
  }
  throw std::logic_error("no irreducible polynomial found");  // unreachable
}

struct FieldElement {
  std::vector<Coeff> coeffs;  // exactly m entries, each in [0, p)
  friend bool operator==(const FieldElement&, const FieldElement&) = default;
  friend auto operator<=>(const FieldElement&, const FieldElement&) = default;
};

class FieldContext {
 public:
  FieldContext(Coeff p, PolyZp modulus) : p_(p), modulus_(std::move(modulus)) {
    if (!is_prime(p_)) throw std::invalid_argument("field characteristic must be prime");
    poly::trim(modulus_);
    if (modulus_.size() < 2 || modulus_.back() != 1) throw std::invalid_argument("modulus must be monic of degree >= 1");
    for (Coeff c : modulus_)
      if (c >= p_) throw std::invalid_argument("modulus coefficient out of range");
    if (!poly::is_irreducible(modulus_, p_)) throw std::invalid_argument("modulus is reducible over Z_p");
    m_ = static_cast<unsigned>(modulus_.size() - 1);
    size_ = poly::ipow(p_, m_);
  }

  // GF(p^m) with the lexicographically first irreducible modulus.
  static FieldContext standard(Coeff p, unsigned m) { return FieldContext(p, find_irreducible(p, m)); }

  Coeff p() const noexcept { return p_; }
  unsigned m() const noexcept { return m_; }
  std::uint64_t size() const noexcept { return size_; }
  const PolyZp& modulus() const noexcept { return modulus_; }

  FieldElement zero() const { return {std::vector<Coeff>(m_, 0)}; }
  FieldElement one() const {
    auto e = zero();
    e.coeffs[0] = 1;
    return e;
  }
  // The class of x itself (for m = 1 this is the reduction of x mod f).
  FieldElement generator_symbol() const { return from_poly({0, 1}); }
  FieldElement from_scalar(Coeff c) const {
    auto e = zero();
    e.coeffs[0] = c % p_;
    return e;
  }

  FieldElement from_poly(PolyZp a) const {
    auto r = poly::mod(std::move(a), modulus_, p_);
    FieldElement e = zero();
    std::copy(r.begin(), r.end(), e.coeffs.begin());
    return e;
  }

  // Element whose coefficients are the base-p digits of index (c0 least significant).
  FieldElement from_index(std::uint64_t index) const {
    if (index >= size_) throw std::out_of_range("field element index out of range");
    FieldElement e = zero();
    for (unsigned i = 0; i < m_; ++i) {
      e.coeffs[i] = static_cast<Coeff>(index % p_);
      index /= p_;
    }
    return e;
  }

  std::uint64_t index_of(const FieldElement& a) const {
    std::uint64_t idx = 0;
    for (unsigned i = m_; i-- > 0;) idx = idx * p_ + a.coeffs[i];
    return idx;
  }

  bool is_zero(const FieldElement& a) const {
    return std::all_of(a.coeffs.begin(), a.coeffs.end(), [](Coeff c) { return c == 0; });
  }

  FieldElement add(const FieldElement& a, const FieldElement& b) const {
    check(a);
    check(b);
    FieldElement r = zero();
    for (unsigned i = 0; i < m_; ++i) r.coeffs[i] = (a.coeffs[i] + b.coeffs[i]) % p_;
    return r;
  }

  FieldElement neg(const FieldElement& a) const {
    check(a);
    FieldElement r = zero();
    for (unsigned i = 0; i < m_; ++i) r.coeffs[i] = (p_ - a.coeffs[i]) % p_;
    return r;
  }

  FieldElement sub(const FieldElement& a, const FieldElement& b) const { return add(a, neg(b)); }

  FieldElement mul(const FieldElement& a, const FieldElement& b) const {
    check(a);
    check(b);
    PolyZp pa(a.coeffs.begin(), a.coeffs.end());
    PolyZp pb(b.coeffs.begin(), b.coeffs.end());
    poly::trim(pa);
    poly::trim(pb);
    return from_poly(poly::mul(pa, pb, p_));
  }

  FieldElement pow(FieldElement a, std::uint64_t e) const {
    FieldElement r = one();
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  FieldElement inv(const FieldElement& a) const {
    if (is_zero(a)) throw std::domain_error("inversion of zero in GF(p^m)");
    return pow(a, size_ - 2);
  }

  // Multiplicative order of a nonzero element.
  std::uint64_t order(const FieldElement& a) const {
    if (is_zero(a)) throw std::domain_error("order of zero");
    std::uint64_t ord = size_ - 1;
    for (std::uint64_t q : prime_factors(size_ - 1))
      while (ord % q == 0 && pow(a, ord / q) == one()) ord /= q;
    return ord;
  }

  std::vector<Coeff> to_vector(const FieldElement& a) const {
    check(a);
    return a.coeffs;
  }

  // Evaluates a polynomial with coefficients in GF(p^m) at x.
  FieldElement eval(const std::vector<FieldElement>& poly_coeffs, const FieldElement& x) const {
    FieldElement acc = zero();
    for (std::size_t i = poly_coeffs.size(); i-- > 0;) acc = add(mul(acc, x), poly_coeffs[i]);
    return acc;
  }

  std::string to_string(const FieldElement& a) const { return poly::to_string(a.coeffs); }

 private:
  void check(const FieldElement& a) const {
    if (a.coeffs.size() != m_) throw std::invalid_argument("field element has wrong length");
  }

  static std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) {
        out.push_back(d);
        while (n % d == 0) n /= d;
      }
    if (n > 1) out.push_back(n);
    return out;
  }

  Coeff p_;
  PolyZp modulus_;
  unsigned m_ = 0;
  std::uint64_t size_ = 0;
};

// First element, in enumeration order, of multiplicative order p^m - 1.
inline FieldElement find_primitive(const FieldContext& ctx) {
  for (std::uint64_t idx = 1; idx < ctx.size(); ++idx) {
    auto a = ctx.from_index(idx);
    if (ctx.order(a) == ctx.size() - 1) return a;
  }
  throw std::logic_error("no primitive element found");  // unreachable for a field
}

}  // namespace cayclique
