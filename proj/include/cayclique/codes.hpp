#pragma once

// Linear codes over Z_p: Goppa and narrow-sense binary BCH constructions,
// generator/parity conversion, exhaustive minimum-distance certification.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cayclique/fplinalg.hpp"
#include "cayclique/gf.hpp"
#include "cayclique/solvers.hpp"

namespace cayclique {

enum class CodeKind { trivial, explicit_rows, goppa, bch };

inline const char* to_string(CodeKind k) {
  switch (k) {
    case CodeKind::trivial: return "trivial";
    case CodeKind::explicit_rows: return "explicit";
    case CodeKind::goppa: return "goppa";
    case CodeKind::bch: return "bch";
  }
  return "?";
}

struct Provenance {
  CodeKind kind = CodeKind::explicit_rows;
  std::string detail;                           // free text, e.g. "m=3 g=0 1 rows=0..r-1"
  std::optional<std::size_t> designed_distance;  // lower bound guaranteed by the construction

  std::string to_string() const {
    std::string s = cayclique::to_string(kind);
    if (!detail.empty()) s += " " + detail;
    if (designed_distance) s += " designed_d=" + std::to_string(*designed_distance);
    return s;
  }
  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct DistanceCert {
  std::optional<std::size_t> d;  // nullopt encodes the infinite distance of {0}
  std::string method;

  bool infinite() const noexcept { return !d.has_value(); }
  bool at_least(std::size_t bound) const noexcept { return infinite() || *d >= bound; }
  std::string to_string() const { return infinite() ? std::string("inf") : std::to_string(*d); }
};

// Basis of the dual: standard form [I_k | A] up to a column permutation gives
// [-A^T | I_{n-k}], which is then un-permuted. Rank-deficient input is reduced.
inline MatModP parity_from_generator(const MatModP& gen) {
  const auto red = rref(gen);
  const std::size_t n = gen.cols();
  const std::size_t k = red.rank;
  const Coeff p = gen.p();
  // perm lists the original column index at each standard-form position:
  // pivot columns first, then the remaining columns in order.
  std::vector<std::size_t> perm = red.pivots;
  std::vector<bool> pivot(n, false);
  for (auto c : red.pivots) pivot[c] = true;
  for (std::size_t c = 0; c < n; ++c)
    if (!pivot[c]) perm.push_back(c);
  MatModP parity(p, n - k, n);
  for (std::size_t j = 0; j < n - k; ++j) {
    const std::size_t free_col = perm[k + j];
    parity.set(j, free_col, 1);
    for (std::size_t i = 0; i < k; ++i) parity.set(j, perm[i], (p - red.reduced.at(i, free_col)) % p);
  }
  return parity;
}

inline MatModP generator_from_parity(const MatModP& par) { return parity_from_generator(par); }

class LinearCode {
 public:
  // Any spanning set of rows; stored generator is the nonzero part of its RREF.
  static LinearCode from_generator(const MatModP& rows, Provenance prov = {}) {
    LinearCode code;
    code.p_ = rows.p();
    code.n_ = rows.cols();
    const auto red = rref(rows);
    code.generator_ = MatModP(code.p_, red.rank, code.n_);
    for (std::size_t r = 0; r < red.rank; ++r)
      for (std::size_t c = 0; c < code.n_; ++c) code.generator_.set(r, c, red.reduced.at(r, c));
    code.parity_ = parity_from_generator(code.generator_);
    code.provenance_ = std::move(prov);
    if (code.generator_.rows() == 0 && code.provenance_.kind == CodeKind::explicit_rows)
      code.provenance_.kind = CodeKind::trivial;
    return code;
  }

  static LinearCode from_parity(const MatModP& parity, Provenance prov = {}) {
    return from_generator(generator_from_parity(parity), std::move(prov));
  }

  static LinearCode trivial(Coeff p, std::size_t n) {
    return from_generator(MatModP(p, 0, n), Provenance{CodeKind::trivial, "", std::nullopt});
  }

  static LinearCode repetition(Coeff p, std::size_t n) {
    MatModP g(p, 1, n);
    for (std::size_t c = 0; c < n; ++c) g.set(0, c, 1);
    return from_generator(g, Provenance{CodeKind::explicit_rows, "repetition", std::nullopt});
  }

  Coeff p() const noexcept { return p_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t k() const noexcept { return generator_.rows(); }
  const MatModP& generator() const noexcept { return generator_; }
  const MatModP& parity() const noexcept { return parity_; }
  const Provenance& provenance() const noexcept { return provenance_; }
  const std::optional<DistanceCert>& distance_cert() const noexcept { return cert_; }
  void set_distance_cert(DistanceCert cert) { cert_ = std::move(cert); }

  bool contains(const VecZp& x) const {
    if (x.size() != n_) return false;
    for (std::size_t r = 0; r < parity_.rows(); ++r) {
      std::uint64_t acc = 0;
      for (std::size_t c = 0; c < n_; ++c) acc += std::uint64_t{parity_.at(r, c)} * x[c];
      if (acc % p_) return false;
    }
    return true;
  }

  // Distance predicate used by the quotient constructions: a certificate decides it;
  // without one, the construction's designed distance may vouch for it.
  bool distance_at_least(std::size_t bound) const {
    if (k() == 0) return true;
    if (cert_) return cert_->at_least(bound);
    return provenance_.designed_distance && *provenance_.designed_distance >= bound;
  }

  std::vector<VecZp> basis() const { return generator_.row_list(); }

 private:
  Coeff p_ = 2;
  std::size_t n_ = 0;
  MatModP generator_;
  MatModP parity_;
  Provenance provenance_;
  std::optional<DistanceCert> cert_;
};

// Enumerates all p^k codewords. Throws BudgetExhausted if p^k > max_codewords.
inline DistanceCert min_distance_bruteforce(const LinearCode& code, std::uint64_t max_codewords = std::uint64_t{1} << 24) {
  const std::size_t k = code.k();
  const std::size_t n = code.n();
  const Coeff p = code.p();
  if (k == 0) return DistanceCert{std::nullopt, "trivial"};
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (total > max_codewords / p) throw BudgetExhausted("codeword enumeration exceeds " + std::to_string(max_codewords));
    total *= p;
  }
  std::size_t best = n;
  const auto rows = code.basis();
  if (p == 2 && n <= 64) {
    std::vector<std::uint64_t> masks(k, 0);
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (rows[r][c]) masks[r] |= std::uint64_t{1} << c;
    // Gray code walk: step i flips the generator indexed by the lowest set bit of i.
    std::uint64_t word = 0;
    for (std::uint64_t i = 1; i < total; ++i) {
      word ^= masks[static_cast<std::size_t>(std::countr_zero(i))];
      best = std::min<std::size_t>(best, static_cast<std::size_t>(std::popcount(word)));
    }
  } else {
    std::vector<Coeff> digits(k, 0);
    VecZp word(n, 0);
    for (std::uint64_t i = 1; i < total; ++i) {
      // Odometer increment: adding row j when digit j steps, subtracting
      // (p-1) copies of lower rows when they wrap back to zero.
      std::size_t j = 0;
      while (digits[j] == p - 1) {
        digits[j] = 0;
        for (std::size_t c = 0; c < n; ++c) word[c] = (word[c] + rows[j][c]) % p;  // (p-1)+1 copies = 0 net
        ++j;
      }
      ++digits[j];
      for (std::size_t c = 0; c < n; ++c) word[c] = (word[c] + rows[j][c]) % p;
      best = std::min<std::size_t>(best, static_cast<std::size_t>(std::count_if(word.begin(), word.end(), [](Coeff x) { return x != 0; })));
    }
  }
  return DistanceCert{best, "enumeration"};
}

// Attaches an exhaustive certificate when affordable; leaves the code unchanged otherwise.
inline bool try_certify(LinearCode& code, std::uint64_t max_codewords = std::uint64_t{1} << 24) {
  try {
    code.set_distance_cert(min_distance_bruteforce(code, max_codewords));
    return true;
  } catch (const BudgetExhausted&) {
    return false;
  }
}

struct GoppaInputs {
  FieldContext ctx;
  std::vector<FieldElement> g;  // Goppa polynomial, little-endian over GF(p^m)
  std::vector<FieldElement> L;  // support, ordered
};

// Parity rows H'[i][j] = alpha_j^i / g(alpha_j) for i = 0..r-1, each entry
// expanded into its m coefficients over Z_p.
inline MatModP goppa_parity_matrix(const GoppaInputs& in) {
  const auto& ctx = in.ctx;
  std::vector<FieldElement> g = in.g;
  while (!g.empty() && ctx.is_zero(g.back())) g.pop_back();
  if (g.size() < 2) throw std::invalid_argument("goppa: polynomial must have degree >= 1");
  const std::size_t r = g.size() - 1;
  const std::size_t n = in.L.size();
  const unsigned m = ctx.m();
  std::set<std::uint64_t> seen;
  for (const auto& a : in.L)
    if (!seen.insert(ctx.index_of(a)).second) throw std::invalid_argument("goppa: support elements are not distinct");
  MatModP h(ctx.p(), r * m, n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto value = ctx.eval(g, in.L[j]);
    if (ctx.is_zero(value)) throw std::invalid_argument("goppa: support contains a root of g");
    auto entry = ctx.inv(value);
    for (std::size_t i = 0; i < r; ++i) {
      const auto coeffs = ctx.to_vector(entry);
      for (unsigned b = 0; b < m; ++b) h.set(i * m + b, j, coeffs[b]);
      entry = ctx.mul(entry, in.L[j]);
    }
  }
  return h;
}

inline LinearCode goppa(const GoppaInputs& in) {
  const auto h = goppa_parity_matrix(in);
  const std::size_t r = h.rows() / in.ctx.m();
  const std::size_t n = in.L.size();
  MatModP gen = MatModP::from_rows(in.ctx.p(), nullspace_basis(h), n);
  std::ostringstream detail;
  detail << "m=" << in.ctx.m() << " r=" << r << " n=" << n << " rows=0..r-1";
  auto code = LinearCode::from_generator(gen, Provenance{CodeKind::goppa, detail.str(), r + 1});
  if (r * in.ctx.m() < n && code.k() < n - r * in.ctx.m()) throw std::logic_error("goppa: rank bound k >= n - rm violated");
  return code;
}

// Polynomial x^r over GF(p^m).
inline std::vector<FieldElement> monomial(const FieldContext& ctx, std::size_t r) {
  std::vector<FieldElement> g(r + 1, ctx.zero());
  g[r] = ctx.one();
  return g;
}

// Minimal polynomial over GF(p) of beta, as a Z_p polynomial.
inline PolyZp minimal_polynomial(const FieldContext& ctx, const FieldElement& beta) {
  std::vector<FieldElement> conj{beta};
  for (auto c = ctx.pow(beta, ctx.p()); c != beta; c = ctx.pow(c, ctx.p())) conj.push_back(c);
  std::vector<FieldElement> acc{ctx.one()};
  for (const auto& c : conj) {
    std::vector<FieldElement> next(acc.size() + 1, ctx.zero());
    for (std::size_t i = 0; i < acc.size(); ++i) {
      next[i + 1] = ctx.add(next[i + 1], acc[i]);
      next[i] = ctx.sub(next[i], ctx.mul(acc[i], c));
    }
    acc = std::move(next);
  }
  PolyZp out;
  for (const auto& a : acc) {
    for (unsigned b = 1; b < ctx.m(); ++b)
      if (a.coeffs[b] != 0) throw std::logic_error("minimal polynomial has coefficients outside GF(p)");
    out.push_back(a.coeffs[0]);
  }
  return out;
}

// Narrow-sense binary BCH code of length 2^m - 1 and designed distance 2t+1.
inline LinearCode bch(unsigned m, unsigned t) {
  if (m < 3) throw std::invalid_argument("bch: m must be >= 3");
  if (t >= (1u << (m - 1))) throw std::invalid_argument("bch: t must be < 2^(m-1)");
  const auto ctx = FieldContext::standard(2, m);
  const auto alpha = find_primitive(ctx);
  const std::size_t n = (std::size_t{1} << m) - 1;
  PolyZp gen{1};
  std::set<std::uint64_t> covered;
  for (unsigned e = 1; e <= 2 * t; ++e) {
    const auto beta = ctx.pow(alpha, e);
    if (covered.count(ctx.index_of(beta))) continue;
    for (auto c = beta;; ) {
      covered.insert(ctx.index_of(c));
      c = ctx.pow(c, 2);
      if (c == beta) break;
    }
    gen = poly::mul(gen, minimal_polynomial(ctx, beta), 2);
  }
  const std::size_t deg = gen.size() - 1;
  MatModP g(2, n - deg, n);
  for (std::size_t r = 0; r < n - deg; ++r)
    for (std::size_t i = 0; i <= deg; ++i) g.set(r, r + i, gen[i]);
  std::ostringstream detail;
  detail << "m=" << m << " t=" << t << " g=" << poly::to_string(gen);
  auto code = LinearCode::from_generator(g, Provenance{CodeKind::bch, detail.str(), 2 * t + 1});
  if (m * t < n && code.k() < n - m * t) throw std::logic_error("bch: rank bound k >= n - mt violated");
  return code;
}

// "code p=<p> n=<n> k=<k>", optional "# provenance: ..." line, then k rows.
inline void write_code(std::ostream& out, const LinearCode& code) {
  out << "code p=" << code.p() << " n=" << code.n() << " k=" << code.k() << '\n';
  out << "# provenance: " << code.provenance().to_string() << '\n';
  for (std::size_t r = 0; r < code.k(); ++r) {
    for (std::size_t c = 0; c < code.n(); ++c) out << (c ? " " : "") << code.generator().at(r, c);
    out << '\n';
  }
}

namespace detail {

inline Provenance parse_provenance(const std::string& text) {
  std::istringstream in(text);
  std::string kind;
  in >> kind;
  Provenance prov;
  if (kind == "trivial") prov.kind = CodeKind::trivial;
  else if (kind == "explicit") prov.kind = CodeKind::explicit_rows;
  else if (kind == "goppa") prov.kind = CodeKind::goppa;
  else if (kind == "bch") prov.kind = CodeKind::bch;
  else throw ParseError("code: unknown provenance kind '" + kind + "'");
  std::string token;
  std::vector<std::string> rest;
  while (in >> token) {
    if (token.rfind("designed_d=", 0) == 0) prov.designed_distance = header_field(token, "designed_d");
    else rest.push_back(token);
  }
  for (std::size_t i = 0; i < rest.size(); ++i) prov.detail += (i ? " " : "") + rest[i];
  return prov;
}

}  // namespace detail

inline LinearCode read_code(std::istream& in) {
  std::string line;
  if (!detail::next_content_line(in, line)) throw ParseError("code: missing header");
  std::istringstream hs(line);
  std::string word, tp, tn, tk;
  if (!(hs >> word >> tp >> tn >> tk) || word != "code") throw ParseError("code: malformed header");
  const auto p = detail::header_field(tp, "p");
  const auto n = detail::header_field(tn, "n");
  const auto k = detail::header_field(tk, "k");
  if (!is_prime(p)) throw ParseError("code: p is not prime");
  if (k > n) throw ParseError("code: k exceeds n");
  Provenance prov{CodeKind::explicit_rows, "", std::nullopt};
  std::vector<VecZp> rows;
  bool seen_provenance = false;
  // Stops after the k-th row; with k = 0 the provenance line is still consumed.
  while ((rows.size() < k || (k == 0 && !seen_provenance)) && std::getline(in, line)) {
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos) continue;
    if (line[pos] == '#') {
      const std::string tag = "# provenance:";
      if (line.compare(pos, tag.size(), tag) == 0) {
        prov = detail::parse_provenance(line.substr(pos + tag.size()));
        seen_provenance = true;
      }
      continue;
    }
    rows.push_back(detail::parse_row(line, n, p, "code"));
  }
  if (rows.size() < k) throw ParseError("code: too few generator rows");
  auto gen = MatModP::from_rows(static_cast<Coeff>(p), rows, n);
  if (rank(gen) != k) throw ParseError("code: generator rows are dependent");
  return LinearCode::from_generator(gen, prov);
}

inline std::string to_text(const LinearCode& code) {
  std::ostringstream out;
  write_code(out, code);
  return out.str();
}

inline LinearCode parse_code(const std::string& text) {
  std::istringstream in(text);
  return read_code(in);
}

}  // namespace cayclique
