#pragma once

// Dense linear algebra over Z_p.

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cayclique/gf.hpp"
#include "cayclique/graph_io.hpp"

namespace cayclique {

using VecZp = std::vector<Coeff>;

class MatModP {
 public:
  MatModP() = default;
  MatModP(Coeff p, std::size_t rows, std::size_t cols) : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {
    if (!is_prime(p)) throw std::invalid_argument("MatModP: modulus must be prime");
  }

  static MatModP identity(Coeff p, std::size_t n) {
    MatModP m(p, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
  }

  // Rows must share a length; `cols` is only consulted when `rows` is empty.
  static MatModP from_rows(Coeff p, const std::vector<VecZp>& rows, std::size_t cols = 0) {
    if (!rows.empty()) cols = rows.front().size();
    MatModP m(p, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols) throw std::invalid_argument("MatModP::from_rows: ragged rows");
      for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
    }
    return m;
  }

  Coeff p() const noexcept { return p_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Coeff at(std::size_t r, std::size_t c) const { return data_.at(r * cols_ + c); }
  void set(std::size_t r, std::size_t c, std::uint64_t value) { data_.at(r * cols_ + c) = static_cast<Coeff>(value % p_); }

  VecZp row(std::size_t r) const {
    return VecZp(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                 data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
  }
  std::vector<VecZp> row_list() const {
    std::vector<VecZp> out;
    for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r));
    return out;
  }

  MatModP transpose() const {
    MatModP t(p_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t.set(c, r, at(r, c));
    return t;
  }

  friend MatModP operator*(const MatModP& a, const MatModP& b) {
    if (a.p_ != b.p_ || a.cols_ != b.rows_) throw std::invalid_argument("MatModP product: shape or modulus mismatch");
    MatModP out(a.p_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) {
        std::uint64_t acc = 0;
        for (std::size_t k = 0; k < a.cols_; ++k) acc += std::uint64_t{a.at(i, k)} * b.at(k, j);
        out.set(i, j, acc);
      }
    return out;
  }

  bool is_zero() const {
    for (Coeff c : data_)
      if (c) return false;
    return true;
  }

  friend bool operator==(const MatModP&, const MatModP&) = default;

 private:
  Coeff p_ = 2;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Coeff> data_;
};

// Row vector times matrix.
inline VecZp vec_mul(const VecZp& x, const MatModP& m) {
  if (x.size() != m.rows()) throw std::invalid_argument("vec_mul: length mismatch");
  VecZp out(m.cols(), 0);
  for (std::size_t c = 0; c < m.cols(); ++c) {
    std::uint64_t acc = 0;
    for (std::size_t r = 0; r < m.rows(); ++r) acc += std::uint64_t{x[r]} * m.at(r, c);
    out[c] = static_cast<Coeff>(acc % m.p());
  }
  return out;
}

struct RrefResult {
  MatModP reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

inline RrefResult rref(const MatModP& mat) {
  MatModP a = mat;
  const Coeff p = a.p();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t sel = row;
    while (sel < a.rows() && a.at(sel, col) == 0) ++sel;
    if (sel == a.rows()) continue;
    if (sel != row)
      for (std::size_t c = 0; c < a.cols(); ++c) {
        const Coeff tmp = a.at(row, c);
        a.set(row, c, a.at(sel, c));
        a.set(sel, c, tmp);
      }
    const Coeff scale = inv_mod(a.at(row, col), p);
    for (std::size_t c = 0; c < a.cols(); ++c) a.set(row, c, std::uint64_t{a.at(row, c)} * scale);
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || a.at(r, col) == 0) continue;
      const std::uint64_t f = a.at(r, col);
      for (std::size_t c = 0; c < a.cols(); ++c) a.set(r, c, a.at(r, c) + (p - f) * a.at(row, c));
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(a), pivots.size(), std::move(pivots)};
}

inline std::size_t rank(const MatModP& mat) { return rref(mat).rank; }

// Basis of {x : mat · x = 0}; one vector per free column, in column order.
inline std::vector<VecZp> nullspace_basis(const MatModP& mat) {
  const auto r = rref(mat);
  const Coeff p = mat.p();
  std::vector<bool> is_pivot(mat.cols(), false);
  for (auto c : r.pivots) is_pivot[c] = true;
  std::vector<VecZp> out;
  for (std::size_t free = 0; free < mat.cols(); ++free) {
    if (is_pivot[free]) continue;
    VecZp x(mat.cols(), 0);
    x[free] = 1;
    for (std::size_t i = 0; i < r.rank; ++i) x[r.pivots[i]] = (p - r.reduced.at(i, free)) % p;
    out.push_back(std::move(x));
  }
  return out;
}

struct BasisZpn {
  Coeff p = 2;
  std::size_t n = 0;
  std::vector<VecZp> vectors;  // n independent vectors
  std::size_t split = 0;       // vectors[0, split) span the designated subspace
};

// Keeps `span` as the leading block and appends e_1, e_2, ... whenever they
// raise the rank.
inline BasisZpn extend_to_basis(const std::vector<VecZp>& span, Coeff p, std::size_t n) {
  for (const auto& v : span)
    if (v.size() != n) throw std::invalid_argument("extend_to_basis: vector length mismatch");
  BasisZpn basis{p, n, span, span.size()};
  if (rank(MatModP::from_rows(p, span, n)) != span.size())
    throw std::invalid_argument("extend_to_basis: spanning vectors are dependent");
  std::size_t current = span.size();
  for (std::size_t i = 0; i < n && current < n; ++i) {
    VecZp e(n, 0);
    e[i] = 1;
    basis.vectors.push_back(e);
    if (rank(MatModP::from_rows(p, basis.vectors, n)) == current + 1)
      ++current;
    else
      basis.vectors.pop_back();
  }
  return basis;
}

inline MatModP inverse(const MatModP& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix not square");
  const std::size_t n = m.rows();
  MatModP aug(m.p(), n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug.set(r, c, m.at(r, c));
    aug.set(r, n + r, 1);
  }
  const auto red = rref(aug);
  if (red.rank < n || (n > 0 && red.pivots[n - 1] != n - 1)) throw std::domain_error("inverse: matrix is singular");
  MatModP inv(m.p(), n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv.set(r, c, red.reduced.at(r, n + c));
  return inv;
}

// Solves a · B = alpha where B has the basis vectors as rows; B^{-1} is
// computed once.
class CoordinateSolver {
 public:
  explicit CoordinateSolver(const BasisZpn& basis)
      : basis_(basis), inverse_(inverse(MatModP::from_rows(basis.p, basis.vectors, basis.n))) {}

  VecZp operator()(const VecZp& alpha) const {
    if (alpha.size() != basis_.n) throw std::invalid_argument("coordinates: vector length mismatch");
    return vec_mul(alpha, inverse_);
  }

  const BasisZpn& basis() const noexcept { return basis_; }

 private:
  BasisZpn basis_;
  MatModP inverse_;
};

inline VecZp coordinates(const BasisZpn& basis, const VecZp& alpha) { return CoordinateSolver(basis)(alpha); }

// "mat p=<p> rows=<r> cols=<c>" followed by r rows of c entries.
inline void write_matrix(std::ostream& out, const MatModP& m) {
  out << "mat p=" << m.p() << " rows=" << m.rows() << " cols=" << m.cols() << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? " " : "") << m.at(r, c);
    out << '\n';
  }
}

namespace detail {

// Parses "key=value" tokens after a fixed leading word.
inline std::uint64_t header_field(const std::string& token, const std::string& key) {
  const std::string prefix = key + "=";
  if (token.rfind(prefix, 0) != 0) throw ParseError("expected '" + prefix + "...' but found '" + token + "'");
  const std::string digits = token.substr(prefix.size());
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError("non-numeric value in '" + token + "'");
  return std::stoull(digits);
}

inline bool next_content_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    return true;
  }
  return false;
}

inline VecZp parse_row(const std::string& line, std::size_t width, std::uint64_t bound, const std::string& what) {
  std::istringstream ls(line);
  VecZp row;
  long long value = 0;
  while (ls >> value) {
    if (value < 0 || static_cast<std::uint64_t>(value) >= bound) throw ParseError(what + ": entry out of range");
    row.push_back(static_cast<Coeff>(value));
  }
  if (!ls.eof()) throw ParseError(what + ": non-numeric entry");
  if (row.size() != width) throw ParseError(what + ": expected " + std::to_string(width) + " entries per row");
  return row;
}

}  // namespace detail

inline MatModP read_matrix(std::istream& in) {
  std::string line;
  if (!detail::next_content_line(in, line)) throw ParseError("matrix: missing header");
  std::istringstream hs(line);
  std::string word, tp, tr, tc;
  if (!(hs >> word >> tp >> tr >> tc) || word != "mat") throw ParseError("matrix: malformed header");
  const auto p = detail::header_field(tp, "p");
  const auto rows = detail::header_field(tr, "rows");
  const auto cols = detail::header_field(tc, "cols");
  if (!is_prime(p)) throw ParseError("matrix: p is not prime");
  std::vector<VecZp> data;
  for (std::uint64_t r = 0; r < rows; ++r) {
    if (!detail::next_content_line(in, line)) throw ParseError("matrix: too few rows");
    data.push_back(detail::parse_row(line, cols, p, "matrix"));
  }
  return MatModP::from_rows(static_cast<Coeff>(p), data, cols);
}

inline std::string to_text(const MatModP& m) {
  std::ostringstream out;
  write_matrix(out, m);
  return out.str();
}

inline MatModP parse_matrix(const std::string& text) {
  std::istringstream in(text);
  return read_matrix(in);
}

}  // namespace cayclique
