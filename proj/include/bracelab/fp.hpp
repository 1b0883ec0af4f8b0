#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "report.hpp"

namespace bracelab {

/// Entries are stored as bytes; moduli are primes up to 251 and dimensions
/// at most 16.
inline constexpr unsigned kMaxPrime = 251;
inline constexpr std::size_t kMaxDimension = 16;

inline bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline void require_prime(unsigned p) {
  if (!is_prime(p) || p > kMaxPrime)
    throw Error(ErrorKind::NonPrimeModulus, "modulus " + std::to_string(p) + " is not a prime <= 251");
}

inline std::uint8_t inverse_mod(std::uint8_t a, unsigned p) {
  unsigned r = 1, b = a, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint8_t>(r);
}

using FpVector = std::vector<std::uint8_t>;

/// Dense matrix over Z/p.
class FpMatrix {
 public:
  FpMatrix() = default;
  FpMatrix(unsigned p, std::size_t rows, std::size_t cols) : p_(p), rows_(rows), cols_(cols), a_(rows * cols, 0) {
    require_prime(p);
  }

  /// From integer rows; entries are reduced mod p (negatives allowed).
  static FpMatrix from_rows(unsigned p, const std::vector<std::vector<long>>& rows) {
    const std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
    FpMatrix m(p, r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw Error(ErrorKind::DimensionMismatch, "ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
  }

  static FpMatrix identity(unsigned p, std::size_t n) {
    FpMatrix m(p, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  unsigned p() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  std::uint8_t operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  std::uint8_t& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, long v) {
    long r = v % static_cast<long>(p_);
    a_[i * cols_ + j] = static_cast<std::uint8_t>(r < 0 ? r + p_ : r);
  }
  const std::vector<std::uint8_t>& entries() const { return a_; }

  FpVector row(std::size_t i) const { return FpVector(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_); }
  FpVector column(std::size_t j) const {
    FpVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  friend FpMatrix operator*(const FpMatrix& x, const FpMatrix& y) {
    if (x.cols_ != y.rows_ || x.p_ != y.p_) throw Error(ErrorKind::DimensionMismatch, "matrix product shape");
    FpMatrix r(x.p_, x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t j = 0; j < y.cols_; ++j) {
        unsigned s = 0;
        for (std::size_t k = 0; k < x.cols_; ++k) s += unsigned{x(i, k)} * y(k, j);
        r(i, j) = static_cast<std::uint8_t>(s % x.p_);
      }
    return r;
  }

  FpVector apply(const FpVector& v) const {
    if (v.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "vector length");
    FpVector r(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      unsigned s = 0;
      for (std::size_t k = 0; k < cols_; ++k) s += unsigned{(*this)(i, k)} * v[k];
      r[i] = static_cast<std::uint8_t>(s % p_);
    }
    return r;
  }

  friend FpMatrix operator-(const FpMatrix& x, const FpMatrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_ || x.p_ != y.p_)
      throw Error(ErrorKind::DimensionMismatch, "matrix difference shape");
    FpMatrix r = x;
    for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = static_cast<std::uint8_t>((x.a_[i] + x.p_ - y.a_[i]) % x.p_);
    return r;
  }

  FpMatrix minus_identity() const { return *this - identity(p_, rows_); }

  FpMatrix transpose() const {
    FpMatrix t(p_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Rows stacked below one another (same column count).
  static FpMatrix stack(unsigned p, std::size_t cols, const std::vector<FpMatrix>& blocks) {
    std::size_t rows = 0;
    for (const auto& b : blocks) rows += b.rows_;
    FpMatrix m(p, rows, cols);
    std::size_t r0 = 0;
    for (const auto& b : blocks) {
      std::copy(b.a_.begin(), b.a_.end(), m.a_.begin() + r0 * cols);
      r0 += b.rows_;
    }
    return m;
  }

  /// Reduced row echelon form in place; returns the pivot columns.
  std::vector<std::size_t> rref() {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t piv = r;
      while (piv < rows_ && (*this)(piv, c) == 0) ++piv;
      if (piv == rows_) continue;
      for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(r, j), (*this)(piv, j));
      const unsigned s = inverse_mod((*this)(r, c), p_);
      for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = static_cast<std::uint8_t>((*this)(r, j) * s % p_);
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r || (*this)(i, c) == 0) continue;
        const unsigned f = (*this)(i, c);
        for (std::size_t j = 0; j < cols_; ++j)
          (*this)(i, j) = static_cast<std::uint8_t>(((*this)(i, j) + p_ * p_ - f * (*this)(r, j)) % p_);
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }

  std::size_t rank() const {
    FpMatrix m = *this;
    return m.rref().size();
  }

  bool is_invertible() const { return is_square() && rank() == rows_; }

  std::optional<FpMatrix> inverse() const {
    if (!is_square()) return std::nullopt;
    const std::size_t n = rows_;
    FpMatrix aug(p_, n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
      aug(i, n + i) = 1;
    }
    auto piv = aug.rref();
    if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
    FpMatrix inv(p_, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
  }

  friend bool operator==(const FpMatrix& x, const FpMatrix& y) {
    return x.p_ == y.p_ && x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }
  friend bool operator<(const FpMatrix& x, const FpMatrix& y) {
    return std::tie(x.p_, x.rows_, x.cols_, x.a_) < std::tie(y.p_, y.rows_, y.cols_, y.a_);
  }

  std::string str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
      os << (i ? "; " : "[");
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << int{(*this)(i, j)};
    }
    os << "]";
    return os.str();
  }

 private:
  unsigned p_ = 2;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> a_;
};

/// Subspace of F_p^n stored by its reduced row echelon basis, so equal
/// subspaces compare equal.
class FpSubspace {
 public:
  FpSubspace(unsigned p, std::size_t n) : p_(p), n_(n) { require_prime(p); }

  static FpSubspace span(unsigned p, std::size_t n, const std::vector<FpVector>& vectors) {
    FpSubspace s(p, n);
    if (vectors.empty()) return s;
    FpMatrix m(p, vectors.size(), n);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      if (vectors[i].size() != n) throw Error(ErrorKind::DimensionMismatch, "vector length");
      for (std::size_t j = 0; j < n; ++j) m(i, j) = static_cast<std::uint8_t>(vectors[i][j] % p);
    }
    const auto piv = m.rref();
    for (std::size_t i = 0; i < piv.size(); ++i) s.basis_.push_back(m.row(i));
    return s;
  }

  static FpSubspace full(unsigned p, std::size_t n) {
    std::vector<FpVector> e;
    for (std::size_t i = 0; i < n; ++i) e.push_back(unit(n, i));
    return span(p, n, e);
  }

  static FpVector unit(std::size_t n, std::size_t i) {
    FpVector v(n, 0);
    v[i] = 1;
    return v;
  }

  unsigned p() const { return p_; }
  std::size_t ambient_dim() const { return n_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<FpVector>& basis() const { return basis_; }

  bool contains(const FpVector& v) const {
    auto b = basis_;
    b.push_back(v);
    return span(p_, n_, b).dim() == dim();
  }

  bool contains(const FpSubspace& other) const {
    auto b = basis_;
    b.insert(b.end(), other.basis_.begin(), other.basis_.end());
    return span(p_, n_, b).dim() == dim();
  }

  FpSubspace operator+(const FpSubspace& other) const {
    auto b = basis_;
    b.insert(b.end(), other.basis_.begin(), other.basis_.end());
    return span(p_, n_, b);
  }

  /// All vectors of the subspace in lexicographic order (p^dim of them).
  std::vector<FpVector> elements() const {
    std::vector<FpVector> out;
    std::vector<unsigned> coeff(dim(), 0);
    for (;;) {
      FpVector v(n_, 0);
      for (std::size_t k = 0; k < dim(); ++k)
        for (std::size_t j = 0; j < n_; ++j) v[j] = static_cast<std::uint8_t>((v[j] + coeff[k] * basis_[k][j]) % p_);
      out.push_back(std::move(v));
      std::size_t k = 0;
      while (k < dim() && ++coeff[k] == p_) coeff[k++] = 0;
      if (k == dim()) break;
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  friend bool operator==(const FpSubspace& x, const FpSubspace& y) {
    return x.p_ == y.p_ && x.n_ == y.n_ && x.basis_ == y.basis_;
  }

  std::string str() const {
    std::ostringstream os;
    os << "span{";
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      os << (i ? ", " : "") << "(";
      for (std::size_t j = 0; j < n_; ++j) os << (j ? "," : "") << int{basis_[i][j]};
      os << ")";
    }
    os << "}";
    return os.str();
  }

 private:
  unsigned p_;
  std::size_t n_;
  std::vector<FpVector> basis_;
};

/// Null space {v : M v = 0}.
inline FpSubspace kernel(const FpMatrix& m) {
  FpMatrix r = m;
  const auto piv = r.rref();
  std::vector<FpVector> basis;
  std::vector<char> is_pivot(m.cols(), 0);
  for (auto c : piv) is_pivot[c] = 1;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    FpVector v(m.cols(), 0);
    v[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = static_cast<std::uint8_t>((m.p() - r(i, f)) % m.p());
    basis.push_back(std::move(v));
  }
  return FpSubspace::span(m.p(), m.cols(), basis);
}

/// Column space of M.
inline FpSubspace image(const FpMatrix& m) {
  std::vector<FpVector> cols;
  for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(m.column(j));
  return FpSubspace::span(m.p(), m.rows(), cols);
}

struct KernelImage {
  FpSubspace kernel;
  FpSubspace image;
};

inline KernelImage kernel_image(const FpMatrix& m) {
  require_prime(m.p());
  return {kernel(m), image(m)};
}

/// Matrix whose null space is exactly `u` (rows span the annihilator of u).
inline FpMatrix defining_matrix(const FpSubspace& u) {
  const std::size_t n = u.ambient_dim();
  if (u.dim() == 0) return FpMatrix::identity(u.p(), n);
  FpMatrix b(u.p(), u.dim(), n);
  for (std::size_t i = 0; i < u.dim(); ++i)
    for (std::size_t j = 0; j < n; ++j) b(i, j) = u.basis()[i][j];
  const auto ann = kernel(b);  // w with w . u = 0 for all basis vectors u
  FpMatrix d(u.p(), std::max<std::size_t>(ann.dim(), 1), n);
  for (std::size_t i = 0; i < ann.dim(); ++i)
    for (std::size_t j = 0; j < n; ++j) d(i, j) = ann.basis()[i][j];
  return d;
}

inline FpSubspace intersect(const FpSubspace& x, const FpSubspace& y) {
  const std::size_t n = x.ambient_dim();
  return kernel(FpMatrix::stack(x.p(), n, {defining_matrix(x), defining_matrix(y)}));
}

/// Little-endian base-p digits: coordinate 0 is least significant.
inline std::size_t vector_to_index(unsigned p, const FpVector& v) {
  std::size_t idx = 0;
  for (std::size_t i = v.size(); i-- > 0;) idx = idx * p + v[i];
  return idx;
}

inline FpVector index_to_vector(unsigned p, std::size_t n, std::size_t idx) {
  FpVector v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = static_cast<std::uint8_t>(idx % p);
    idx /= p;
  }
  return v;
}

inline std::string vector_str(const FpVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(int{v[i]});
  return s + ")";
}

}  // namespace bracelab
