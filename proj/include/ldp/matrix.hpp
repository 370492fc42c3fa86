#pragma once

#include "ldp/eps_rational.hpp"
#include "ldp/rational.hpp"

#include <cstddef>
#include <vector>

namespace ldp {

/// Small dense square matrix over Q. Row-major, n >= 0.
class RatMatrix {
 public:
  RatMatrix() = default;
  explicit RatMatrix(std::size_t n) : n_(n), a_(n * n) {}
  RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    n_ = rows.size();
    a_.reserve(n_ * n_);
    for (const auto& r : rows) {
      if (r.size() != n_) fail(ErrorKind::Internal, "ragged matrix literal");
      for (const auto& x : r) a_.push_back(x);
    }
  }

  std::size_t size() const { return n_; }
  Rational& at(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  bool is_symmetric() const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        if (at(i, j) != at(j, i)) return false;
    return true;
  }

  /// Leading principal k x k submatrix.
  RatMatrix leading(std::size_t k) const {
    RatMatrix m(k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) m.at(i, j) = at(i, j);
    return m;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Rational> a_;
};

/// Exact determinant by fraction-full Gaussian elimination. det of the
/// empty matrix is 1.
inline Rational det(RatMatrix m) {
  const std::size_t n = m.size();
  Rational result(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m.at(pivot, col).is_zero()) ++pivot;
    if (pivot == n) return Rational(0);
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(pivot, j), m.at(col, j));
      result = -result;
    }
    const Rational p = m.at(col, col);
    result *= p;
    for (std::size_t i = col + 1; i < n; ++i) {
      if (m.at(i, col).is_zero()) continue;
      Rational f = m.at(i, col) / p;
      for (std::size_t j = col; j < n; ++j) m.at(i, j) -= f * m.at(col, j);
    }
  }
  return result;
}

/// Solves M x = b exactly. Throws SingularMatrix when det(M) = 0.
inline std::vector<Rational> solve(RatMatrix m, std::vector<Rational> b) {
  const std::size_t n = m.size();
  if (b.size() != n) fail(ErrorKind::Internal, "solve: dimension mismatch");
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m.at(pivot, col).is_zero()) ++pivot;
    if (pivot == n) fail(ErrorKind::SingularMatrix, "solve: singular matrix");
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(pivot, j), m.at(col, j));
      std::swap(b[pivot], b[col]);
    }
    const Rational p = m.at(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (m.at(i, col).is_zero()) continue;
      Rational f = m.at(i, col) / p;
      for (std::size_t j = col; j < n; ++j) m.at(i, j) -= f * m.at(col, j);
      b[i] -= f * b[col];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    Rational s = b[ii];
    for (std::size_t j = ii + 1; j < n; ++j) s -= m.at(ii, j) * x[j];
    x[ii] = s / m.at(ii, ii);
  }
  return x;
}

/// Solve with an eps-extended right hand side: the system splits into the
/// standard and infinitesimal parts because M itself is rational.
inline std::vector<EpsRational> solve_eps(const RatMatrix& m, const std::vector<EpsRational>& b) {
  std::vector<Rational> bs(b.size()), be(b.size());
  bool any_eps = false;
  for (std::size_t i = 0; i < b.size(); ++i) {
    bs[i] = b[i].std();
    be[i] = b[i].eps_part();
    any_eps = any_eps || !be[i].is_zero();
  }
  std::vector<Rational> xs = solve(m, std::move(bs));
  std::vector<EpsRational> x(xs.size());
  if (any_eps) {
    std::vector<Rational> xe = solve(m, std::move(be));
    for (std::size_t i = 0; i < xs.size(); ++i) x[i] = EpsRational(xs[i], xe[i]);
  } else {
    for (std::size_t i = 0; i < xs.size(); ++i) x[i] = EpsRational(xs[i]);
  }
  return x;
}

/// Sylvester test: negative definite iff leading principal minors alternate
/// in sign starting negative. Throws NotSymmetric on asymmetric input.
inline bool is_negative_definite(const RatMatrix& m) {
  if (!m.is_symmetric()) fail(ErrorKind::NotSymmetric, "is_negative_definite: not symmetric");
  int want = -1;
  for (std::size_t k = 1; k <= m.size(); ++k) {
    if (det(m.leading(k)).sign() != want) return false;
    want = -want;
  }
  return true;
}

}  // namespace ldp
