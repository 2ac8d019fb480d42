#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cll/algebra/upoly.hpp"

namespace cll::algebra {

/// Dense row-major matrix over a field T.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill) : r_(rows), c_(cols), a_(rows * cols, fill) {}
  static Matrix identity(std::size_t n, const T& zero, const T& one) {
    Matrix m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix m(a.r_, b.c_, a.zero());
    for (std::size_t i = 0; i < a.r_; ++i)
      for (std::size_t k = 0; k < a.c_; ++k) {
        if (coeff_is_zero(a(i, k))) continue;
        for (std::size_t j = 0; j < b.c_; ++j) m(i, j) = m(i, j) + a(i, k) * b(k, j);
      }
    return m;
  }
  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    Matrix m = a;
    for (std::size_t i = 0; i < m.a_.size(); ++i) m.a_[i] = m.a_[i] + b.a_[i];
    return m;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    Matrix m = a;
    for (std::size_t i = 0; i < m.a_.size(); ++i) m.a_[i] = m.a_[i] - b.a_[i];
    return m;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) return false;
    for (std::size_t i = 0; i < a.a_.size(); ++i)
      if (!coeff_is_zero(a.a_[i] - b.a_[i])) return false;
    return true;
  }

  /// Reduced row echelon form in place; returns pivot columns.
  std::vector<std::size_t> rref() {
    std::vector<std::size_t> piv;
    std::size_t row = 0;
    for (std::size_t col = 0; col < c_ && row < r_; ++col) {
      std::size_t p = row;
      while (p < r_ && coeff_is_zero((*this)(p, col))) ++p;
      if (p == r_) continue;
      if (p != row)
        for (std::size_t j = 0; j < c_; ++j) std::swap((*this)(p, j), (*this)(row, j));
      T inv = one() / (*this)(row, col);
      for (std::size_t j = col; j < c_; ++j) (*this)(row, j) = (*this)(row, j) * inv;
      for (std::size_t i = 0; i < r_; ++i) {
        if (i == row || coeff_is_zero((*this)(i, col))) continue;
        T f = (*this)(i, col);
        for (std::size_t j = col; j < c_; ++j) (*this)(i, j) = (*this)(i, j) - f * (*this)(row, j);
      }
      piv.push_back(col);
      ++row;
    }
    return piv;
  }

  std::size_t rank() const {
    Matrix m = *this;
    return m.rref().size();
  }

  /// Basis of the right kernel {v : M v = 0}.
  std::vector<std::vector<T>> kernel() const {
    Matrix m = *this;
    auto piv = m.rref();
    std::vector<bool> is_piv(c_, false);
    for (auto p : piv) is_piv[p] = true;
    std::vector<std::vector<T>> basis;
    for (std::size_t f = 0; f < c_; ++f) {
      if (is_piv[f]) continue;
      std::vector<T> v(c_, zero());
      v[f] = one();
      for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m(i, f);
      basis.push_back(std::move(v));
    }
    return basis;
  }

  /// Inverse, or nullopt when singular.
  std::optional<Matrix> inverse() const {
    const std::size_t n = r_;
    Matrix aug(n, 2 * n, zero());
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
      aug(i, n + i) = one();
    }
    auto piv = aug.rref();
    if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
    Matrix inv(n, n, zero());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
  }

  std::vector<T> apply(const std::vector<T>& v) const {
    std::vector<T> out(r_, zero());
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) out[i] = out[i] + (*this)(i, j) * v[j];
    return out;
  }

  T zero() const { return a_.empty() ? T(0) : a_[0] - a_[0]; }
  T one() const { return a_.empty() ? T(1) : zero() + T(1); }

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<T> a_;
};

using RationalMatrix = Matrix<Rational>;

RationalMatrix make_rational_matrix(const std::vector<std::vector<Rational>>& rows);

/// det(xI - M) (Hessenberg reduction, exact).
QPoly char_poly(const RationalMatrix& M);

/// Companion matrix of a monic polynomial.
RationalMatrix companion(const QPoly& monic);

/// Kronecker product.
RationalMatrix kron(const RationalMatrix& a, const RationalMatrix& b);

}  // namespace cll::algebra
