#include "cll/algebra/matrix.hpp"

namespace cll::algebra {

RationalMatrix make_rational_matrix(const std::vector<std::vector<Rational>>& rows) {
  const std::size_t n = rows.size();
  RationalMatrix m(n, n ? rows[0].size() : 0, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != m.cols()) throw PreconditionViolation("ragged matrix rows");
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

QPoly char_poly(const RationalMatrix& M) {
  if (M.rows() != M.cols()) throw PreconditionViolation("char_poly needs a square matrix");
  const std::size_t n = M.rows();
  RationalMatrix H = M;
  for (std::size_t j = 0; j + 2 < n; ++j) {
    std::size_t p = j + 1;
    while (p < n && sgn(H(p, j)) == 0) ++p;
    if (p == n) continue;
    if (p != j + 1) {
      for (std::size_t c = 0; c < n; ++c) std::swap(H(p, c), H(j + 1, c));
      for (std::size_t r = 0; r < n; ++r) std::swap(H(r, p), H(r, j + 1));
    }
    for (std::size_t k = j + 2; k < n; ++k) {
      if (sgn(H(k, j)) == 0) continue;
      Rational u = H(k, j) / H(j + 1, j);
      for (std::size_t c = 0; c < n; ++c) H(k, c) -= u * H(j + 1, c);
      for (std::size_t r = 0; r < n; ++r) H(r, j + 1) += u * H(r, k);
    }
  }
  // p_m = (x - h_mm) p_{m-1} - sum_i h_im prod_{j=i+1..m} h_{j,j-1} p_{i-1}
  std::vector<QPoly> P{QPoly::constant(Rational(1))};
  const QPoly x{Rational(0), Rational(1)};
  for (std::size_t m = 0; m < n; ++m) {
    QPoly pm = (x - QPoly::constant(H(m, m))) * P[m];
    Rational prod = 1;
    for (std::size_t i = m; i-- > 0;) {
      prod *= H(i + 1, i);
      if (sgn(prod) == 0) break;
      pm -= QPoly::constant(H(i, m) * prod) * P[i];
    }
    P.push_back(pm);
  }
  return P[n];
}

RationalMatrix companion(const QPoly& monic) {
  const std::size_t n = static_cast<std::size_t>(monic.degree());
  RationalMatrix c(n, n, Rational(0));
  for (std::size_t i = 1; i < n; ++i) c(i, i - 1) = 1;
  for (std::size_t i = 0; i < n; ++i) c(i, n - 1) = -monic[i] / monic.lead();
  return c;
}

RationalMatrix kron(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix k(a.rows() * b.rows(), a.cols() * b.cols(), Rational(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (sgn(a(i, j)) == 0) continue;
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c) k(i * b.rows() + r, j * b.cols() + c) = a(i, j) * b(r, c);
    }
  return k;
}

}  // namespace cll::algebra
