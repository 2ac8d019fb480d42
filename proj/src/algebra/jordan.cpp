#include "cll/algebra/jordan.hpp"

#include <algorithm>

#include "cll/algebra/factor.hpp"

namespace cll::algebra {

namespace {

FieldMatrix lift_matrix(const RationalMatrix& M, const FieldPtr& K) {
  FieldMatrix F(M.rows(), M.cols(), FieldElem(K, {Rational(0)}));
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) F(i, j) = FieldElem(K, {M(i, j)});
  return F;
}

std::size_t rank_of(const std::vector<std::vector<FieldElem>>& vecs, std::size_t n, const FieldElem& zero) {
  if (vecs.empty()) return 0;
  FieldMatrix m(vecs.size(), n, zero);
  for (std::size_t i = 0; i < vecs.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = vecs[i][j];
  return m.rank();
}

int multiplicity(const QPoly& c, const FieldElem& r) {
  int k = 0;
  QPoly d = c;
  while (d.degree() >= 0) {
    FieldElem v(r.field(), {Rational(0)});
    for (std::size_t i = d.size(); i-- > 0;) v = v * r + FieldElem(d[i]);
    if (!v.is_zero()) break;
    ++k;
    d = d.derivative();
  }
  return k;
}

}  // namespace

int compare_re_im(const FieldElem& a, const FieldElem& b) {
  FieldElem d = a - b;
  if (int s = d.re_sign(); s != 0) return s;
  return d.im_sign();
}

std::vector<std::pair<AlgebraicNumber, int>> eigenvalues(const RationalMatrix& M) {
  std::vector<std::pair<AlgebraicNumber, int>> out;
  for (const auto& [f, mult] : factor(char_poly(M)))
    for (const auto& r : AlgebraicNumber::roots_of(f)) out.emplace_back(r, mult);
  return out;
}

FieldJordan jordan_decompose_field(const RationalMatrix& M) {
  if (M.rows() != M.cols()) throw PreconditionViolation("jordan_decompose needs a square matrix");
  const std::size_t n = M.rows();
  QPoly c = char_poly(M);
  SplittingField sf = splitting_field(c);
  const FieldPtr K = sf.K;
  const FieldElem zero(K, {Rational(0)}), one(K, {Rational(1)});
  FieldMatrix A = lift_matrix(M, K);

  struct Chain {
    FieldElem lambda;
    std::vector<std::vector<FieldElem>> cols;
  };
  std::vector<Chain> chains;
  for (const auto& lambda : sf.roots) {
    const int alg = multiplicity(c, lambda);
    FieldMatrix N = A - FieldMatrix::identity(n, zero, lambda);
    // dims of ker N^j until they reach the algebraic multiplicity
    std::vector<FieldMatrix> powers{FieldMatrix::identity(n, zero, one)};
    std::vector<std::vector<std::vector<FieldElem>>> kernels{{}};
    std::vector<std::size_t> dims{0};
    while (dims.back() < static_cast<std::size_t>(alg)) {
      powers.push_back(powers.back() * N);
      kernels.push_back(powers.back().kernel());
      dims.push_back(kernels.back().size());
      if (dims.size() > n + 1) throw Error("Jordan chain computation failed");
    }
    const std::size_t top = dims.size() - 1;
    std::vector<std::pair<std::vector<FieldElem>, std::size_t>> tops;  // (vector, block size)
    for (std::size_t s = top; s >= 1; --s) {
      // span of ker N^{s-1} and images of larger chains at this level
      std::vector<std::vector<FieldElem>> W = kernels[s - 1];
      for (const auto& [u, t] : tops) {
        std::vector<FieldElem> v = u;
        for (std::size_t k = s; k < t; ++k) v = N.apply(v);
        W.push_back(v);
      }
      std::size_t need = dims[s] - dims[s - 1] - tops.size();
      std::size_t r = rank_of(W, n, zero);
      for (const auto& cand : kernels[s]) {
        if (need == 0) break;
        W.push_back(cand);
        std::size_t r2 = rank_of(W, n, zero);
        if (r2 > r) {
          tops.emplace_back(cand, s);
          r = r2;
          --need;
        } else {
          W.pop_back();
        }
      }
      if (need != 0) throw Error("Jordan chain computation failed");
    }
    for (const auto& [u, s] : tops) {
      Chain ch{lambda, {}};
      std::vector<std::vector<FieldElem>> seq{u};
      for (std::size_t k = 1; k < s; ++k) seq.push_back(N.apply(seq.back()));
      std::reverse(seq.begin(), seq.end());
      ch.cols = std::move(seq);
      chains.push_back(std::move(ch));
    }
  }
  std::stable_sort(chains.begin(), chains.end(), [](const Chain& a, const Chain& b) {
    int c = compare_re_im(a.lambda, b.lambda);
    if (c != 0) return c < 0;
    return a.cols.size() < b.cols.size();
  });

  FieldJordan out;
  out.K = K;
  out.Pinv = FieldMatrix(n, n, zero);
  std::size_t col = 0;
  for (const auto& ch : chains) {
    out.blocks.push_back({ch.lambda, static_cast<int>(ch.cols.size()), static_cast<int>(col)});
    for (const auto& v : ch.cols) {
      for (std::size_t i = 0; i < n; ++i) out.Pinv(i, col) = v[i];
      ++col;
    }
  }
  if (col != n) throw Error("Jordan basis is incomplete");
  auto inv = out.Pinv.inverse();
  if (!inv) throw Error("Jordan basis is singular");
  out.P = *inv;
  return out;
}

JordanDecomposition jordan_decompose(const RationalMatrix& M) {
  FieldJordan fj = jordan_decompose_field(M);
  const std::size_t n = M.rows();
  JordanDecomposition out;
  out.P = AlgMatrix(n, n, AlgebraicNumber(0));
  out.Pinv = AlgMatrix(n, n, AlgebraicNumber(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      out.P(i, j) = fj.P(i, j).to_algebraic();
      out.Pinv(i, j) = fj.Pinv(i, j).to_algebraic();
    }
  for (const auto& b : fj.blocks) out.blocks.push_back({b.eigenvalue.to_algebraic(), b.size});
  return out;
}

AlgMatrix assemble_jordan(const std::vector<JordanBlock>& blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) n += static_cast<std::size_t>(b.size);
  AlgMatrix J(n, n, AlgebraicNumber(0));
  std::size_t at = 0;
  for (const auto& b : blocks) {
    for (int k = 0; k < b.size; ++k) {
      J(at + k, at + k) = b.eigenvalue;
      if (k + 1 < b.size) J(at + k, at + k + 1) = AlgebraicNumber(1);
    }
    at += static_cast<std::size_t>(b.size);
  }
  return J;
}

AlgMatrix to_alg_matrix(const RationalMatrix& M) {
  AlgMatrix A(M.rows(), M.cols(), AlgebraicNumber(0));
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) A(i, j) = AlgebraicNumber(M(i, j));
  return A;
}

}  // namespace cll::algebra
