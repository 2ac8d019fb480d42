#pragma once

#include <utility>
#include <vector>

#include "cll/algebra/number_field.hpp"

namespace cll::algebra {

using AlgMatrix = Matrix<AlgebraicNumber>;
using FieldMatrix = Matrix<FieldElem>;

struct JordanBlock {
  AlgebraicNumber eigenvalue;
  int size;
};

/// M = Pinv * J * P.
struct JordanDecomposition {
  AlgMatrix P, Pinv;
  std::vector<JordanBlock> blocks;
};

/// The same decomposition kept inside the splitting field of the characteristic
/// polynomial; the trajectory code works on this form.
struct FieldJordan {
  struct Block {
    FieldElem eigenvalue;
    int size;
    int offset;  // first column of the block in Pinv
  };
  FieldPtr K;
  FieldMatrix P, Pinv;
  std::vector<Block> blocks;
};

std::vector<std::pair<AlgebraicNumber, int>> eigenvalues(const RationalMatrix& M);
FieldJordan jordan_decompose_field(const RationalMatrix& M);
JordanDecomposition jordan_decompose(const RationalMatrix& M);

/// Block-diagonal J assembled from blocks.
AlgMatrix assemble_jordan(const std::vector<JordanBlock>& blocks);
AlgMatrix to_alg_matrix(const RationalMatrix& M);

/// (Re, Im) lexicographic comparison of field elements, exact.
int compare_re_im(const FieldElem& a, const FieldElem& b);

}  // namespace cll::algebra
