#pragma once

#include <vector>

#include "cll/pef/pef.hpp"

namespace cll::pef {

/// Integer-lattice basis of a set of exponents: every input equals
/// sum_i coords[k][i] * basis[i] with integer coords.
struct IntegralBasis {
  std::vector<FieldElem> basis;
  std::vector<std::vector<Integer>> coords;
};

IntegralBasis integral_basis(const std::vector<FieldElem>& lambdas, const FieldPtr& K);

/// PEF with the same real roots as f and no repeated factor (as a polynomial in
/// t and the exponential monomials). Real input gives real output.
/// Throws DegenerateInput when f is identically zero.
Pef square_free_part(const Pef& f);

/// Common factor of f and g (up to a unit); a constant when they are coprime.
Pef pef_gcd(const Pef& f, const Pef& g);

}  // namespace cll::pef
