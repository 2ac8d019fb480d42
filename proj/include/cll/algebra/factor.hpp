#pragma once

#include <utility>
#include <vector>

#include "cll/algebra/upoly.hpp"

namespace cll::algebra {

/// Square-free decomposition p = c * prod f_i^i (Yun). Returns (f_i, i) with
/// monic non-constant f_i.
std::vector<std::pair<QPoly, int>> squarefree_decomposition(const QPoly& p);

/// Monic irreducible factors over Q of a square-free polynomial
/// (Zassenhaus: modular factorization, Hensel lifting, recombination).
std::vector<QPoly> irreducible_factors(const QPoly& squarefree);

/// Complete factorization over Q into monic irreducibles with multiplicity.
std::vector<std::pair<QPoly, int>> factor(const QPoly& p);

}  // namespace cll::algebra
