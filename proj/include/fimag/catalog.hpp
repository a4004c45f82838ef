#pragma once

#include <vector>

#include "fimag/gamma_group.hpp"

namespace fimag {

// Order 2n; element r^k s^j is stored at k + n*j.
FiniteGroup make_dihedral(std::size_t n);
// Order 4n, <a, x | a^2n, x^2 = a^n, x a x^-1 = a^-1>; a^k x^j at k + 2n*j.
// n = 2 is the quaternion group.
FiniteGroup make_dicyclic(std::size_t n);
// C_m ⋊ C_n with the generator of C_n acting by x -> x^r; (x, y) at x + m*y.
FiniteGroup make_metacyclic(std::size_t m, std::size_t n, std::size_t r);
// Alt(n) for 1 <= n <= 7, as even permutations.
FiniteGroup make_alternating(std::size_t n);

// A fixed list of pairwise non-isomorphic groups of order <= max_order
// (max_order <= 24): cyclic groups, abelian products, dihedral, dicyclic,
// A4, S4 and a few metacyclic groups. Not complete up to isomorphism.
// Ordered by order, then by listing order.
std::vector<FiniteGroup> small_group_catalog(std::size_t max_order);

// Abelian members of the catalog.
std::vector<FiniteGroup> small_abelian_catalog(std::size_t max_order);

// Every action of gamma on coeff by automorphisms, one per homomorphism
// gamma -> Aut(coeff), in the order produced by homomorphisms().
std::vector<GammaGroup> all_actions(const FiniteGroup& gamma, const FiniteGroup& coeff);

}  // namespace fimag
