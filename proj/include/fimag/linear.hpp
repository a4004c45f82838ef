#pragma once

#include <cstddef>
#include <vector>

#include "fimag/gamma_group.hpp"

namespace fimag {

// Finite field F_p[x]/(f) with a fixed Conway polynomial f per order:
//   F4: x^2+x+1   F8: x^3+x+1   F9: x^2+2x+2   F16: x^4+x+1
// Prime fields use f = x. Element index i encodes the residue
// sum_k c_k x^k with i = sum_k c_k p^k (0 <= c_k < p).
class FiniteField {
 public:
  // Supported orders: 2, 3, 4, 5, 7, 8, 9, 11, 13, 16.
  explicit FiniteField(std::size_t order);

  std::size_t order() const { return q_; }
  std::size_t characteristic() const { return p_; }
  std::size_t degree() const { return k_; }
  // Coefficients of the defining polynomial, constant term first.
  const std::vector<unsigned>& modulus() const { return modulus_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem add(Elem a, Elem b) const { return add_[a * q_ + b]; }
  Elem mul(Elem a, Elem b) const { return mul_[a * q_ + b]; }
  Elem neg(Elem a) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem inv(Elem a) const;  // a != 0
  Elem pow(Elem a, std::size_t e) const;

 private:
  std::size_t p_, k_, q_;
  std::vector<unsigned> modulus_;
  std::vector<Elem> add_, mul_;
};

// GL_n over the field with q^m elements; Γ = C_m acts entrywise, with the
// element k of C_m acting by x -> x^(q^k). Guards: n in {1,2}, q in {2,3,4,5},
// m in {1,2,3}, q^m <= 16, and |GL_n| <= kMaxGroupOrder. Matrices are indexed
// identity first, then in lexicographic order of their row-major entries.
GammaGroup make_gl(std::size_t n, std::size_t q, std::size_t m);

// |GL_n(F_f)| = prod_{i<n} (f^n - f^i).
std::size_t gl_order(std::size_t n, std::size_t f);

}  // namespace fimag
