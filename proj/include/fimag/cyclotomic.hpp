#pragma once

#include <memory>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace fimag {

inline constexpr std::size_t kMaxConductor = 120;

// Φ_N with rational coefficients, lowest degree first.
std::vector<mpq_class> cyclotomic_polynomial(std::size_t n);
std::size_t euler_phi(std::size_t n);

// ℚ(ζ_N) = ℚ[x]/Φ_N. Instances are shared per conductor.
class CyclotomicField {
 public:
  static std::shared_ptr<const CyclotomicField> get(std::size_t n);

  std::size_t conductor() const { return n_; }
  std::size_t degree() const { return poly_.size() - 1; }
  const std::vector<mpq_class>& modulus() const { return poly_; }
  // Reduces a polynomial in ζ modulo Φ_N, returning exactly degree() coefficients.
  std::vector<mpq_class> reduce(std::vector<mpq_class> p) const;

  explicit CyclotomicField(std::size_t n);

 private:
  std::size_t n_;
  std::vector<mpq_class> poly_;
};

class CycNumber {
 public:
  // Zero of ℚ(ζ_N).
  explicit CycNumber(std::size_t n);
  CycNumber(std::size_t n, const mpq_class& r);
  // Polynomial in ζ_N, reduced on construction.
  CycNumber(std::size_t n, std::vector<mpq_class> poly);

  static CycNumber zeta(std::size_t n, long long k = 1);  // ζ_N^k

  std::size_t conductor() const { return field_->conductor(); }
  const std::vector<mpq_class>& coeffs() const { return c_; }
  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;

  CycNumber operator+(const CycNumber& o) const;
  CycNumber operator-(const CycNumber& o) const;
  CycNumber operator-() const;
  CycNumber operator*(const CycNumber& o) const;
  CycNumber operator/(const CycNumber& o) const;
  CycNumber inverse() const;
  CycNumber pow(long long k) const;
  bool operator==(const CycNumber& o) const;
  bool operator!=(const CycNumber& o) const { return !(*this == o); }

  // The automorphism ζ -> ζ^u, gcd(u, N) = 1.
  CycNumber galois(long long u) const;
  // Image in ℚ(ζ_M) for N | M, via ζ_N = ζ_M^(M/N).
  CycNumber embed(std::size_t m) const;

  // "a0 + a1*z + a2*z^2" style, z = ζ_N; "0" for zero.
  std::string str() const;

 private:
  CycNumber(std::shared_ptr<const CyclotomicField> f, std::vector<mpq_class> c)
      : field_(std::move(f)), c_(std::move(c)) {}
  void same_field(const CycNumber& o) const;

  std::shared_ptr<const CyclotomicField> field_;
  std::vector<mpq_class> c_;
};

// A primitive n-th root of unity inside ℚ(ζ_N), or an InputError when μ_n is
// not contained there (that happens unless n | N, or N odd and n | 2N).
CycNumber root_of_unity(std::size_t big_n, std::size_t n);
bool contains_roots_of_unity(std::size_t big_n, std::size_t n);

}  // namespace fimag
