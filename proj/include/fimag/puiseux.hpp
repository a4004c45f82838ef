#pragma once

#include <map>
#include <optional>
#include <string>

#include "fimag/cyclotomic.hpp"

namespace fimag {

// A finite sum Σ c_q t^q over ℚ(ζ_N) with exponents in (1/n)ℤ.
class PuiseuxElement {
 public:
  using Terms = std::map<mpq_class, CycNumber>;

  // Zero element.
  PuiseuxElement(std::size_t conductor, std::size_t denom);
  // Zero coefficients are dropped; exponents must lie in (1/denom)ℤ.
  PuiseuxElement(std::size_t conductor, std::size_t denom, Terms terms);
  static PuiseuxElement monomial(const CycNumber& c, const mpq_class& q, std::size_t denom);
  static PuiseuxElement constant(const CycNumber& c, std::size_t denom);

  std::size_t conductor() const { return conductor_; }
  std::size_t denom() const { return denom_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }

  PuiseuxElement operator+(const PuiseuxElement& o) const;
  PuiseuxElement operator-(const PuiseuxElement& o) const;
  PuiseuxElement operator*(const PuiseuxElement& o) const;
  PuiseuxElement pow(unsigned k) const;
  bool operator==(const PuiseuxElement& o) const;

  std::string str() const;

 private:
  void compatible(const PuiseuxElement& o) const;

  std::size_t conductor_;
  std::size_t denom_;
  Terms terms_;
};

// Least exponent; nullopt stands for +∞ at zero.
std::optional<mpq_class> val(const PuiseuxElement& x);
// Coefficient of the least exponent; InputError at zero.
CycNumber ac(const PuiseuxElement& x);

// Term syntax: whitespace-separated "coeff@q" with q a rational exponent and
// coeff a rational, "z^k", "r*z^k" or a bracketed list "[a0,a1,...]" of
// coefficients of powers of z = ζ_N. Example: "3@2 1@3" is 3t^2 + t^3.
PuiseuxElement parse_puiseux(const std::string& text, std::size_t conductor, std::size_t denom);
CycNumber parse_cyc(const std::string& text, std::size_t conductor);

}  // namespace fimag
