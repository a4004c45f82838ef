#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fimag/group.hpp"
#include "fimag/puiseux.hpp"

namespace fimag {

inline constexpr std::size_t kMaxTowerConductor = 60;

// K = ℚ(ζ_N)((t)) inside L' = ℚ(ζ_N')((t^(1/n))).
struct Tower {
  std::size_t base = 1;  // N
  std::size_t top = 1;   // N'
  std::size_t ram = 1;   // n

  std::string str() const;
};

// Requires N | N', μ_n ⊆ ℚ(ζ_N') and N', n <= 60.
Tower make_tower(std::size_t base, std::size_t top, std::size_t ram);

// ζ -> ζ^u on coefficients (u mod N', u ≡ 1 mod N), t^(1/n) -> w^j t^(1/n)
// with w = root_of_unity(N', n).
struct TowerAut {
  long long u = 1;
  long long j = 0;
  bool operator==(const TowerAut&) const = default;
};

class TowerAutGroup {
 public:
  explicit TowerAutGroup(const Tower& tower);

  const Tower& tower() const { return tower_; }
  const FiniteGroup& group() const { return group_; }
  const std::vector<TowerAut>& elements() const { return elems_; }
  const TowerAut& element(Elem s) const { return elems_[s]; }
  Elem index_of(const TowerAut& a) const;
  // Aut(L'/K_u): elements fixing ℚ(ζ_N') (u = 1).
  const Subgroup& ramified() const { return ramified_; }
  // Aut(L'/K_rr): elements fixing t^(1/n) (j = 0).
  const Subgroup& cyclotomic() const { return cyclotomic_; }
  const CycNumber& root() const { return w_; }

  CycNumber apply(Elem s, const CycNumber& c) const;
  PuiseuxElement apply(Elem s, const PuiseuxElement& x) const;
  // Every element is uniquely a product of a cyclotomic and a ramified one.
  bool decomposition_holds() const;

 private:
  Tower tower_;
  CycNumber w_;
  std::vector<TowerAut> elems_;
  FiniteGroup group_;
  Subgroup ramified_, cyclotomic_;
};

// Builds the group, checks that it fixes K on generators, has order
// n·[ℚ(ζ_N'):ℚ(ζ_N)] and decomposes.
TowerAutGroup aut_group(const Tower& tower);

struct ResidueCertificate {
  std::size_t left_order = 0;        // |Aut(L'/K_rr)|
  std::size_t right_order = 0;       // |Gal(ℚ(ζ_N')/ℚ(ζ_N))|
  std::vector<long long> right;      // units k with ζ -> ζ^k fixing ℚ(ζ_N)
  std::vector<std::size_t> map;      // cyclotomic()[i] -> index into right
  bool bijective = false;
};

ResidueCertificate residue_iso_check(const TowerAutGroup& g);

// σ(e)/e for σ in the ramified part and a monomial e with e^n in K.
CycNumber kummer_pairing(const TowerAutGroup& g, Elem sigma, const PuiseuxElement& e);

struct Claim3Certificate {
  std::size_t aut_order = 0;  // |Aut(L'/K_u)|
  std::size_t hom_order = 0;  // |Hom(Γ(L')/Γ(K), μ_n)| = |μ_n|
  std::vector<std::size_t> exponents;  // b(σ, t^(1/n)) = w^exponents[i], σ = ramified()[i]
  bool homomorphism = false;
  bool multiplicative = false;  // b(σ, t^(k/n)) = b(σ, t^(1/n))^k
  bool factors = false;         // b depends only on the exponent modulo ℤ
  bool injective = false;
  bool surjective = false;

  bool passed() const { return homomorphism && multiplicative && factors && injective && surjective; }
};

Claim3Certificate verify_claim3(const TowerAutGroup& g);

struct PairingReport {
  std::size_t pairs = 0;
  std::size_t multiplicative_failures = 0;
  std::size_t trivial_failures = 0;  // b(σ, e) != 1 for val(e) in Γ(K)
  std::size_t factor_failures = 0;   // b(σ, e·t^m) != b(σ, e)
  bool passed() const { return multiplicative_failures + trivial_failures + factor_failures == 0; }
};

// Random monomials c·t^(k/n) with c = r·ζ_N^a·w^b, so that e^n lies in K.
PairingReport check_pairing(const TowerAutGroup& g, std::size_t pairs, std::uint64_t seed);

}  // namespace fimag
