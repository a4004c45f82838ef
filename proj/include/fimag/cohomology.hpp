#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fimag/gamma_group.hpp"

namespace fimag {

inline constexpr std::uint64_t kDefaultBudget = 1'000'000;

// A map a: Γ -> A with a(st) = a(s) · s(a(t)).
class Cocycle {
 public:
  // Checks the cocycle identity on all |Γ|^2 pairs.
  Cocycle(GammaGroup parent, std::vector<Elem> values);
  static Cocycle trusted(GammaGroup parent, std::vector<Elem> values);
  static Cocycle trivial(const GammaGroup& parent);

  const GammaGroup& parent() const { return parent_; }
  const std::vector<Elem>& values() const { return values_; }
  Elem operator()(Elem s) const { return values_[s]; }
  bool is_trivial() const;

  friend bool operator==(const Cocycle& a, const Cocycle& b) {
    return a.values_ == b.values_ && a.parent_ == b.parent_;
  }

 private:
  struct Trusted {};
  Cocycle(GammaGroup parent, std::vector<Elem> values, Trusted);

  GammaGroup parent_;
  std::vector<Elem> values_;
};

// The first pair (s,t) breaking a(st) = a(s)·s(a(t)), as a diagnostic.
std::optional<std::string> cocycle_violation(const GammaGroup& m, const std::vector<Elem>& values);

// Z^1(Γ, A), in lexicographic order of value tables. Candidate values are
// assigned on generating_sequence(Γ) and propagated along the Cayley graph;
// throws BudgetError when |A|^#generators exceeds `budget`.
std::vector<Cocycle> enumerate_z1(const GammaGroup& m, std::uint64_t budget = kDefaultBudget);

// The cocycle s -> b^-1 · a(s) · s(b).
Cocycle twist_by(const Cocycle& a, Elem b);

// Some b with a2(s) = b^-1 · a1(s) · s(b) for all s, found by exhaustive search.
std::optional<Elem> cohomologous(const Cocycle& a1, const Cocycle& a2);

struct H1Classes {
  GammaGroup parent;
  std::vector<Cocycle> cocycles;             // Z^1, lexicographic
  std::vector<std::size_t> class_of;         // cocycle -> class
  std::vector<std::size_t> representatives;  // class -> lexicographically least cocycle
  std::vector<Elem> witness;                 // cocycles[i] = twist_by(rep(class_of[i]), witness[i])
  std::map<std::vector<Elem>, std::size_t> index;

  std::size_t class_count() const { return representatives.size(); }
  std::size_t trivial_class() const;
  // Class of an arbitrary cocycle of the same Γ-group.
  std::size_t class_of_values(const std::vector<Elem>& values) const;
};

H1Classes h1(const GammaGroup& m, std::uint64_t budget = kDefaultBudget);

bool is_equivariant(const GroupHom& f, const GammaGroup& source, const GammaGroup& target);

struct InducedH1Map {
  std::vector<std::size_t> map;     // class in source -> class in target
  std::vector<std::size_t> kernel;  // source classes landing on the trivial class
};

// Map on H^1 induced by composing cocycles with an equivariant f: A -> B.
InducedH1Map induced_h1_map(const GroupHom& f, const H1Classes& source, const H1Classes& target);

struct QuotientModule {
  Quotient quotient;   // Γ -> Γ/N
  GammaGroup module;   // Γ/N acting on A
};

// The Γ/N-module obtained from a Γ-module on which the normal subgroup N
// acts trivially.
QuotientModule descend_module(const GammaGroup& m, const Subgroup& n);

// Composition of a cocycle over Γ/N with the projection Γ -> Γ/N. `full`
// must be the Γ-module whose action factors through the projection.
Cocycle inflate(const Cocycle& a, const GammaGroup& full, const GroupHom& projection);

struct FactoredCocycle {
  Subgroup g0;           // kernel of the action on A
  Subgroup g1;           // kernel of a restricted to g0
  Subgroup g2;           // core of g1 in Γ
  QuotientModule level;  // Γ/g2 acting on A
  Cocycle factored;      // a' with a = a' ∘ projection
  std::uint64_t index;   // [Γ : g2]
  std::uint64_t bound;   // (n!)^(n!) with n = |A|, saturated at UINT64_MAX
};

// Factors a through the finite level Γ/G2 described above. Every step is
// checked; a failure throws CheckFailure.
FactoredCocycle factor_cocycle(const Cocycle& a);

// (n!)^(n!), saturated at UINT64_MAX.
std::uint64_t factorial_power_bound(std::uint64_t n);

// For abelian A with gcd(|Γ|, |A|) = 1: b with a(s) = b^-1 · s(b), obtained
// by averaging a over Γ. The result is verified before returning.
Elem coprime_splitting(const Cocycle& a);

}  // namespace fimag
