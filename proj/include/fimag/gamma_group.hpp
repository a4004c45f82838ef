#pragma once

#include <memory>
#include <vector>

#include "fimag/group.hpp"

namespace fimag {

// A coefficient group A together with an action of Γ on A by automorphisms.
class GammaGroup {
 public:
  // Validates that each γ acts as an automorphism and that the rule is an
  // action. `action[s * |A| + a]` is s·a.
  GammaGroup(FiniteGroup gamma, FiniteGroup coeff, std::vector<Elem> action);

  static GammaGroup trusted(FiniteGroup gamma, FiniteGroup coeff, std::vector<Elem> action);
  static GammaGroup trivial_action(FiniteGroup gamma, FiniteGroup coeff);
  // Action through a homomorphism Γ -> Aut(A).
  static GammaGroup from_automorphisms(const GroupHom& rho, const AutomorphismGroup& aut);

  const FiniteGroup& gamma() const { return d_->gamma; }
  const FiniteGroup& coeff() const { return d_->coeff; }
  Elem act(Elem s, Elem a) const { return d_->action[static_cast<std::size_t>(s) * d_->coeff.order() + a]; }
  const std::vector<Elem>& action() const { return d_->action; }

  bool same_as(const GammaGroup& o) const { return d_ == o.d_; }
  friend bool operator==(const GammaGroup& a, const GammaGroup& b) {
    return a.d_ == b.d_ ||
           (a.gamma() == b.gamma() && a.coeff() == b.coeff() && a.action() == b.action());
  }

  // Elements of Γ acting trivially on A.
  Subgroup action_kernel() const;
  // A^Γ.
  Subgroup fixed_subgroup() const;
  bool is_trivial_action() const { return action_kernel().order() == gamma().order(); }

  // Γ acting on a Γ-stable subgroup of A.
  GammaGroup restrict_to(const Subgroup& h) const;
  // Same coefficients, acting group pulled back along f: Γ' -> Γ.
  GammaGroup pullback(const GroupHom& f) const;

 private:
  struct Data {
    FiniteGroup gamma;
    FiniteGroup coeff;
    std::vector<Elem> action;
  };
  explicit GammaGroup(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

}  // namespace fimag
