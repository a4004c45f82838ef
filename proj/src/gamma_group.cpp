#include "fimag/gamma_group.hpp"

#include "fimag/error.hpp"

namespace fimag {

GammaGroup GammaGroup::trusted(FiniteGroup gamma, FiniteGroup coeff, std::vector<Elem> action) {
  return GammaGroup(std::make_shared<const Data>(Data{std::move(gamma), std::move(coeff), std::move(action)}));
}

GammaGroup::GammaGroup(FiniteGroup gamma, FiniteGroup coeff, std::vector<Elem> action)
    : d_(std::make_shared<const Data>(Data{std::move(gamma), std::move(coeff), std::move(action)})) {
  const auto& G = d_->gamma;
  const auto& A = d_->coeff;
  require(d_->action.size() == G.order() * A.order(), "gamma-group action table has wrong size");
  for (Elem v : d_->action) require(v < A.order(), "gamma-group action entry out of range");
  for (Elem a = 0; a < A.order(); ++a)
    if (!(act(G.identity(), a) == a)) throw InputError("identity of Γ moves coefficient " + std::to_string(a));
  for (Elem s = 0; s < G.order(); ++s) {
    std::vector<bool> hit(A.order(), false);
    for (Elem a = 0; a < A.order(); ++a) hit[act(s, a)] = true;
    for (Elem a = 0; a < A.order(); ++a)
      if (!(hit[a])) throw InputError("Γ element " + std::to_string(s) + " does not act bijectively");
    for (Elem a = 0; a < A.order(); ++a)
      for (Elem b = 0; b < A.order(); ++b)
        if (!(act(s, A.mul(a, b)) == A.mul(act(s, a), act(s, b)))) throw InputError("Γ element " + std::to_string(s) + " is not multiplicative at (" + std::to_string(a) + "," +
                    std::to_string(b) + ")");
  }
  for (Elem s = 0; s < G.order(); ++s)
    for (Elem t = 0; t < G.order(); ++t)
      for (Elem a = 0; a < A.order(); ++a)
        if (!(act(G.mul(s, t), a) == act(s, act(t, a)))) throw InputError("action law fails at (" + std::to_string(s) + "," + std::to_string(t) + ")");
}

GammaGroup GammaGroup::trivial_action(FiniteGroup gamma, FiniteGroup coeff) {
  std::vector<Elem> t(gamma.order() * coeff.order());
  for (std::size_t s = 0; s < gamma.order(); ++s)
    for (std::size_t a = 0; a < coeff.order(); ++a) t[s * coeff.order() + a] = static_cast<Elem>(a);
  return trusted(std::move(gamma), std::move(coeff), std::move(t));
}

GammaGroup GammaGroup::from_automorphisms(const GroupHom& rho, const AutomorphismGroup& aut) {
  require(rho.target() == aut.group, "from_automorphisms: homomorphism does not land in Aut(A)");
  const FiniteGroup& A = aut.maps.front().source();
  std::size_t na = A.order();
  std::vector<Elem> t(rho.source().order() * na);
  for (Elem s = 0; s < rho.source().order(); ++s)
    for (Elem a = 0; a < na; ++a) t[s * na + a] = aut.maps[rho(s)](a);
  return trusted(rho.source(), A, std::move(t));
}

Subgroup GammaGroup::action_kernel() const {
  std::vector<Elem> m;
  for (Elem s = 0; s < gamma().order(); ++s) {
    bool trivial = true;
    for (Elem a = 0; a < coeff().order() && trivial; ++a) trivial = act(s, a) == a;
    if (trivial) m.push_back(s);
  }
  return make_trusted_subgroup(gamma(), std::move(m));
}

Subgroup GammaGroup::fixed_subgroup() const {
  std::vector<Elem> m;
  for (Elem a = 0; a < coeff().order(); ++a) {
    bool fixed = true;
    for (Elem s = 0; s < gamma().order() && fixed; ++s) fixed = act(s, a) == a;
    if (fixed) m.push_back(a);
  }
  return make_trusted_subgroup(coeff(), std::move(m));
}

GammaGroup GammaGroup::restrict_to(const Subgroup& h) const {
  require(h.parent() == coeff(), "restrict_to: subgroup of a different group");
  Embedded e = as_group(h);
  std::vector<Elem> local(coeff().order(), 0);
  for (std::size_t i = 0; i < h.members().size(); ++i) local[h.members()[i]] = static_cast<Elem>(i);
  std::size_t k = h.order();
  std::vector<Elem> t(gamma().order() * k);
  for (Elem s = 0; s < gamma().order(); ++s)
    for (std::size_t i = 0; i < k; ++i) {
      Elem img = act(s, h.members()[i]);
      require(h.contains(img), "restrict_to: subgroup is not Γ-stable");
      t[s * k + i] = local[img];
    }
  return trusted(gamma(), e.group, std::move(t));
}

GammaGroup GammaGroup::pullback(const GroupHom& f) const {
  require(f.target() == gamma(), "pullback: homomorphism does not land in Γ");
  std::size_t na = coeff().order();
  std::vector<Elem> t(f.source().order() * na);
  for (Elem s = 0; s < f.source().order(); ++s)
    for (Elem a = 0; a < na; ++a) t[s * na + a] = act(f(s), a);
  return trusted(f.source(), coeff(), std::move(t));
}

}  // namespace fimag
