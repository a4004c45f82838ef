#include "fimag/descent.hpp"

#include <algorithm>

#include "fimag/catalog.hpp"
#include "fimag/error.hpp"

namespace fimag {

HomogeneousSpace::HomogeneousSpace(GammaGroup grp, GroupAction sym_action, GroupAction grp_action, Trusted)
    : grp_(std::move(grp)), sym_(std::move(sym_action)), gact_(std::move(grp_action)) {}

HomogeneousSpace HomogeneousSpace::trusted(GammaGroup grp, GroupAction sym_action, GroupAction grp_action) {
  return HomogeneousSpace(std::move(grp), std::move(sym_action), std::move(grp_action), Trusted{});
}

HomogeneousSpace::HomogeneousSpace(GammaGroup grp, GroupAction sym_action, GroupAction grp_action)
    : grp_(std::move(grp)), sym_(std::move(sym_action)), gact_(std::move(grp_action)) {
  require(sym_.group() == grp_.gamma(), "homogeneous space: point action is not by Γ");
  require(gact_.group() == grp_.coeff(), "homogeneous space: G-action is not by G");
  require(sym_.points() == gact_.points(), "homogeneous space: the two actions use different point sets");
  require(gact_.is_transitive(), "homogeneous space: G does not act transitively");
  for (Elem s = 0; s < sym().order(); ++s)
    for (Elem g = 0; g < grp_.coeff().order(); ++g)
      for (Elem x = 0; x < points(); ++x)
        if (sigma(s, act(g, x)) != act(grp_.act(s, g), sigma(s, x)))
          throw InputError("homogeneous space: equivariance fails at (σ,g,x) = (" + std::to_string(s) + "," +
                           std::to_string(g) + "," + std::to_string(x) + ")");
}

std::vector<Elem> rational_points(const HomogeneousSpace& h) {
  return h.sym_action().fixed_points(Subgroup::whole(h.sym()));
}

std::vector<std::vector<Elem>> orbit_space(const HomogeneousSpace& h) {
  auto rational = rational_points(h);
  auto fixed = h.grp().fixed_subgroup();
  std::vector<bool> done(h.points(), false);
  std::vector<std::vector<Elem>> out;
  for (Elem x : rational) {
    if (done[x]) continue;
    std::vector<Elem> orbit;
    for (Elem g : fixed.members()) {
      Elem y = h.act(g, x);
      if (!done[y]) {
        done[y] = true;
        orbit.push_back(y);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

namespace {

bool is_rational(const HomogeneousSpace& h, Elem x) {
  for (Elem s = 0; s < h.sym().order(); ++s)
    if (h.sigma(s, x) != x) return false;
  return true;
}

Elem local_index(const Subgroup& s, Elem g) {
  const auto& m = s.members();
  return static_cast<Elem>(std::lower_bound(m.begin(), m.end(), g) - m.begin());
}

}  // namespace

StabilizerModule stabilizer_module(const HomogeneousSpace& h, Elem c) {
  require(c < h.points(), "stabilizer_module: point out of range");
  require(is_rational(h, c), "stabilizer_module: base point is not rational");
  Subgroup stab = h.grp_action().stabilizer(c);
  return {stab, as_group(stab, "Stab"), h.grp().restrict_to(stab)};
}

Cocycle cocycle_via(const HomogeneousSpace& h, Elem c, Elem v, Elem g) {
  require(c < h.points() && v < h.points(), "cocycle_of_point: point out of range");
  require(is_rational(h, c), "cocycle_of_point: base point is not rational");
  require(is_rational(h, v), "cocycle_of_point: point is not rational");
  require(g < h.grp().coeff().order() && h.act(g, c) == v, "cocycle_of_point: g does not carry c to v");
  auto sm = stabilizer_module(h, c);
  const auto& G = h.grp().coeff();
  std::vector<Elem> vals(h.sym().order());
  for (Elem s = 0; s < vals.size(); ++s) {
    Elem a = G.mul(G.inv(g), h.grp().act(s, g));
    ensure(sm.stab.contains(a), "cocycle_of_point: value leaves the stabilizer");
    vals[s] = local_index(sm.stab, a);
  }
  return Cocycle(sm.module, std::move(vals));
}

Cocycle cocycle_of_point(const HomogeneousSpace& h, Elem c, Elem v) {
  require(c < h.points() && v < h.points(), "cocycle_of_point: point out of range");
  for (Elem g = 0; g < h.grp().coeff().order(); ++g)
    if (h.act(g, c) == v) return cocycle_via(h, c, v, g);
  throw InputError("cocycle_of_point: no g carries c to v (action not transitive)");
}

DescentReport descent_report(const HomogeneousSpace& h, Elem c, std::uint64_t budget) {
  DescentReport r;
  r.base = c;
  auto sm = stabilizer_module(h, c);
  r.stab_order = sm.stab.order();
  auto hs = h1(sm.module, budget);
  auto hg = h1(h.grp(), budget);
  r.stab_classes = hs.class_count();
  r.group_classes = hg.class_count();
  r.kernel = induced_h1_map(sm.embedded.inclusion, hs, hg).kernel;
  r.orbits = orbit_space(h);

  auto fail = [&](std::string why) {
    if (r.failure.empty()) r.failure = std::move(why);
  };
  const auto& G = h.grp().coeff();
  for (std::size_t k = 0; k < r.orbits.size(); ++k) {
    std::optional<std::size_t> cls;
    for (Elem v : r.orbits[k])
      for (Elem g = 0; g < G.order(); ++g) {
        if (h.act(g, c) != v) continue;
        std::size_t here = hs.class_of_values(cocycle_via(h, c, v, g).values());
        if (!cls) cls = here;
        else if (*cls != here)
          fail("orbit " + std::to_string(k) + ": point " + std::to_string(v) + " via g=" + std::to_string(g) +
               " gives class " + std::to_string(here) + ", expected " + std::to_string(*cls));
      }
    r.matching.push_back(*cls);
  }
  for (std::size_t i = 0; i < r.matching.size(); ++i)
    for (std::size_t j = i + 1; j < r.matching.size(); ++j)
      if (r.matching[i] == r.matching[j])
        fail("orbits " + std::to_string(i) + " and " + std::to_string(j) + " share class " +
             std::to_string(r.matching[i]));
  auto image = r.matching;
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  if (image != r.kernel)
    fail("image of the orbit map has " + std::to_string(image.size()) + " classes, kernel has " +
         std::to_string(r.kernel.size()));
  r.passed = r.failure.empty();
  return r;
}

HomogeneousSpace coset_space(const GammaGroup& m, const Subgroup& h) {
  require(h.parent() == m.coeff(), "coset_space: subgroup of a different group");
  for (Elem s = 0; s < m.gamma().order(); ++s)
    for (Elem x : h.members())
      require(h.contains(m.act(s, x)), "coset_space: subgroup is not Γ-stable");
  GroupAction gact = coset_action(h);
  const auto& G = m.coeff();
  std::size_t k = gact.points();
  // Coset of g is g·H, i.e. the image of coset 0 under g.
  std::vector<Elem> rep(k, 0);
  for (Elem g = G.order(); g-- > 0;) rep[gact.act(g, 0)] = g;
  std::vector<Elem> t(m.gamma().order() * k);
  for (Elem s = 0; s < m.gamma().order(); ++s)
    for (std::size_t x = 0; x < k; ++x) t[s * k + x] = gact.act(m.act(s, rep[x]), 0);
  return HomogeneousSpace(m, GroupAction(m.gamma(), k, std::move(t)), gact);
}

HomogeneousSpace twist(const HomogeneousSpace& h, const Cocycle& a) {
  require(a.parent() == h.grp(), "twist: cocycle is not over the space's Γ-group");
  const auto& G = h.grp().coeff();
  const std::size_t ng = G.order(), k = h.points(), ns = h.sym().order();
  std::vector<Elem> gt(ns * ng), xt(ns * k);
  for (Elem s = 0; s < ns; ++s) {
    Elem as = a(s);
    for (Elem g = 0; g < ng; ++g) gt[s * ng + g] = G.mul(G.mul(as, h.grp().act(s, g)), G.inv(as));
    for (Elem x = 0; x < k; ++x) xt[s * k + x] = h.act(as, h.sigma(s, x));
  }
  GammaGroup grp(h.sym(), G, std::move(gt));
  return HomogeneousSpace(grp, GroupAction(h.sym(), k, std::move(xt)), h.grp_action());
}

std::size_t for_each_descent_instance(const DescentFamilyOptions& opts,
                                      const std::function<void(const DescentInstance&)>& visit) {
  std::vector<FiniteGroup> syms;
  for (std::size_t n = 1; n <= 6; ++n) syms.push_back(make_cyclic(n));
  syms.push_back(direct_product(make_cyclic(2), make_cyclic(2)));
  syms.push_back(make_dihedral(3));
  std::stable_sort(syms.begin(), syms.end(),
                   [](const FiniteGroup& a, const FiniteGroup& b) { return a.order() < b.order(); });

  std::size_t count = 0;
  for (const auto& S : syms) {
    if (S.order() > opts.max_sym) continue;
    for (const auto& G : small_group_catalog(std::min<std::size_t>(opts.max_group, 24))) {
      auto subgroups = all_subgroups(G);
      auto actions = all_actions(S, G);
      for (std::size_t ai = 0; ai < actions.size(); ++ai) {
        const auto& m = actions[ai];
        auto classes = h1(m);
        for (std::size_t hi = 0; hi < subgroups.size(); ++hi) {
          const auto& H = subgroups[hi];
          if (H.index() > opts.max_points) continue;
          bool stable = true;
          for (Elem s = 0; s < S.order() && stable; ++s)
            for (Elem x : H.members())
              if (!H.contains(m.act(s, x))) {
                stable = false;
                break;
              }
          if (!stable) continue;
          HomogeneousSpace base = coset_space(m, H);
          for (std::size_t c = 0; c < classes.class_count(); ++c) {
            const auto& a = classes.cocycles[classes.representatives[c]];
            std::string label = S.name() + " on " + G.name() + " action " + std::to_string(ai) + " H#" +
                                std::to_string(hi) + " twist " + std::to_string(c);
            visit(DescentInstance{label, a.is_trivial() ? base : twist(base, a)});
            ++count;
          }
        }
      }
    }
  }
  return count;
}

}  // namespace fimag
