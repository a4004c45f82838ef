#include "fimag/galois.hpp"

#include <algorithm>
#include <numeric>

#include "fimag/catalog.hpp"
#include "fimag/error.hpp"

namespace fimag {

AmbientAction::AmbientAction(GroupAction act, bool require_faithful) : act_(std::move(act)) {
  if (require_faithful) require(act_.is_faithful(), "ambient action: " + act_.group().name() + " does not act faithfully");
}

std::vector<IrrObject> irr_objects(const AmbientAction& a) {
  std::vector<IrrObject> out;
  for (auto& o : a.action().orbits()) out.push_back(IrrObject{std::move(o)});
  return out;
}

std::vector<IrrObject> irr_objects(const AmbientAction& a, std::size_t m) {
  require(m >= 1, "irr_objects: m must be positive");
  std::vector<IrrObject> out;
  for (auto& o : irr_objects(a))
    if (o.size() == m) out.push_back(std::move(o));
  return out;
}

namespace {

void check_orbit(const AmbientAction& a, const IrrObject& s) {
  require(!s.orbit.empty() && s.orbit.back() < a.points(), "irreducible object: point out of range");
  require(a.action().orbit(s.orbit.front()) == s.orbit, "irreducible object: not a single G-orbit");
}

std::size_t position(const IrrObject& s, Elem p) {
  return static_cast<std::size_t>(std::lower_bound(s.orbit.begin(), s.orbit.end(), p) - s.orbit.begin());
}

}  // namespace

std::vector<OrbitMap> invariant_morphisms(const AmbientAction& a, const IrrObject& x, const IrrObject& y) {
  check_orbit(a, x);
  check_orbit(a, y);
  const auto& G = a.group();
  const auto& act = a.action();
  Elem y0 = y.orbit.front();
  Subgroup stab = act.stabilizer(y0);
  std::vector<OrbitMap> out;
  // An invariant map is determined by the image t of y0, which must be
  // fixed by Stab(y0); then f(g·y0) = g·t.
  for (Elem t : x.orbit) {
    bool ok = true;
    for (Elem g : stab.members()) ok = ok && act.act(g, t) == t;
    if (!ok) continue;
    OrbitMap f(y.size());
    for (Elem g = 0; g < G.order(); ++g) f[position(y, act.act(g, y0))] = act.act(g, t);
    std::vector<Elem> img(f);
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    ensure(img == x.orbit, "invariant_morphisms: invariant map is not surjective");
    out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end());
  return out;
}

OrbitMap compose_orbit_maps(const IrrObject& x, const OrbitMap& g, const OrbitMap& f) {
  OrbitMap out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::size_t j = position(x, f[i]);
    require(j < x.size() && x.orbit[j] == f[i], "compose_orbit_maps: f does not land in x");
    out[i] = g[j];
  }
  return out;
}

RegularityTest regularity_test(const AmbientAction& a, const IrrObject& s) {
  RegularityTest r;
  for (const auto& f : invariant_morphisms(a, s, s)) {
    Perm p(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) p[i] = static_cast<Elem>(position(s, f[i]));
    r.h.push_back(std::move(p));
  }
  const std::size_t m = s.size();
  r.order_matches = r.h.size() == m;
  std::vector<bool> reach(m, false);
  for (const auto& p : r.h) reach[p[0]] = true;
  r.transitive = std::all_of(reach.begin(), reach.end(), [](bool v) { return v; });
  bool free = true;
  for (const auto& p : r.h) {
    bool identity = true, fixes = false;
    for (std::size_t i = 0; i < m; ++i) {
      identity = identity && p[i] == i;
      fixes = fixes || p[i] == i;
    }
    free = free && (identity || !fixes);
  }
  r.regular = r.transitive && free;
  return r;
}

GalObject make_gal_object(const AmbientAction& a, const IrrObject& s) {
  auto r = regularity_test(a, s);
  require(r.regular, "gal object: invariant self-maps do not act regularly");
  const std::size_t m = s.size();
  if (m > 8) throw BudgetError("gal object: orbit of size " + std::to_string(m) + " above the permutation guard");
  // H is regular, so a permutation c commuting with H is fixed by c(0):
  // c(h(0)) = h(c(0)).
  std::vector<Perm> cent;
  for (Elem t = 0; t < m; ++t) {
    Perm c(m);
    for (const auto& h : r.h) c[h[0]] = h[t];
    bool commutes = true;
    for (const auto& h : r.h)
      for (std::size_t i = 0; i < m && commutes; ++i) commutes = c[h[i]] == h[c[i]];
    ensure(commutes, "gal object: centralizer candidate does not commute");
    cent.push_back(std::move(c));
  }
  auto hgrp = permutation_group(r.h, m, "H");
  auto gal = permutation_group(cent, m, "Gal");
  ensure(hgrp.group.order() == m && gal.group.order() == m, "gal object: H or Gal has the wrong order");
  return GalObject{s, std::move(hgrp), std::move(gal)};
}

std::vector<GalObject> gal_objects(const AmbientAction& a, std::size_t m) {
  std::vector<GalObject> out;
  for (const auto& s : irr_objects(a, m))
    if (regularity_test(a, s).regular) out.push_back(make_gal_object(a, s));
  return out;
}

std::vector<std::vector<std::uint64_t>> conjugacy_power_sort(const GalObject& g, std::size_t k,
                                                             std::uint64_t budget) {
  const auto& G = g.gal.group;
  const std::uint64_t n = G.order();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (total > budget / n) throw BudgetError("conjugacy_power_sort: |Gal|^k exceeds the budget");
    total *= n;
  }
  std::vector<bool> done(total, false);
  std::vector<std::vector<std::uint64_t>> out;
  std::vector<Elem> tup(k);
  for (std::uint64_t c = 0; c < total; ++c) {
    if (done[c]) continue;
    std::uint64_t r = c;
    for (std::size_t i = k; i-- > 0;) {
      tup[i] = static_cast<Elem>(r % n);
      r /= n;
    }
    std::vector<std::uint64_t> orbit;
    for (Elem x = 0; x < n; ++x) {
      std::uint64_t code = 0;
      for (Elem t : tup) code = code * n + G.conj(x, t);
      if (!done[code]) {
        done[code] = true;
        orbit.push_back(code);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

GalQuotient verify_gal_quotient(const AmbientAction& a, const GalObject& g) {
  const auto& G = a.group();
  const auto& act = a.action();
  const auto& s = g.object;
  const std::size_t m = s.size();
  std::vector<Elem> fix;
  for (Elem x = 0; x < G.order(); ++x) {
    bool all = true;
    for (Elem p : s.orbit) all = all && act.act(x, p) == p;
    if (all) fix.push_back(x);
  }
  Subgroup n(G, fix);
  Quotient q = quotient(G, n);
  const auto& perms = g.gal.perms;
  std::vector<Elem> map(q.group.order(), 0);
  std::vector<bool> set(q.group.order(), false);
  for (Elem x = 0; x < G.order(); ++x) {
    Perm p(m);
    for (std::size_t i = 0; i < m; ++i) p[i] = static_cast<Elem>(position(s, act.act(x, s.orbit[i])));
    auto it = std::lower_bound(perms.begin(), perms.end(), p);
    ensure(it != perms.end() && *it == p,
           "verify_gal_quotient: element " + std::to_string(x) + " of G does not act through Gal(s)");
    Elem img = static_cast<Elem>(it - perms.begin());
    Elem c = q.projection(x);
    ensure(!set[c] || map[c] == img, "verify_gal_quotient: map is not constant on cosets of N");
    map[c] = img;
    set[c] = true;
  }
  GroupHom iso(q.group, g.gal.group, std::move(map));
  ensure(iso.is_injective() && iso.is_surjective(), "verify_gal_quotient: G/N -> Gal(s) is not bijective");
  return GalQuotient{std::move(n), std::move(q), std::move(iso)};
}

std::size_t for_each_coset_ambient(std::size_t max_order, std::size_t max_points,
                                   const std::function<void(const AmbientInstance&)>& visit) {
  std::size_t count = 0;
  for (const auto& G : small_group_catalog(std::min<std::size_t>(max_order, 24))) {
    auto subs = all_subgroups(G);
    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (subs[i].index() > max_points) continue;
      visit(AmbientInstance{G.name() + "/H#" + std::to_string(i), AmbientAction(coset_action(subs[i]), false)});
      ++count;
    }
  }
  return count;
}

GroupAction disjoint_union(const GroupAction& a, const GroupAction& b) {
  require(a.group() == b.group(), "disjoint_union: actions of different groups");
  const std::size_t na = a.points(), nb = b.points(), n = na + nb;
  std::vector<Elem> t(a.group().order() * n);
  for (Elem g = 0; g < a.group().order(); ++g) {
    for (Elem p = 0; p < na; ++p) t[g * n + p] = a.act(g, p);
    for (Elem p = 0; p < nb; ++p) t[g * n + na + p] = static_cast<Elem>(na + b.act(g, p));
  }
  return GroupAction(a.group(), n, std::move(t));
}

}  // namespace fimag
