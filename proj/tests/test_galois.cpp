#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "fimag/catalog.hpp"
#include "fimag/error.hpp"
#include "fimag/galois.hpp"

using namespace fimag;

namespace {

// All maps y -> x commuting with G, by exhaustive search.
std::vector<OrbitMap> oracle_invariant(const AmbientAction& a, const IrrObject& x, const IrrObject& y) {
  std::vector<OrbitMap> out;
  std::vector<std::size_t> idx(y.size(), 0);
  auto pos = [&](Elem p) { return std::lower_bound(y.orbit.begin(), y.orbit.end(), p) - y.orbit.begin(); };
  while (true) {
    OrbitMap f(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) f[i] = x.orbit[idx[i]];
    bool ok = true;
    for (Elem g = 0; g < a.group().order() && ok; ++g)
      for (std::size_t i = 0; i < y.size() && ok; ++i)
        ok = f[pos(a.action().act(g, y.orbit[i]))] == a.action().act(g, f[i]);
    if (ok) out.push_back(f);
    std::size_t i = 0;
    while (i < idx.size() && idx[i] + 1 == x.size()) idx[i++] = 0;
    if (i == idx.size()) break;
    ++idx[i];
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Centralizer of a set of permutations inside Sym(m), by enumeration.
std::set<Perm> oracle_centralizer(const std::vector<Perm>& h, std::size_t m) {
  Perm p(m);
  std::iota(p.begin(), p.end(), Elem{0});
  std::set<Perm> out;
  do {
    bool ok = true;
    for (const auto& x : h)
      for (std::size_t i = 0; i < m && ok; ++i) ok = p[x[i]] == x[p[i]];
    if (ok) out.insert(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

AmbientAction regular(const FiniteGroup& g) {
  return AmbientAction(coset_action(Subgroup::trivial(g)));
}

}  // namespace

TEST_CASE("irreducible objects") {
  auto s3 = make_symmetric(3);
  AmbientAction nat(s3.natural);
  CHECK(irr_objects(nat, 3).size() == 1);
  CHECK(irr_objects(nat, 2).empty());
  CHECK(irr_objects(nat, 1).empty());

  auto c3 = regular(make_cyclic(3));
  CHECK(irr_objects(c3, 3).size() == 1);

  // C2 acting on 3 points fixing point 2.
  GroupAction swap(make_cyclic(2), 3, {0, 1, 2, 1, 0, 2});
  AmbientAction sw(swap);
  auto fixed = irr_objects(sw, 1);
  REQUIRE(fixed.size() == 1);
  CHECK(fixed[0].orbit == std::vector<Elem>{2});
  CHECK(invariant_morphisms(sw, fixed[0], fixed[0]) == std::vector<OrbitMap>{{2}});
  CHECK_THROWS_AS(irr_objects(sw, 0), InputError);

  CHECK_THROWS_AS(AmbientAction(GroupAction::trivial(make_cyclic(2), 2)), InputError);
  CHECK_NOTHROW(AmbientAction(GroupAction::trivial(make_cyclic(2), 2), false));
}

TEST_CASE("invariant morphisms and Galois objects") {
  auto c3 = regular(make_cyclic(3));
  auto s = irr_objects(c3, 3).at(0);
  CHECK(invariant_morphisms(c3, s, s).size() == 3);
  auto gal = gal_objects(c3, 3);
  REQUIRE(gal.size() == 1);
  CHECK(gal[0].gal.group.order() == 3);
  CHECK(gal[0].gal.group.is_abelian());

  AmbientAction nat(make_symmetric(3).natural);
  auto t = irr_objects(nat, 3).at(0);
  CHECK(invariant_morphisms(nat, t, t).size() == 1);
  auto r = regularity_test(nat, t);
  CHECK_FALSE(r.regular);
  CHECK_FALSE(r.order_matches);
  CHECK(gal_objects(nat, 3).empty());
  CHECK_THROWS_AS(make_gal_object(nat, t), InputError);

  GroupAction swap(make_cyclic(2), 3, {0, 1, 2, 1, 0, 2});
  auto g1 = gal_objects(AmbientAction(swap), 1);
  REQUIRE(g1.size() == 1);
  CHECK(g1[0].gal.group.order() == 1);
}

TEST_CASE("conjugacy power sorts") {
  auto c4 = gal_objects(regular(make_cyclic(4)), 4).at(0);
  for (std::size_t k = 0; k <= 3; ++k) {
    auto classes = conjugacy_power_sort(c4, k);
    std::size_t expect = 1;
    for (std::size_t i = 0; i < k; ++i) expect *= 4;
    CHECK(classes.size() == expect);
  }
  auto s3 = gal_objects(regular(make_dihedral(3)), 6).at(0);
  CHECK(s3.gal.group.order() == 6);
  CHECK_FALSE(s3.gal.group.is_abelian());
  CHECK(conjugacy_power_sort(s3, 1).size() == 3);
  CHECK(conjugacy_power_sort(s3, 0).size() == 1);
  // Pairs in S3 up to simultaneous conjugation: Burnside gives
  // (36 + 3·4 + 2·9) / 6 = 11.
  CHECK(conjugacy_power_sort(s3, 2).size() == 11);
  CHECK_THROWS_AS(conjugacy_power_sort(s3, 9, 1000), BudgetError);
}

TEST_CASE("Gal(s) is G/N") {
  auto c6 = make_cyclic(6);
  AmbientAction through(coset_action(Subgroup(c6, {0, 3})), false);
  auto g = gal_objects(through, 3).at(0);
  auto q = verify_gal_quotient(through, g);
  CHECK(q.kernel.members() == std::vector<Elem>{0, 3});
  CHECK(q.quotient.group.order() == 3);
  CHECK(q.iso.is_surjective());

  auto c3 = regular(make_cyclic(3));
  auto q3 = verify_gal_quotient(c3, gal_objects(c3, 3).at(0));
  CHECK(q3.kernel.order() == 1);

  GroupAction swap(make_cyclic(2), 3, {0, 1, 2, 1, 0, 2});
  AmbientAction sw(swap);
  auto qf = verify_gal_quotient(sw, gal_objects(sw, 1).at(0));
  CHECK(qf.quotient.group.order() == 1);
}

TEST_CASE("coset ambients match the oracles") {
  std::size_t galois = 0;
  std::size_t visited = for_each_coset_ambient(24, 6, [&](const AmbientInstance& inst) {
    INFO(inst.label);
    const auto& a = inst.ambient;
    auto s = irr_objects(a).at(0);
    auto mor = invariant_morphisms(a, s, s);
    CHECK(mor == oracle_invariant(a, s, s));
    auto r = regularity_test(a, s);
    CHECK(r.order_matches == r.transitive);
    CHECK(r.transitive == r.regular);
    // Invariant self-maps are bijective and closed under composition.
    for (const auto& f : mor) {
      CHECK(std::set<Elem>(f.begin(), f.end()).size() == f.size());
      for (const auto& h : mor) CHECK(std::binary_search(mor.begin(), mor.end(), compose_orbit_maps(s, h, f)));
    }
    // H_s is the centralizer of the image of G.
    std::vector<Perm> image;
    for (Elem g = 0; g < a.group().order(); ++g) {
      Perm p(s.size());
      for (std::size_t i = 0; i < s.size(); ++i) p[i] = a.action().act(g, s.orbit[i]);
      image.push_back(p);
    }
    auto cent = oracle_centralizer(image, s.size());
    CHECK(std::set<Perm>(r.h.begin(), r.h.end()) == cent);
    if (!r.regular) return;
    ++galois;
    auto g = make_gal_object(a, s);
    CHECK(std::set<Perm>(g.gal.perms.begin(), g.gal.perms.end()) ==
          oracle_centralizer(std::vector<Perm>(r.h.begin(), r.h.end()), s.size()));
    auto q = verify_gal_quotient(a, g);
    CHECK(q.quotient.group.order() == s.size());
  });
  CHECK(visited > 300);
  CHECK(galois > 100);
}

TEST_CASE("Galois exactly for normal point stabilizers") {
  for (const auto& G : small_group_catalog(12))
    for (const auto& H : all_subgroups(G)) {
      if (H.index() > 8) continue;
      AmbientAction a(coset_action(H), false);
      auto s = irr_objects(a).at(0);
      CHECK(regularity_test(a, s).regular == is_normal(H));
    }
}

TEST_CASE("multi-orbit ambient") {
  auto s3 = make_dihedral(3);
  auto u = disjoint_union(coset_action(Subgroup(s3, {0, 1, 2})), coset_action(Subgroup(s3, {0, 3})));
  AmbientAction a(u);
  CHECK(a.points() == 5);
  CHECK(irr_objects(a).size() == 2);
  auto two = irr_objects(a, 2).at(0);
  auto three = irr_objects(a, 3).at(0);
  // A point stabilizer of order 2 fixes no point of the 2-orbit.
  CHECK(invariant_morphisms(a, two, three).empty());
  CHECK(invariant_morphisms(a, two, three) == oracle_invariant(a, two, three));
  CHECK(invariant_morphisms(a, three, two) == oracle_invariant(a, three, two));
  auto g = gal_objects(a, 2);
  REQUIRE(g.size() == 1);
  auto q = verify_gal_quotient(a, g[0]);
  CHECK(q.kernel.order() == 3);
}
