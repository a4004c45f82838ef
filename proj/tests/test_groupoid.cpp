#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "fimag/catalog.hpp"
#include "fimag/error.hpp"
#include "fimag/groupoid.hpp"

using namespace fimag;

namespace {

GammaGroup power_action(std::size_t m, std::size_t n, long long u) {
  FiniteGroup G = make_cyclic(m), A = make_cyclic(n);
  std::vector<Elem> t(m * n);
  for (Elem s = 0; s < m; ++s)
    for (Elem a = 0; a < n; ++a) {
      long long e = 1;
      for (Elem k = 0; k < s; ++k) e = e * u % static_cast<long long>(n);
      t[s * n + a] = A.pow(a, e);
    }
  return GammaGroup(G, A, std::move(t));
}

// Rebuild through the validating constructor.
SymGroupoid validated(const SymGroupoid& g) {
  return SymGroupoid(g.sym(), g.objects(), g.src_table(), g.dst_table(), g.comp_table(), g.obj_action(),
                     g.mor_action());
}

SymGroupoid single_object(const GammaGroup& m) { return action_groupoid(coset_space(m, Subgroup::whole(m.coeff()))); }

// |Iso(Γ(G,X), Σ')| as the number of G^Σ'-orbits on X^Σ', computed directly.
std::size_t oracle_iso(const HomogeneousSpace& h, const Subgroup& level) {
  std::vector<Elem> pts, grp;
  for (Elem x = 0; x < h.points(); ++x)
    if (std::all_of(level.members().begin(), level.members().end(), [&](Elem s) { return h.sigma(s, x) == x; }))
      pts.push_back(x);
  for (Elem g = 0; g < h.grp().coeff().order(); ++g)
    if (std::all_of(level.members().begin(), level.members().end(), [&](Elem s) { return h.grp().act(s, g) == g; }))
      grp.push_back(g);
  std::vector<Elem> label(h.points());
  std::iota(label.begin(), label.end(), Elem{0});
  bool changed = true;
  while (changed) {
    changed = false;
    for (Elem x : pts)
      for (Elem g : grp) {
        Elem y = h.act(g, x);
        Elem lo = std::min(label[x], label[y]);
        if (label[x] != lo || label[y] != lo) {
          label[x] = label[y] = lo;
          changed = true;
        }
      }
  }
  std::vector<Elem> roots;
  for (Elem x : pts) roots.push_back(label[x]);
  std::sort(roots.begin(), roots.end());
  return std::unique(roots.begin(), roots.end()) - roots.begin();
}

}  // namespace

TEST_CASE("action groupoids satisfy the groupoid laws") {
  auto s3 = make_dihedral(3);
  for (const auto& m : all_actions(make_cyclic(2), s3))
    for (const auto& H : all_subgroups(s3)) {
      bool stable = true;
      for (Elem x : H.members()) stable = stable && H.contains(m.act(1, x));
      if (!stable) continue;
      auto g = action_groupoid(coset_space(m, H));
      CHECK_NOTHROW(validated(g));
      CHECK(g.morphisms() == 6 * H.index());
    }
}

TEST_CASE("groupoid validation") {
  auto g = single_object(GammaGroup::trivial_action(make_cyclic(1), make_cyclic(3)));
  auto comp = g.comp_table();
  std::swap(comp[1 * 3 + 1], comp[1 * 3 + 2]);
  CHECK_THROWS_AS(SymGroupoid(g.sym(), 1, g.src_table(), g.dst_table(), comp, g.obj_action(), g.mor_action()),
                  InputError);
  // Two objects with only identities: not connected.
  CHECK_THROWS_AS(SymGroupoid(make_cyclic(1), 2, {0, 1}, {0, 1}, {0, kNoMor, kNoMor, 1}, {0, 1}, {0, 1}),
                  InputError);
  // Σ moving a morphism off its endpoints.
  auto two = action_groupoid(coset_space(GammaGroup::trivial_action(make_cyclic(2), make_cyclic(2)),
                                         Subgroup::trivial(make_cyclic(2))));
  auto oa = two.obj_action();
  oa[2] = 1;
  oa[3] = 0;
  CHECK_THROWS_AS(SymGroupoid(two.sym(), 2, two.src_table(), two.dst_table(), two.comp_table(), oa, two.mor_action()),
                  InputError);
}

TEST_CASE("iso classes examples") {
  auto c2 = make_cyclic(2);
  auto one = single_object(GammaGroup::trivial_action(c2, c2));
  for (const auto& level : all_subgroups(c2)) CHECK(iso_classes(one, level).size() == 1);

  auto triv = GammaGroup::trivial_action(c2, c2);
  auto torsor = coset_space(triv, Subgroup::trivial(c2));
  auto g = action_groupoid(torsor);
  CHECK(iso_classes(g, Subgroup::trivial(c2)).size() == 1);
  auto swapped = action_groupoid(twist(torsor, Cocycle(triv, {0, 1})));
  CHECK(iso_classes(swapped, Subgroup::whole(c2)).empty());
  CHECK(iso_classes(swapped, Subgroup::trivial(c2)).size() == 1);
}

TEST_CASE("iso classes agree with orbit counts and are monotone") {
  for (const auto& G : small_group_catalog(8))
    for (const auto& m : all_actions(make_cyclic(2), G))
      for (const auto& H : all_subgroups(G)) {
        bool stable = true;
        for (Elem x : H.members()) stable = stable && H.contains(m.act(1, x));
        if (!stable) continue;
        auto space = coset_space(m, H);
        auto g = action_groupoid(space);
        auto whole = Subgroup::whole(m.gamma());
        auto big = iso_classes(g, whole);
        CHECK(big.size() == oracle_iso(space, whole));
        // Σ-equivalence implies equivalence at the trivial level.
        auto small = iso_classes(g, Subgroup::trivial(m.gamma()));
        CHECK(small.size() == 1);
      }
}

TEST_CASE("quotient groupoid examples") {
  auto c4 = single_object(GammaGroup::trivial_action(make_cyclic(1), make_cyclic(4)));
  auto same = quotient_groupoid(c4, NormalFamily::trivial(c4));
  CHECK(same.groupoid.morphisms() == 4);
  auto collapsed = quotient_groupoid(c4, NormalFamily::full(c4));
  CHECK(collapsed.groupoid.morphisms() == 1);
  auto half = quotient_groupoid(c4, NormalFamily(c4, {{0, 2}}));
  REQUIRE(half.groupoid.morphisms() == 2);
  CHECK(validated(half.groupoid).aut(0).size() == 2);
  CHECK(half.projection == std::vector<Mor>{0, 1, 0, 1});

  // Quotients of larger groupoids pass full validation.
  auto s3 = make_dihedral(3);
  auto m = GammaGroup::trivial_action(make_cyclic(2), s3);
  auto g = action_groupoid(coset_space(m, Subgroup(s3, {0, 1, 2})));
  for (const auto& fam : {NormalFamily::trivial(g), NormalFamily::full(g)}) {
    auto q = quotient_groupoid(g, fam);
    CHECK_NOTHROW(validated(q.groupoid));
    // Identity on objects, hence surjective on iso classes at every level.
    for (const auto& level : all_subgroups(m.gamma()))
      CHECK(iso_classes(q.groupoid, level).size() <= iso_classes(g, level).size());
  }
}

TEST_CASE("normal family coherence") {
  auto s3 = make_dihedral(3);
  auto m = GammaGroup::trivial_action(make_cyclic(1), s3);
  auto g = action_groupoid(coset_space(m, Subgroup(s3, {0, 3})));
  REQUIRE(g.objects() == 3);
  std::vector<std::vector<Mor>> members;
  for (Elem a = 0; a < 3; ++a) members.push_back(a == 0 ? g.aut(a) : std::vector<Mor>{g.id(a)});
  CHECK_THROWS_AS(NormalFamily(g, members), InputError);
  CHECK_NOTHROW(NormalFamily::transported(g, 0, g.aut(0)));
}

TEST_CASE("canonical transport") {
  auto s3 = make_dihedral(3);
  auto m = GammaGroup::trivial_action(make_cyclic(1), s3);
  auto g = action_groupoid(coset_space(m, Subgroup(s3, {0, 1, 2})));  // Aut = C3
  auto t = canonical_transport(g);
  for (Elem a = 0; a < g.objects(); ++a) CHECK(t[a * g.objects() + a] == g.aut(a));
  CHECK_THROWS_AS(canonical_transport(single_object(m)), InputError);
}

TEST_CASE("torsor average") {
  auto c3 = make_cyclic(3);
  Torsor y{c3, 3, c3.table()};
  validate_torsor(y);
  CHECK(torsor_average(y, {2}) == 2);
  CHECK(torsor_average(y, {0, 2}, 0) == 1);
  // All of C3: the sum of differences is 0 from every base point, so the
  // "average" would be the base point itself; rejected by the gcd guard.
  CHECK_THROWS_AS(torsor_average(y, {0, 1, 2}), InputError);
  auto c2 = make_cyclic(2);
  Torsor z{c2, 2, c2.table()};
  CHECK_THROWS_AS(torsor_average(z, {0, 1}), InputError);

  // Base point independence and equivariance under translations.
  auto c5 = make_cyclic(5);
  Torsor w{c5, 5, c5.table()};
  for (unsigned mask = 1; mask < 32; ++mask) {
    std::vector<Elem> s;
    for (Elem p = 0; p < 5; ++p)
      if (mask >> p & 1) s.push_back(p);
    if (s.size() == 5) continue;
    Elem first = torsor_average(w, s, 0);
    for (Elem b = 1; b < 5; ++b) CHECK(torsor_average(w, s, b) == first);
    for (Elem t = 0; t < 5; ++t) {
      std::vector<Elem> moved;
      for (Elem p : s) moved.push_back(w.act(t, p));
      CHECK(torsor_average(w, moved) == w.act(t, first));
    }
  }
}

TEST_CASE("lift_fixed_point") {
  auto c3 = make_cyclic(3);
  auto inv = power_action(2, 3, -1);
  for (Elem c = 0; c < 3; ++c) {
    // σ(y) = c - y is compatible with σ(a) = -a.
    std::vector<Elem> pa{0, 1, 2, c, c3.mul(c, c3.inv(1)), c3.mul(c, c3.inv(2))};
    SymTorsor y{Torsor{c3, 3, c3.table()}, inv, GroupAction(make_cyclic(2), 3, pa)};
    validate_sym_torsor(y);
    for (Elem q = 0; q < 3; ++q) {
      Elem p = lift_fixed_point(y, Subgroup::whole(c3), q);
      CHECK(y.points.act(1, p) == p);
    }
    // Exhaustive: exactly one fixed point.
    std::size_t fixed = 0;
    for (Elem p = 0; p < 3; ++p) fixed += y.points.act(1, p) == p;
    CHECK(fixed == 1);
    // Trivial N^-: the orbit of a non-fixed point is not stable.
    for (Elem q = 0; q < 3; ++q)
      if (y.points.act(1, q) != q) CHECK_THROWS_AS(lift_fixed_point(y, Subgroup::trivial(c3), q), InputError);
  }
  auto c2 = make_cyclic(2);
  SymTorsor bad{Torsor{c2, 2, c2.table()}, GammaGroup::trivial_action(c2, c2), GroupAction::trivial(c2, 2)};
  CHECK_THROWS_AS(lift_fixed_point(bad, Subgroup::whole(c2), 0), InputError);
}

TEST_CASE("pipeline with trivial families is an isomorphism at every step") {
  auto m = power_action(2, 5, -1);
  auto g = single_object(m);
  auto r = reduce_pipeline(g, NormalFamily::trivial(g), NormalFamily::trivial(g));
  CHECK(r.passed());
  for (const auto* c : {&r.step1, &r.step2, &r.step3}) {
    CHECK(c->all_injective());
    CHECK(c->all_surjective());
  }
  // With N trivial, Γ1 keeps only the chosen section.
  CHECK(r.gamma1.morphisms() == 1);
}

TEST_CASE("pipeline on C15 with N = C15 and N^- = C5") {
  auto m = power_action(2, 15, -1);
  auto g = single_object(m);
  NormalFamily n = NormalFamily::full(g);
  std::vector<Mor> five;
  for (Mor f : g.aut(0))
    if (m.coeff().pow(f, 5) == 0) five.push_back(f);
  REQUIRE(five.size() == 5);
  auto r = reduce_pipeline(g, n, NormalFamily(g, {five}));
  CHECK(r.passed());
  CHECK(r.gamma2.aut(0).size() == 3);
  CHECK(r.lifts > 0);
}

TEST_CASE("pipeline guards") {
  // C2 inverting C4, T = {0,2}: Mor(0,1) = {1,3} is swapped by Σ, so the
  // average over the orbit of size 2 in a torsor of order 2 is undefined.
  auto m = power_action(2, 4, -1);
  auto g = action_groupoid(coset_space(m, Subgroup(make_cyclic(4), {0, 2})));
  REQUIRE(g.objects() == 2);
  CHECK_THROWS_WITH_AS(reduce_pipeline(g, NormalFamily::trivial(g), NormalFamily::trivial(g)),
                       doctest::Contains("averaging guard"), InputError);
  CHECK_THROWS_WITH_AS(reduce_pipeline(g, NormalFamily::full(g), NormalFamily::full(g)),
                       doctest::Contains("gcd"), InputError);
  // No Σ-fixed object.
  auto c2 = make_cyclic(2);
  auto triv = GammaGroup::trivial_action(c2, c2);
  auto swapped = action_groupoid(twist(coset_space(triv, Subgroup::trivial(c2)), Cocycle(triv, {0, 1})));
  CHECK_THROWS_WITH_AS(reduce_pipeline(swapped, NormalFamily::trivial(swapped), NormalFamily::trivial(swapped)),
                       doctest::Contains("base object"), InputError);
}

TEST_CASE("random instances pass the pipeline and match orbit oracles") {
  auto instances = random_groupoid_instances(40, 7);
  REQUIRE(instances.size() == 40);
  std::size_t nontrivial_sym = 0;
  for (const auto& inst : instances) {
    INFO(inst.label);
    auto r = reduce_pipeline(inst.groupoid, inst.n, inst.n_minus);
    CHECK(r.passed());
    CHECK(r.step1.levels.size() == all_subgroups(inst.groupoid.sym()).size());
    if (inst.groupoid.sym().order() > 1) ++nontrivial_sym;
  }
  CHECK(nontrivial_sym > 20);
  auto again = random_groupoid_instances(40, 7);
  for (std::size_t i = 0; i < 40; ++i) CHECK(again[i].label == instances[i].label);
}
