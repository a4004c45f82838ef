#include "fimag/report.hpp"

#include <algorithm>
#include <set>

#include "fimag/error.hpp"

namespace fimag {

namespace {

std::size_t max_order_element(const FiniteGroup& g, Elem* at = nullptr) {
  std::size_t best = 1;
  for (Elem x = 0; x < g.order(); ++x)
    if (g.element_order(x) > best) {
      best = g.element_order(x);
      if (at) *at = x;
    }
  return best;
}

std::size_t involutions(const FiniteGroup& g) {
  std::size_t n = 0;
  for (Elem x = 0; x < g.order(); ++x) n += g.element_order(x) == 2;
  return n;
}

Json certificate_json(const ReductionCertificate& c) {
  Json levels = Json::array();
  for (const auto& l : c.levels)
    levels.push_back({{"level", l.level},
                      {"source_classes", l.source_classes},
                      {"target_classes", l.target_classes},
                      {"injective", l.injective},
                      {"surjective", l.surjective},
                      {"witness", l.witness}});
  return Json{{"step", c.step},
              {"functorial", c.functorial},
              {"equivariant", c.equivariant},
              {"injective", c.all_injective()},
              {"surjective", c.all_surjective()},
              {"levels", levels}};
}

Json sets_json(const std::vector<std::vector<Elem>>& v) { return Json(v); }

}  // namespace

std::string structure_name(const FiniteGroup& g) {
  const std::size_t n = g.order();
  if (g.is_abelian()) {
    std::vector<std::size_t> factors;
    FiniteGroup cur = g;
    while (cur.order() > 1) {
      Elem x = 0;
      std::size_t o = max_order_element(cur, &x);
      factors.push_back(o);
      std::vector<Elem> gen{x};
      cur = quotient(cur, generated_subgroup(cur, gen)).group;
    }
    if (factors.empty()) return "C1";
    std::string s;
    for (std::size_t f : factors) s += (s.empty() ? "C" : "xC") + std::to_string(f);
    return s;
  }
  Elem r = 0;
  std::size_t top = max_order_element(g, &r);
  if (top * 2 == n) {
    std::vector<Elem> gen{r};
    auto c = generated_subgroup(g, gen);
    bool reflections = true;
    for (Elem x = 0; x < n; ++x)
      if (!c.contains(x) && g.element_order(x) != 2) reflections = false;
    if (reflections) return n == 6 ? "S3" : "D" + std::to_string(n / 2);
    if (involutions(g) == 1) return n == 8 ? "Q8" : "Dic" + std::to_string(n / 4);
  }
  if (n == 12 && top == 3) return "A4";
  if (n == 24 && top == 4 && involutions(g) == 9) return "S4";
  return "G" + std::to_string(n);
}

Json h1_report(const GammaGroup& m, bool factor, std::uint64_t budget) {
  auto h = h1(m, budget);
  std::vector<std::size_t> sizes(h.class_count(), 0);
  for (auto c : h.class_of) ++sizes[c];
  Json classes = Json::array();
  for (std::size_t c = 0; c < h.class_count(); ++c)
    classes.push_back({{"class", c}, {"size", sizes[c]}, {"representative", h.cocycles[h.representatives[c]].values()}});
  Json j{{"command", "h1"},
         {"gamma", structure_name(m.gamma())},
         {"coeff", structure_name(m.coeff())},
         {"gamma_order", m.gamma().order()},
         {"coeff_order", m.coeff().order()},
         {"z1", h.cocycles.size()},
         {"h1", h.class_count()},
         {"trivial_class", h.trivial_class()},
         {"classes", classes}};
  if (factor) {
    Json rows = Json::array();
    bool ok = true;
    for (std::size_t c = 0; c < h.class_count(); ++c) {
      auto f = factor_cocycle(h.cocycles[h.representatives[c]]);
      bool within = f.index <= f.bound;
      ok = ok && within;
      rows.push_back({{"class", c},
                      {"g0", f.g0.order()},
                      {"g1", f.g1.order()},
                      {"g2", f.g2.order()},
                      {"index", f.index},
                      {"bound", f.bound},
                      {"within_bound", within},
                      {"factored", f.factored.values()}});
    }
    j["factor"] = rows;
    j["passed"] = ok;
  }
  return j;
}

Json descent_json(const SpaceInstance& s, std::uint64_t budget) {
  auto pts = rational_points(s.space);
  Json j{{"command", "descent"}, {"points", s.space.points()}, {"rational_points", pts.size()}};
  if (!s.base && pts.empty()) {
    j["base"] = nullptr;
    j["message"] = "no rational base point";
    return j;
  }
  auto r = descent_report(s.space, s.base ? *s.base : pts.front(), budget);
  j["base"] = r.base;
  j["orbits"] = sets_json(r.orbits);
  j["orbit_count"] = r.orbits.size();
  j["stab_order"] = r.stab_order;
  j["stab_classes"] = r.stab_classes;
  j["group_classes"] = r.group_classes;
  j["kernel"] = r.kernel;
  j["matching"] = r.matching;
  j["passed"] = r.passed;
  if (!r.passed) j["failure"] = r.failure;
  return j;
}

Json groupoid_report(const GroupoidFile& f, bool pipeline) {
  const auto& g = f.groupoid;
  Json levels = Json::array();
  for (const auto& l : all_subgroups(g.sym()))
    levels.push_back({{"level", l.members()}, {"classes", iso_classes(g, l).size()}});
  Json j{{"command", "groupoid"},
         {"sym", structure_name(g.sym())},
         {"objects", g.objects()},
         {"morphisms", g.morphisms()},
         {"n_order", f.n.order()},
         {"n_minus_order", f.n_minus.order()},
         {"levels", levels}};
  if (pipeline) {
    auto r = reduce_pipeline(g, f.n, f.n_minus);
    Json comp = Json::array();
    for (auto [a, b] : r.composite) comp.push_back({a, b});
    j["pipeline"] = {{"base", r.base},
                     {"section", r.section},
                     {"lifts", r.lifts},
                     {"objects", {r.gamma1.objects(), r.gamma2.objects(), r.gamma3.objects()}},
                     {"steps", {certificate_json(r.step1), certificate_json(r.step2), certificate_json(r.step3)}},
                     {"composite", comp}};
    j["passed"] = r.passed();
  }
  return j;
}

Json sorts_report(const AmbientAction& a, std::size_t power, std::uint64_t budget) {
  std::set<std::size_t> sizes;
  for (const auto& o : a.action().orbits()) sizes.insert(o.size());
  Json objects = Json::array();
  for (std::size_t m : sizes)
    for (const auto& s : irr_objects(a, m)) {
      auto rt = regularity_test(a, s);
      Json e{{"orbit", s.orbit},
             {"size", m},
             {"h_order", rt.h.size()},
             {"order_matches", rt.order_matches},
             {"transitive", rt.transitive},
             {"galois", rt.regular}};
      if (rt.regular) {
        auto g = make_gal_object(a, s);
        auto q = verify_gal_quotient(a, g);
        e["gal"] = structure_name(g.gal.group);
        e["gal_order"] = g.gal.group.order();
        e["kernel_order"] = q.kernel.order();
        if (power > 0) e["conjugacy_orbits"] = conjugacy_power_sort(g, power, budget).size();
      }
      objects.push_back(std::move(e));
    }
  return Json{{"command", "sorts"},
              {"group", structure_name(a.group())},
              {"points", a.points()},
              {"power", power},
              {"objects", objects}};
}

Json kummer_report(const Tower& t, bool claim3, std::size_t pairs, std::uint64_t seed) {
  auto g = aut_group(t);
  auto r = residue_iso_check(g);
  bool ok = g.decomposition_holds() && r.bijective;
  Json j{{"command", "kummer"},
         {"tower", t.str()},
         {"N", t.base},
         {"Nprime", t.top},
         {"n", t.ram},
         {"aut_order", g.group().order()},
         {"aut", structure_name(g.group())},
         {"ramified_order", g.ramified().order()},
         {"cyclotomic_order", g.cyclotomic().order()},
         {"decomposition", g.decomposition_holds()},
         {"residue", {{"left_order", r.left_order}, {"right_order", r.right_order}, {"bijective", r.bijective}}}};
  if (claim3) {
    auto c = verify_claim3(g);
    j["claim3"] = {{"aut_order", c.aut_order},
                   {"hom_order", c.hom_order},
                   {"exponents", c.exponents},
                   {"homomorphism", c.homomorphism},
                   {"multiplicative", c.multiplicative},
                   {"factors", c.factors},
                   {"injective", c.injective},
                   {"surjective", c.surjective},
                   {"passed", c.passed()}};
    ok = ok && c.passed();
  }
  if (pairs > 0) {
    auto p = check_pairing(g, pairs, seed);
    j["pairing"] = {{"pairs", p.pairs},
                    {"seed", seed},
                    {"multiplicative_failures", p.multiplicative_failures},
                    {"trivial_failures", p.trivial_failures},
                    {"factor_failures", p.factor_failures},
                    {"passed", p.passed()}};
    ok = ok && p.passed();
  }
  j["passed"] = ok;
  return j;
}

Json fv_report(const Relation& r) {
  auto d = fv_decompose(r);
  Json parts = Json::array();
  for (const auto& p : d.parts) parts.push_back({{"left", p.left}, {"atom", p.atom}});
  return Json{{"command", "code fv"}, {"m1", r.m1}, {"m2", r.m2}, {"atoms", d.parts.size()}, {"rectangles", parts},
              {"passed", d.reconstruct(r.m1, r.m2) == r}};
}

Json stabilizer_report(std::size_t n, const std::vector<std::size_t>& h) {
  auto c = subgroup_stabilizer_code(n, h);
  return Json{{"command", "code stab"}, {"n", n}, {"y", c.y}, {"stabilizer", c.stabilizer}, {"passed", true}};
}

Json gamma_code_report(const std::vector<mpq_class>& h) {
  auto c = code_gamma_function(h);
  Json image = Json::array();
  for (const auto& q : c.image) image.push_back(q.get_str());
  return Json{{"command", "code gamma"}, {"image", image}, {"ranks", c.ranks},
              {"passed", decode_gamma_function(c) == h}};
}

Json rank_report(const std::vector<std::size_t>& ranks) {
  auto sets = rank_as_prime_field_map(ranks);
  return Json{{"command", "code rank"}, {"p", least_prime_at_least(ranks.size())}, {"sets", sets},
              {"passed", decode_rank_map(sets) == ranks}};
}

Json cover_report(std::size_t d, std::size_t k) {
  CyclicPowerCover c(make_cyclic(d), k);
  bool section = true;
  for (std::uint64_t t = 0; t < c.target_size(); ++t) {
    auto u = c.preimage(t);
    section = section && u && c.apply(*u) == t;
  }
  bool surjective = c.verify_surjective();
  return Json{{"command", "code cover"}, {"d", d}, {"k", k}, {"generator", c.generator()},
              {"domain", c.domain_size()}, {"targets", c.target_size()}, {"surjective", surjective},
              {"passed", surjective && section}};
}

}  // namespace fimag
