#include "fimag/acceptance.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <map>
#include <numeric>
#include <sstream>

#include "fimag/catalog.hpp"
#include "fimag/cohomology.hpp"
#include "fimag/error.hpp"
#include "fimag/linear.hpp"

namespace fimag {

Scale parse_scale(const std::string& s) {
  if (s == "small") return Scale::small;
  if (s == "full") return Scale::full;
  throw InputError("unknown scale '" + s + "' (expected small or full)");
}

std::string scale_name(Scale s) { return s == Scale::small ? "small" : "full"; }

namespace {

struct Outcome {
  bool passed = true;
  std::string failure;
  Json data = Json::object();

  void fail(const std::string& why) {
    if (passed) failure = why;
    passed = false;
  }
};

std::vector<FiniteGroup> sym_groups(std::size_t max_order) {
  std::vector<FiniteGroup> out;
  for (std::size_t n = 1; n <= max_order; ++n) {
    out.push_back(make_cyclic(n));
    if (n == 4) out.push_back(direct_product(make_cyclic(2), make_cyclic(2)).renamed("C2xC2"));
    if (n == 6) out.push_back(make_symmetric(3).group.renamed("S3"));
  }
  return out;
}

std::string label(const GammaGroup& m, std::size_t action) {
  return m.gamma().name() + " on " + m.coeff().name() + " #" + std::to_string(action);
}

// Every Γ-group from criterion 1, with a label.
void for_each_module(Scale scale, const std::function<void(const GammaGroup&, const std::string&)>& f) {
  const std::size_t max_gamma = scale == Scale::full ? 6 : 4;
  const std::size_t max_coeff = scale == Scale::full ? 8 : 6;
  for (const auto& g : sym_groups(max_gamma))
    for (const auto& a : small_group_catalog(max_coeff)) {
      auto actions = all_actions(g, a);
      for (std::size_t i = 0; i < actions.size(); ++i) f(actions[i], label(actions[i], i));
    }
}

Outcome criterion_h1(Scale scale) {
  Outcome o;
  std::size_t modules = 0, cocycles = 0, classes = 0, triples = 0;
  for_each_module(scale, [&](const GammaGroup& m, const std::string& where) {
    ++modules;
    auto h = h1(m);
    cocycles += h.cocycles.size();
    classes += h.class_count();
    std::vector<std::size_t> sizes(h.class_count(), 0);
    for (std::size_t i = 0; i < h.cocycles.size(); ++i) {
      ++sizes[h.class_of[i]];
      const auto& rep = h.cocycles[h.representatives[h.class_of[i]]];
      if (!(twist_by(rep, h.witness[i]) == h.cocycles[i])) o.fail(where + ": witness does not relate cocycle to its representative");
    }
    if (std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}) != h.cocycles.size() ||
        std::count(sizes.begin(), sizes.end(), std::size_t{0}) != 0)
      o.fail(where + ": classes do not partition Z1");
    // Pool: up to three members per class, representative first.
    std::vector<std::size_t> pool;
    std::vector<std::size_t> taken(h.class_count(), 0);
    for (std::size_t c = 0; c < h.class_count(); ++c) {
      pool.push_back(h.representatives[c]);
      taken[c] = 1;
    }
    for (std::size_t i = 0; i < h.cocycles.size() && pool.size() < 24; ++i)
      if (taken[h.class_of[i]] < 3 && i != h.representatives[h.class_of[i]]) {
        pool.push_back(i);
        ++taken[h.class_of[i]];
      }
    const std::size_t p = pool.size();
    std::vector<char> rel(p * p);
    for (std::size_t x = 0; x < p; ++x)
      for (std::size_t y = 0; y < p; ++y) {
        bool c = cohomologous(h.cocycles[pool[x]], h.cocycles[pool[y]]).has_value();
        rel[x * p + y] = c;
        if (c != (h.class_of[pool[x]] == h.class_of[pool[y]])) o.fail(where + ": cohomologous disagrees with the partition");
      }
    for (std::size_t x = 0; x < p; ++x) {
      if (!rel[x * p + x]) o.fail(where + ": cohomologous is not reflexive");
      for (std::size_t y = 0; y < p; ++y) {
        if (rel[x * p + y] != rel[y * p + x]) o.fail(where + ": cohomologous is not symmetric");
        for (std::size_t z = 0; z < p; ++z) {
          ++triples;
          if (rel[x * p + y] && rel[y * p + z] && !rel[x * p + z]) o.fail(where + ": cohomologous is not transitive");
        }
      }
    }
  });
  o.data = {{"modules", modules}, {"cocycles", cocycles}, {"classes", classes}, {"triples", triples}};
  return o;
}

Outcome criterion_hilbert90(Scale scale) {
  Outcome o;
  std::vector<std::array<std::size_t, 3>> cases = {{1, 2, 2}, {1, 2, 3}, {1, 3, 2}, {2, 2, 2}};
  if (scale == Scale::full) {
    cases.push_back({2, 2, 3});
    cases.push_back({2, 3, 2});
  }
  Json rows = Json::array();
  for (auto [n, q, m] : cases) {
    auto mod = make_gl(n, q, m);
    auto h = h1(mod);
    rows.push_back({{"n", n}, {"q", q}, {"m", m}, {"order", mod.coeff().order()}, {"z1", h.cocycles.size()},
                    {"h1", h.class_count()}});
    if (h.class_count() != 1)
      o.fail("GL" + std::to_string(n) + "(F" + std::to_string(q) + "^" + std::to_string(m) + ") has " +
             std::to_string(h.class_count()) + " classes");
  }
  o.data = {{"cases", rows}};
  return o;
}

Outcome criterion_coprime(Scale scale) {
  Outcome o;
  std::size_t modules = 0, cocycles = 0;
  const std::size_t max_gamma = scale == Scale::full ? 6 : 4;
  for (const auto& g : sym_groups(max_gamma))
    for (const auto& a : small_abelian_catalog(9)) {
      if (std::gcd(g.order(), a.order()) != 1) continue;
      auto actions = all_actions(g, a);
      for (std::size_t i = 0; i < actions.size(); ++i) {
        const auto& m = actions[i];
        ++modules;
        auto h = h1(m);
        if (h.class_count() != 1) o.fail(label(m, i) + ": " + std::to_string(h.class_count()) + " classes");
        for (const auto& c : h.cocycles) {
          ++cocycles;
          Elem b = coprime_splitting(c);
          const auto& A = m.coeff();
          for (Elem s = 0; s < m.gamma().order(); ++s)
            if (c(s) != A.mul(A.inv(b), m.act(s, b))) o.fail(label(m, i) + ": splitting witness fails");
        }
      }
    }
  o.data = {{"modules", modules}, {"cocycles", cocycles}};
  return o;
}

std::uint64_t factorial(std::uint64_t n) {
  std::uint64_t f = 1;
  for (std::uint64_t i = 2; i <= n; ++i) f *= i;
  return f;
}

Outcome criterion_factoring(Scale scale) {
  Outcome o;
  std::size_t cocycles = 0, over_observed = 0;
  std::uint64_t max_index = 0;
  for_each_module(scale, [&](const GammaGroup& m, const std::string& where) {
    for (const auto& a : enumerate_z1(m)) {
      ++cocycles;
      auto f = factor_cocycle(a);
      for (Elem s = 0; s < m.gamma().order(); ++s)
        if (a(s) != f.factored(f.level.quotient.projection(s))) o.fail(where + ": a differs from a' o projection");
      if (f.index > f.bound) o.fail(where + ": index exceeds (n!)^(n!)");
      std::uint64_t n = m.coeff().order();
      // n! (n-1)! is only recorded.
      if (f.index > factorial(n) * factorial(n - 1)) ++over_observed;
      max_index = std::max(max_index, f.index);
    }
  });
  o.data = {{"cocycles", cocycles}, {"max_index", max_index}, {"above_n!(n-1)!", over_observed}};
  return o;
}

Outcome criterion_descent(Scale scale) {
  Outcome o;
  DescentFamilyOptions opts;
  if (scale == Scale::small) opts = {8, 4, 8};
  std::size_t with_base = 0, without = 0, orbits = 0;
  std::size_t visited = for_each_descent_instance(opts, [&](const DescentInstance& inst) {
    auto pts = rational_points(inst.space);
    if (pts.empty()) {
      ++without;
      return;
    }
    ++with_base;
    auto r = descent_report(inst.space, pts.front());
    orbits += r.orbits.size();
    if (!r.passed) o.fail(inst.label + ": " + r.failure);
    else if (r.orbits.size() != r.kernel.size() || r.matching.size() != r.orbits.size())
      o.fail(inst.label + ": orbit count differs from kernel size");
  });
  o.data = {{"instances", visited}, {"with_base", with_base}, {"without_base", without}, {"orbits", orbits}};
  return o;
}

Outcome criterion_groupoid(Scale scale) {
  Outcome o;
  const std::size_t count = scale == Scale::full ? 200 : 40;
  std::size_t levels = 0, lifts = 0;
  for (const auto& inst : random_groupoid_instances(count, 20240601)) {
    auto r = reduce_pipeline(inst.groupoid, inst.n, inst.n_minus);
    lifts += r.lifts;
    levels += r.step1.levels.size();
    if (!r.step1.all_surjective()) o.fail(inst.label + ": step 1 not surjective");
    if (!r.step2.all_injective()) o.fail(inst.label + ": step 2 not injective");
    if (!r.step3.all_injective() || !r.step3.all_surjective()) o.fail(inst.label + ": step 3 not bijective");
    for (auto [a, b] : r.composite)
      if (a != b) o.fail(inst.label + ": composite class counts differ");
    if (!r.passed()) o.fail(inst.label + ": certificate chain rejected");
  }
  o.data = {{"instances", count}, {"levels", levels}, {"lifts", lifts}};
  return o;
}

// Calls f on every partial function from `domain` points to `values` values.
void for_each_partial(std::size_t domain, std::size_t values, const std::function<void(const TwistCode&)>& f) {
  std::vector<std::size_t> v(domain, 0);  // 0 = undefined, else value + 1
  while (true) {
    std::vector<std::pair<Elem, Elem>> g;
    for (std::size_t i = 0; i < domain; ++i)
      if (v[i]) g.emplace_back(static_cast<Elem>(i), static_cast<Elem>(v[i] - 1));
    f(TwistCode(std::move(g)));
    std::size_t i = domain;
    while (i > 0 && v[i - 1] == values) v[--i] = 0;
    if (i == 0) return;
    ++v[i - 1];
  }
}

Outcome criterion_codings(Scale) {
  Outcome o;
  std::size_t pair = 0, power = 0, gamma = 0, rank = 0, grids = 0;
  for (std::size_t f = 0; f <= 3; ++f)
    for (std::size_t s1 = 1; s1 <= 3; ++s1)
      for (std::size_t s2 = 1; s2 <= 3; ++s2)
        for_each_partial(f, s1 * s2, [&](const TwistCode& h) {
          ++pair;
          auto [a, b] = embed_pair_twist(h, s2);
          if (!(decode_pair_twist(a, b, s2) == h)) o.fail("embed_pair_twist round trip");
        });
  for (std::size_t d = 1; d <= 4; ++d)
    for (std::size_t k = 1; k <= 2; ++k) {
      CyclicPowerCover cover(make_cyclic(d), k);
      if (!cover.verify_surjective()) o.fail("power cover not surjective");
      std::size_t values = cover.target_size() <= 9 ? 2 : 1;
      for_each_partial(cover.target_size(), values, [&](const TwistCode& x) {
        ++power;
        if (!(decode_twist_by_power(embed_twist_by_power(x, cover), cover) == x))
          o.fail("embed_twist_by_power round trip, d=" + std::to_string(d));
      });
    }
  const std::vector<mpq_class> pool = {mpq_class(-1), mpq_class(0), mpq_class(1, 2), mpq_class(3)};
  for (std::size_t n = 0; n <= 4; ++n) {
    std::vector<std::size_t> idx(n, 0);
    while (true) {
      std::vector<mpq_class> h;
      for (auto i : idx) h.push_back(pool[i]);
      ++gamma;
      auto c = code_gamma_function(h);
      if (decode_gamma_function(c) != h) o.fail("code_gamma_function round trip");
      std::size_t i = n;
      while (i > 0 && idx[i - 1] + 1 == pool.size()) idx[--i] = 0;
      if (i == 0) break;
      ++idx[i - 1];
    }
  }
  for (std::size_t n = 1; n <= 5; ++n) {
    std::vector<std::size_t> r(n, 0);
    while (true) {
      ++rank;
      if (decode_rank_map(rank_as_prime_field_map(r)) != r) o.fail("rank_as_prime_field_map round trip");
      std::size_t i = n;
      while (i > 0 && r[i - 1] + 1 == n) r[--i] = 0;
      if (i == 0) break;
      ++r[i - 1];
    }
  }
  for (std::size_t m1 = 0; m1 <= 3; ++m1)
    for (std::size_t m2 = 0; m2 <= 3; ++m2)
      for (std::uint32_t bits = 0; bits < (1u << (m1 * m2)); ++bits) {
        ++grids;
        Relation r{m1, m2, std::vector<bool>(m1 * m2)};
        for (std::size_t i = 0; i < m1 * m2; ++i) r.cells[i] = (bits >> i) & 1;
        auto d = fv_decompose(r);
        if (!(d.reconstruct(m1, m2) == r)) o.fail("fv_decompose reconstruction");
        std::vector<int> owner(m2, -1);
        std::size_t last_min = 0;
        for (std::size_t p = 0; p < d.parts.size(); ++p) {
          const auto& part = d.parts[p];
          if (part.left.empty() || part.atom.empty()) o.fail("fv_decompose: empty rectangle");
          if (p > 0 && part.atom.front() <= last_min) o.fail("fv_decompose: atoms not ordered by minimum");
          if (!part.atom.empty()) last_min = part.atom.front();
          for (auto b : part.atom) {
            if (owner[b] != -1) o.fail("fv_decompose: atoms overlap");
            owner[b] = static_cast<int>(p);
          }
          for (std::size_t q = 0; q < p; ++q)
            if (d.parts[q].left == part.left) o.fail("fv_decompose: two atoms share a section pattern");
        }
      }
  o.data = {{"pair_twist", pair}, {"twist_by_power", power}, {"gamma", gamma}, {"rank", rank}, {"grids", grids}};
  return o;
}

Outcome criterion_galois(Scale scale) {
  Outcome o;
  const std::size_t max_order = scale == Scale::full ? 24 : 12;
  std::size_t galois = 0, other = 0;
  std::size_t visited = for_each_coset_ambient(max_order, 8, [&](const AmbientInstance& inst) {
    const auto& a = inst.ambient;
    auto objs = irr_objects(a);
    if (objs.size() != 1) {
      o.fail(inst.label + ": coset action is not transitive");
      return;
    }
    const auto& s = objs.front();
    auto rt = regularity_test(a, s);
    bool normal = is_normal(a.action().stabilizer(s.orbit.front()));
    auto gal = gal_objects(a, s.size());
    if (rt.regular != normal) o.fail(inst.label + ": regularity differs from normality of the stabilizer");
    if (!gal.empty() != rt.regular) o.fail(inst.label + ": gal-object detection differs from regularity");
    if (gal.empty()) {
      ++other;
      return;
    }
    ++galois;
    auto q = verify_gal_quotient(a, gal.front());
    if (!q.iso.is_injective() || !q.iso.is_surjective() || q.quotient.group.order() != gal.front().gal.group.order())
      o.fail(inst.label + ": G/N -> Gal(s) is not an isomorphism");
    if (q.kernel.members() != a.action().kernel().members()) o.fail(inst.label + ": N is not the pointwise stabilizer");
  });
  o.data = {{"ambients", visited}, {"galois", galois}, {"not_galois", other}};
  return o;
}

Outcome criterion_kummer(Scale scale) {
  Outcome o;
  const std::size_t pairs = scale == Scale::full ? 100 : 25;
  Json rows = Json::array();
  for (auto [base, top, ram] : std::vector<std::array<std::size_t, 3>>{
           {1, 2, 2}, {1, 4, 2}, {1, 4, 4}, {1, 3, 3}, {1, 6, 6}, {4, 4, 2}}) {
    Tower t = make_tower(base, top, ram);
    auto g = aut_group(t);
    auto c = verify_claim3(g);
    auto r = residue_iso_check(g);
    auto p = check_pairing(g, pairs, 7 + top * 100 + ram);
    std::size_t expected = euler_phi(top) / euler_phi(base) * ram;
    if (g.group().order() != expected) o.fail(t.str() + ": automorphism group has the wrong order");
    if (!g.decomposition_holds()) o.fail(t.str() + ": no decomposition");
    if (!c.passed() || c.aut_order != ram || c.hom_order != ram) o.fail(t.str() + ": verify_claim3 rejected the tower");
    if (!r.bijective) o.fail(t.str() + ": residue map not bijective");
    if (!p.passed() || p.pairs != pairs) o.fail(t.str() + ": pairing check failed");
    rows.push_back({{"tower", t.str()}, {"order", g.group().order()}, {"ramified", c.aut_order}, {"pairs", p.pairs}});
  }
  o.data = {{"towers", rows}};
  return o;
}

const std::vector<std::pair<std::string, std::function<Outcome(Scale)>>>& criteria() {
  static const std::vector<std::pair<std::string, std::function<Outcome(Scale)>>> list = {
      {"cocycle and H1 correctness", criterion_h1},
      {"finite Hilbert 90", criterion_hilbert90},
      {"coprime vanishing", criterion_coprime},
      {"factoring bound", criterion_factoring},
      {"descent correspondence", criterion_descent},
      {"groupoid pipeline", criterion_groupoid},
      {"codings round trips", criterion_codings},
      {"galois sorts", criterion_galois},
      {"kummer towers", criterion_kummer},
      {"determinism", nullptr},
  };
  return list;
}

std::string summarize(const Json& data) {
  std::ostringstream out;
  bool first = true;
  for (auto it = data.begin(); it != data.end(); ++it) {
    if (!it->is_number() && !it->is_array()) continue;
    out << (first ? "" : " ") << it.key() << "=" << (it->is_array() ? std::to_string(it->size()) : it->dump());
    first = false;
  }
  return out.str();
}

CriterionResult run_one(int id, Scale scale) {
  const auto& [name, fn] = criteria()[static_cast<std::size_t>(id - 1)];
  CriterionResult r{id, name, false, {}, 0, Json::object()};
  auto t0 = std::chrono::steady_clock::now();
  try {
    Outcome o = fn(scale);
    r.passed = o.passed;
    r.data = o.data;
    r.detail = o.passed ? summarize(o.data) : o.failure;
  } catch (const Error& e) {
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace

Json acceptance_to_json(Scale scale, const std::vector<CriterionResult>& results) {
  Json list = Json::array();
  bool all = true;
  for (const auto& r : results) {
    list.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}, {"data", r.data}});
    all = all && r.passed;
  }
  return Json{{"scale", scale_name(scale)}, {"passed", all}, {"criteria", list}};
}

std::vector<CriterionResult> run_acceptance(Scale scale, const std::vector<int>& only,
                                            const std::function<void(const CriterionResult&)>& progress) {
  auto wanted = [&](int id) { return only.empty() || std::find(only.begin(), only.end(), id) != only.end(); };
  std::vector<CriterionResult> out;
  for (int id = 1; id <= 9; ++id) {
    if (!wanted(id)) continue;
    out.push_back(run_one(id, scale));
    if (progress) progress(out.back());
  }
  if (wanted(10)) {
    CriterionResult r{10, "determinism", false, {}, 0, Json::object()};
    auto t0 = std::chrono::steady_clock::now();
    auto small_run = [] {
      std::vector<CriterionResult> v;
      for (int id = 1; id <= 9; ++id) v.push_back(run_one(id, Scale::small));
      return acceptance_to_json(Scale::small, v).dump();
    };
    std::string first = small_run(), second = small_run();
    r.passed = first == second;
    r.data = {{"bytes", first.size()}};
    r.detail = r.passed ? "small report identical across two runs, bytes=" + std::to_string(first.size())
                        : "small reports differ between runs";
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(r);
    if (progress) progress(out.back());
  }
  return out;
}

}  // namespace fimag
