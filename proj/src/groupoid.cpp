#include "fimag/groupoid.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "fimag/catalog.hpp"
#include "fimag/error.hpp"

namespace fimag {

namespace {

std::string str(std::size_t v) { return std::to_string(v); }

long long inverse_mod(long long a, long long m) {
  if (m == 1) return 0;
  for (long long k = 1; k < m; ++k)
    if (a % m * k % m == 1) return k;
  throw InputError("no inverse of " + str(a) + " modulo " + str(m));
}

}  // namespace

// ---------------------------------------------------------------- SymGroupoid

std::shared_ptr<SymGroupoid::Data> SymGroupoid::build(FiniteGroup sym, std::size_t objects, std::vector<Elem> src,
                                                      std::vector<Elem> dst, std::vector<Mor> comp,
                                                      std::vector<Elem> obj_action, std::vector<Mor> mor_action) {
  const std::size_t m = src.size();
  require(objects >= 1, "groupoid: no objects");
  if (m > kMaxMorphisms)
    throw BudgetError("groupoid: " + str(m) + " morphisms exceed the guard of " + str(kMaxMorphisms));
  require(dst.size() == m, "groupoid: src and dst tables differ in length");
  require(comp.size() == m * m, "groupoid: composition table has wrong size");
  require(obj_action.size() == sym.order() * objects, "groupoid: object action table has wrong size");
  require(mor_action.size() == sym.order() * m, "groupoid: morphism action table has wrong size");
  for (std::size_t f = 0; f < m; ++f)
    if (src[f] >= objects || dst[f] >= objects) throw InputError("groupoid: morphism " + str(f) + " has a bad endpoint");
  for (Elem v : obj_action) require(v < objects, "groupoid: object action entry out of range");
  for (Mor v : mor_action) require(v < m, "groupoid: morphism action entry out of range");

  auto d = std::make_shared<Data>();
  d->sym = std::move(sym);
  d->n = objects;
  d->hom.assign(objects * objects, {});
  for (Mor f = 0; f < m; ++f) d->hom[src[f] * objects + dst[f]].push_back(f);
  for (std::size_t a = 0; a < objects; ++a)
    for (std::size_t b = 0; b < objects; ++b)
      if (d->hom[a * objects + b].empty())
        throw InputError("groupoid: not connected, Mor(" + str(a) + "," + str(b) + ") is empty");
  d->src = std::move(src);
  d->dst = std::move(dst);
  d->comp = std::move(comp);
  d->obj_action = std::move(obj_action);
  d->mor_action = std::move(mor_action);

  d->ids.assign(objects, kNoMor);
  for (std::size_t a = 0; a < objects; ++a)
    for (Mor e : d->hom[a * objects + a])
      if (d->comp[static_cast<std::size_t>(e) * m + e] == e) {
        d->ids[a] = e;
        break;
      }
  for (std::size_t a = 0; a < objects; ++a)
    if (d->ids[a] == kNoMor) throw InputError("groupoid: object " + str(a) + " has no identity");
  d->inv.assign(m, kNoMor);
  for (Mor f = 0; f < m; ++f)
    for (Mor g : d->hom[d->dst[f] * objects + d->src[f]])
      if (d->comp[static_cast<std::size_t>(g) * m + f] == d->ids[d->src[f]]) {
        d->inv[f] = g;
        break;
      }
  for (Mor f = 0; f < m; ++f)
    if (d->inv[f] == kNoMor) throw InputError("groupoid: morphism " + str(f) + " is not invertible");
  return d;
}

SymGroupoid SymGroupoid::trusted(FiniteGroup sym, std::size_t objects, std::vector<Elem> src, std::vector<Elem> dst,
                                 std::vector<Mor> comp, std::vector<Elem> obj_action, std::vector<Mor> mor_action) {
  return SymGroupoid(build(std::move(sym), objects, std::move(src), std::move(dst), std::move(comp),
                           std::move(obj_action), std::move(mor_action)));
}

SymGroupoid::SymGroupoid(FiniteGroup sym_in, std::size_t n, std::vector<Elem> src_in, std::vector<Elem> dst_in,
                         std::vector<Mor> comp_in, std::vector<Elem> oa_in, std::vector<Mor> ma_in)
    : d_(build(std::move(sym_in), n, std::move(src_in), std::move(dst_in), std::move(comp_in), std::move(oa_in),
               std::move(ma_in))) {
  const std::size_t m = morphisms();
  for (Mor g = 0; g < m; ++g)
    for (Mor f = 0; f < m; ++f) {
      Mor h = compose(g, f);
      if ((dst(f) == src(g)) != (h != kNoMor))
        throw InputError("groupoid: composability of (" + str(g) + "," + str(f) + ") disagrees with endpoints");
      if (h != kNoMor && (src(h) != src(f) || dst(h) != dst(g)))
        throw InputError("groupoid: composite of (" + str(g) + "," + str(f) + ") has wrong endpoints");
    }
  for (Mor f = 0; f < m; ++f) {
    if (compose(id(dst(f)), f) != f || compose(f, id(src(f))) != f)
      throw InputError("groupoid: identity law fails at morphism " + str(f));
    if (compose(f, inverse(f)) != id(dst(f))) throw InputError("groupoid: morphism " + str(f) + " has no two-sided inverse");
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (Mor f : hom(a, b))
          for (Mor g : hom(b, c)) {
            Mor gf = compose(g, f);
            for (std::size_t e = 0; e < n; ++e)
              for (Mor h : hom(c, e))
                if (compose(h, gf) != compose(compose(h, g), f))
                  throw InputError("groupoid: associativity fails at (" + str(h) + "," + str(g) + "," + str(f) + ")");
          }

  const auto& S = sym();
  GroupAction on_objects(S, n, obj_action());
  GroupAction on_morphisms(S, m, mor_action());
  for (Elem s = 0; s < S.order(); ++s)
    for (Mor f = 0; f < m; ++f) {
      Mor sf = act_mor(s, f);
      if (src(sf) != act_obj(s, src(f)) || dst(sf) != act_obj(s, dst(f)))
        throw InputError("groupoid: Σ element " + str(s) + " does not respect endpoints of morphism " + str(f));
      for (Mor g : hom(dst(f), dst(f)))
        if (act_mor(s, compose(g, f)) != compose(act_mor(s, g), sf))
          throw InputError("groupoid: Σ element " + str(s) + " is not functorial at (" + str(g) + "," + str(f) + ")");
    }
  // Functoriality on composable pairs with arbitrary targets.
  for (Elem s = 0; s < S.order(); ++s)
    for (Mor f = 0; f < m; ++f)
      for (std::size_t c = 0; c < n; ++c)
        for (Mor g : hom(dst(f), c))
          if (act_mor(s, compose(g, f)) != compose(act_mor(s, g), act_mor(s, f)))
            throw InputError("groupoid: Σ element " + str(s) + " is not functorial at (" + str(g) + "," + str(f) + ")");
}

SymGroupoid action_groupoid(const HomogeneousSpace& h) {
  const auto& G = h.grp().coeff();
  const std::size_t x = h.points(), ng = G.order(), m = ng * x, ns = h.sym().order();
  if (m > kMaxMorphisms) throw BudgetError("action_groupoid: " + str(m) + " morphisms exceed the guard");
  std::vector<Elem> src(m), dst(m);
  std::vector<Mor> comp(m * m, kNoMor);
  for (Elem g = 0; g < ng; ++g)
    for (Elem p = 0; p < x; ++p) {
      Mor f = g * x + p;
      src[f] = p;
      dst[f] = h.act(g, p);
      for (Elem k = 0; k < ng; ++k) comp[static_cast<std::size_t>(k * x + dst[f]) * m + f] = G.mul(k, g) * x + p;
    }
  std::vector<Elem> oa(ns * x);
  std::vector<Mor> ma(ns * m);
  for (Elem s = 0; s < ns; ++s) {
    for (Elem p = 0; p < x; ++p) oa[s * x + p] = h.sigma(s, p);
    for (Elem g = 0; g < ng; ++g)
      for (Elem p = 0; p < x; ++p) ma[s * m + g * x + p] = h.grp().act(s, g) * x + h.sigma(s, p);
  }
  return SymGroupoid::trusted(h.sym(), x, std::move(src), std::move(dst), std::move(comp), std::move(oa),
                              std::move(ma));
}

// ---------------------------------------------------------------- iso classes

std::vector<Elem> fixed_objects(const SymGroupoid& g, const Subgroup& level) {
  std::vector<Elem> out;
  for (Elem a = 0; a < g.objects(); ++a) {
    bool fixed = true;
    for (Elem s : level.members()) fixed = fixed && g.act_obj(s, a) == a;
    if (fixed) out.push_back(a);
  }
  return out;
}

bool is_fixed(const SymGroupoid& g, const Subgroup& level, Mor f) {
  for (Elem s : level.members())
    if (g.act_mor(s, f) != f) return false;
  return true;
}

std::vector<std::vector<Elem>> iso_classes(const SymGroupoid& g, const Subgroup& level) {
  require(level.parent() == g.sym(), "iso_classes: subgroup of a different symmetry group");
  auto fixed = fixed_objects(g, level);
  std::vector<Elem> parent(g.objects());
  std::iota(parent.begin(), parent.end(), Elem{0});
  auto find = [&](Elem a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (std::size_t i = 0; i < fixed.size(); ++i)
    for (std::size_t j = i + 1; j < fixed.size(); ++j) {
      Elem a = find(fixed[i]), b = find(fixed[j]);
      if (a == b) continue;
      for (Mor f : g.hom(fixed[i], fixed[j]))
        if (is_fixed(g, level, f)) {
          parent[std::max(a, b)] = std::min(a, b);
          break;
        }
    }
  std::map<Elem, std::vector<Elem>> groups;
  for (Elem a : fixed) groups[find(a)].push_back(a);
  std::vector<std::vector<Elem>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

// ---------------------------------------------------------------- NormalFamily

NormalFamily::NormalFamily(const SymGroupoid& g, std::vector<std::vector<Mor>> members) : members_(std::move(members)) {
  const std::size_t n = g.objects();
  require(members_.size() == n, "normal family: one subgroup per object required");
  for (auto& v : members_) std::sort(v.begin(), v.end());
  for (Elem a = 0; a < n; ++a) {
    const auto& aut = g.aut(a);
    const auto& na = members_[a];
    for (Mor f : na)
      if (!std::binary_search(aut.begin(), aut.end(), f))
        throw InputError("normal family: morphism " + str(f) + " is not an automorphism of object " + str(a));
    require(std::binary_search(na.begin(), na.end(), g.id(a)), "normal family: N_a must contain the identity");
    for (Mor f : na)
      for (Mor h : na)
        if (!std::binary_search(na.begin(), na.end(), g.compose(f, h)))
          throw InputError("normal family: N_" + str(a) + " is not closed under composition");
  }
  // Coherence f N_a f^-1 = N_b covers normality (take b = a).
  for (Mor f = 0; f < g.morphisms(); ++f) {
    Elem a = g.src(f), b = g.dst(f);
    std::vector<Mor> image;
    for (Mor x : members_[a]) image.push_back(g.compose(g.compose(f, x), g.inverse(f)));
    std::sort(image.begin(), image.end());
    if (image != members_[b])
      throw InputError("normal family: transport along morphism " + str(f) + " does not carry N_" + str(a) +
                       " onto N_" + str(b));
  }
  for (Elem s = 0; s < g.sym().order(); ++s)
    for (Elem a = 0; a < n; ++a) {
      std::vector<Mor> image;
      for (Mor x : members_[a]) image.push_back(g.act_mor(s, x));
      std::sort(image.begin(), image.end());
      if (image != members_[g.act_obj(s, a)])
        throw InputError("normal family: not stable under Σ element " + str(s) + " at object " + str(a));
    }
}

NormalFamily NormalFamily::trivial(const SymGroupoid& g) {
  std::vector<std::vector<Mor>> m;
  for (Elem a = 0; a < g.objects(); ++a) m.push_back({g.id(a)});
  return NormalFamily(g, std::move(m));
}

NormalFamily NormalFamily::full(const SymGroupoid& g) {
  std::vector<std::vector<Mor>> m;
  for (Elem a = 0; a < g.objects(); ++a) m.push_back(g.aut(a));
  return NormalFamily(g, std::move(m));
}

NormalFamily NormalFamily::transported(const SymGroupoid& g, Elem a, const std::vector<Mor>& n) {
  require(a < g.objects(), "normal family: object out of range");
  std::vector<std::vector<Mor>> m(g.objects());
  for (Elem b = 0; b < g.objects(); ++b) {
    Mor f = g.hom(a, b).front();
    for (Mor x : n) {
      require(x < g.morphisms() && g.src(x) == a && g.dst(x) == a, "normal family: generator is not in Aut(a)");
      m[b].push_back(g.compose(g.compose(f, x), g.inverse(f)));
    }
  }
  return NormalFamily(g, std::move(m));
}

bool NormalFamily::contains(Elem a, Mor f) const {
  return std::binary_search(members_[a].begin(), members_[a].end(), f);
}

QuotientGroupoid quotient_groupoid(const SymGroupoid& g, const NormalFamily& n) {
  require(n.members().size() == g.objects(), "quotient_groupoid: family has the wrong number of objects");
  const std::size_t m = g.morphisms();
  std::vector<Mor> cls(m, kNoMor);
  std::vector<Mor> rep;
  for (Mor f = 0; f < m; ++f) {
    if (cls[f] != kNoMor) continue;
    Mor id = static_cast<Mor>(rep.size());
    rep.push_back(f);
    for (Mor x : n.at(g.dst(f))) cls[g.compose(x, f)] = id;
  }
  const std::size_t q = rep.size(), ns = g.sym().order();
  std::vector<Elem> src(q), dst(q);
  std::vector<Mor> comp(q * q, kNoMor), ma(ns * q);
  for (Mor i = 0; i < q; ++i) {
    src[i] = g.src(rep[i]);
    dst[i] = g.dst(rep[i]);
  }
  for (Mor i = 0; i < q; ++i)
    for (Mor j = 0; j < q; ++j)
      if (dst[j] == src[i]) comp[static_cast<std::size_t>(i) * q + j] = cls[g.compose(rep[i], rep[j])];
  for (Elem s = 0; s < ns; ++s)
    for (Mor i = 0; i < q; ++i) ma[s * q + i] = cls[g.act_mor(s, rep[i])];
  return {SymGroupoid::trusted(g.sym(), g.objects(), std::move(src), std::move(dst), std::move(comp),
                               g.obj_action(), std::move(ma)),
          std::move(cls)};
}

std::vector<std::vector<Mor>> canonical_transport(const SymGroupoid& g) {
  const std::size_t n = g.objects();
  for (Elem a = 0; a < n; ++a)
    for (Mor x : g.aut(a))
      for (Mor y : g.aut(a))
        if (g.compose(x, y) != g.compose(y, x))
          throw InputError("canonical_transport: Aut(" + str(a) + ") is not abelian");
  std::vector<std::vector<Mor>> out(n * n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      auto& t = out[a * n + b];
      for (Mor f : g.hom(a, b)) {
        std::vector<Mor> image;
        for (Mor x : g.aut(a)) image.push_back(g.compose(g.compose(f, x), g.inverse(f)));
        if (t.empty()) t = image;
        else ensure(t == image, "canonical_transport: transport depends on the connecting morphism");
      }
    }
  return out;
}

// -------------------------------------------------------------------- torsors

Elem Torsor::difference(Elem x, Elem y) const {
  for (Elem a = 0; a < group.order(); ++a)
    if (act(a, y) == x) return a;
  throw InputError("torsor: points " + str(x) + " and " + str(y) + " are not related");
}

void validate_torsor(const Torsor& y) {
  require(y.group.is_abelian(), "torsor: group is not abelian");
  require(y.points == y.group.order(), "torsor: point count differs from the group order");
  GroupAction act(y.group, y.points, y.action);
  require(act.is_transitive() && act.stabilizer(0).order() == 1, "torsor: action is not simply transitive");
}

Elem torsor_average(const Torsor& y, const std::vector<Elem>& s, std::optional<Elem> base) {
  require(!s.empty(), "torsor_average: empty set");
  const auto& A = y.group;
  if (std::gcd(s.size(), A.order()) != 1)
    throw InputError("torsor_average: gcd(|S|, |A|) = " + str(std::gcd(s.size(), A.order())) +
                     ", the average is not unique");
  Elem y0 = base.value_or(0);
  require(y0 < y.points, "torsor_average: base point out of range");
  Elem sum = A.identity();
  for (Elem p : s) {
    require(p < y.points, "torsor_average: point out of range");
    sum = A.mul(sum, y.difference(p, y0));
  }
  long long k = inverse_mod(static_cast<long long>(s.size()), static_cast<long long>(A.exponent()));
  return y.act(A.pow(sum, k), y0);
}

void validate_sym_torsor(const SymTorsor& y) {
  validate_torsor(y.torsor);
  require(y.module.coeff() == y.torsor.group, "sym torsor: module acts on a different group");
  require(y.points.group() == y.module.gamma(), "sym torsor: point action is by a different group");
  require(y.points.points() == y.torsor.points, "sym torsor: point counts differ");
  for (Elem s = 0; s < y.module.gamma().order(); ++s)
    for (Elem a = 0; a < y.torsor.group.order(); ++a)
      for (Elem p = 0; p < y.torsor.points; ++p)
        if (y.points.act(s, y.torsor.act(a, p)) != y.torsor.act(y.module.act(s, a), y.points.act(s, p)))
          throw InputError("sym torsor: actions are not compatible at (" + str(s) + "," + str(a) + "," + str(p) + ")");
}

Elem lift_fixed_point(const SymTorsor& y, const Subgroup& b, Elem q) {
  const auto& A = y.torsor.group;
  const auto& S = y.module.gamma();
  require(b.parent() == A, "lift_fixed_point: subgroup of a different group");
  require(q < y.torsor.points, "lift_fixed_point: point out of range");
  require(std::gcd(S.order(), b.order()) == 1, "lift_fixed_point: gcd(|Σ|, |N^-|) != 1");
  std::vector<Elem> vals(S.order());
  for (Elem s = 0; s < S.order(); ++s) {
    Elem d = y.torsor.difference(y.points.act(s, q), q);
    if (!b.contains(d)) throw InputError("lift_fixed_point: the N^- orbit of q is not Σ-stable");
    vals[s] = static_cast<Elem>(std::lower_bound(b.members().begin(), b.members().end(), d) - b.members().begin());
  }
  GammaGroup module = y.module.restrict_to(b);
  Cocycle a(module, std::move(vals));
  Elem local = coprime_splitting(a);
  // σ(q) = a(σ) + q and a(σ) = σ(b) - b, so -b + q is fixed.
  Elem p = y.torsor.act(A.inv(b.members()[local]), q);
  for (Elem s = 0; s < S.order(); ++s) ensure(y.points.act(s, p) == p, "lift_fixed_point: lifted point is not fixed");
  return p;
}

// ---------------------------------------------------------------- certificates

bool ReductionCertificate::all_injective() const {
  return std::all_of(levels.begin(), levels.end(), [](const LevelVerdict& v) { return v.injective; });
}

bool ReductionCertificate::all_surjective() const {
  return std::all_of(levels.begin(), levels.end(), [](const LevelVerdict& v) { return v.surjective; });
}

ReductionCertificate certify_functor(const std::string& step, const SymGroupoid& source, const SymGroupoid& target,
                                     const Functor& f) {
  ReductionCertificate cert;
  cert.step = step;
  require(f.objects.size() == source.objects() && f.morphisms.size() == source.morphisms(),
          "certify_functor: functor tables have the wrong size");
  require(source.sym() == target.sym(), "certify_functor: groupoids carry different symmetry groups");
  for (Elem a : f.objects) require(a < target.objects(), "certify_functor: object image out of range");
  for (Mor x : f.morphisms) require(x < target.morphisms(), "certify_functor: morphism image out of range");

  bool ok = true;
  for (Mor x = 0; x < source.morphisms() && ok; ++x)
    ok = target.src(f.morphisms[x]) == f.objects[source.src(x)] && target.dst(f.morphisms[x]) == f.objects[source.dst(x)];
  for (Elem a = 0; a < source.objects() && ok; ++a) ok = f.morphisms[source.id(a)] == target.id(f.objects[a]);
  for (Mor x = 0; x < source.morphisms() && ok; ++x)
    for (Elem c = 0; c < source.objects() && ok; ++c)
      for (Mor y : source.hom(source.dst(x), c))
        if (f.morphisms[source.compose(y, x)] != target.compose(f.morphisms[y], f.morphisms[x])) {
          ok = false;
          break;
        }
  cert.functorial = ok;

  ok = true;
  for (Elem s = 0; s < source.sym().order() && ok; ++s) {
    for (Elem a = 0; a < source.objects() && ok; ++a)
      ok = f.objects[source.act_obj(s, a)] == target.act_obj(s, f.objects[a]);
    for (Mor x = 0; x < source.morphisms() && ok; ++x)
      ok = f.morphisms[source.act_mor(s, x)] == target.act_mor(s, f.morphisms[x]);
  }
  cert.equivariant = ok;

  for (const auto& level : all_subgroups(source.sym())) {
    LevelVerdict v;
    v.level = level.members();
    auto sc = iso_classes(source, level);
    auto tc = iso_classes(target, level);
    v.source_classes = sc.size();
    v.target_classes = tc.size();
    std::vector<std::size_t> class_of(target.objects(), static_cast<std::size_t>(-1));
    for (std::size_t k = 0; k < tc.size(); ++k)
      for (Elem a : tc[k]) class_of[a] = k;
    bool well_defined = true;
    for (std::size_t k = 0; k < sc.size(); ++k) {
      std::size_t image = class_of[f.objects[sc[k].front()]];
      for (Elem a : sc[k])
        if (class_of[f.objects[a]] != image) well_defined = false;
      v.class_map.push_back(image);
    }
    std::vector<std::size_t> hits(tc.size(), 0);
    for (std::size_t c : v.class_map)
      if (c < tc.size()) ++hits[c];
    v.injective = well_defined;
    v.surjective = well_defined;
    for (std::size_t k = 0; k < tc.size(); ++k) {
      if (hits[k] > 1 && v.injective) {
        v.injective = false;
        std::vector<std::size_t> pre;
        for (std::size_t i = 0; i < sc.size(); ++i)
          if (v.class_map[i] == k) pre.push_back(sc[i].front());
        v.witness = "objects " + str(pre[0]) + " and " + str(pre[1]) + " become isomorphic";
      }
      if (hits[k] == 0 && v.surjective) {
        v.surjective = false;
        if (v.witness.empty()) v.witness = "target class of object " + str(tc[k].front()) + " is not hit";
      }
    }
    if (!well_defined) v.witness = "a fixed object leaves its iso class under the functor";
    cert.levels.push_back(std::move(v));
  }
  return cert;
}

// ------------------------------------------------------------------- pipeline

bool PipelineResult::passed() const {
  auto sound = [](const ReductionCertificate& c) { return c.functorial && c.equivariant; };
  if (!sound(step1) || !sound(step2) || !sound(step3)) return false;
  if (!step1.all_surjective() || !step2.all_injective() || !step3.all_injective() || !step3.all_surjective())
    return false;
  return std::all_of(composite.begin(), composite.end(), [](const auto& p) { return p.first == p.second; });
}

namespace {

// Subgroupoid on the morphisms with keep[f]; ids are renumbered in order.
std::pair<SymGroupoid, std::vector<Mor>> restrict_morphisms(const SymGroupoid& g, const std::vector<bool>& keep) {
  const std::size_t m = g.morphisms(), ns = g.sym().order();
  std::vector<Mor> old_of, new_of(m, kNoMor);
  for (Mor f = 0; f < m; ++f)
    if (keep[f]) {
      new_of[f] = static_cast<Mor>(old_of.size());
      old_of.push_back(f);
    }
  const std::size_t k = old_of.size();
  std::vector<Elem> src(k), dst(k);
  std::vector<Mor> comp(k * k, kNoMor), ma(ns * k);
  for (Mor i = 0; i < k; ++i) {
    src[i] = g.src(old_of[i]);
    dst[i] = g.dst(old_of[i]);
  }
  for (Mor i = 0; i < k; ++i)
    for (Mor j = 0; j < k; ++j) {
      Mor c = g.compose(old_of[i], old_of[j]);
      if (c == kNoMor) continue;
      ensure(new_of[c] != kNoMor, "pipeline: subgroupoid is not closed under composition");
      comp[static_cast<std::size_t>(i) * k + j] = new_of[c];
    }
  for (Elem s = 0; s < ns; ++s)
    for (Mor i = 0; i < k; ++i) {
      Mor c = g.act_mor(s, old_of[i]);
      ensure(new_of[c] != kNoMor, "pipeline: subgroupoid is not Σ-stable");
      ma[s * k + i] = new_of[c];
    }
  SymGroupoid sub(g.sym(), g.objects(), std::move(src), std::move(dst), std::move(comp), g.obj_action(),
                  std::move(ma));
  return {sub, old_of};
}

// Aut(a) as a FiniteGroup, element i being aut[i].
FiniteGroup aut_group(const SymGroupoid& g, Elem a) {
  const auto& aut = g.aut(a);
  const std::size_t k = aut.size();
  std::vector<Elem> t(k * k);
  auto local = [&](Mor f) { return static_cast<Elem>(std::lower_bound(aut.begin(), aut.end(), f) - aut.begin()); };
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) t[i * k + j] = local(g.compose(aut[i], aut[j]));
  return FiniteGroup::from_trusted_table(std::move(t));
}

}  // namespace

PipelineResult reduce_pipeline(const SymGroupoid& g, const NormalFamily& n, const NormalFamily& n_minus) {
  const std::size_t objs = g.objects();
  const auto& S = g.sym();
  require(n.members().size() == objs && n_minus.members().size() == objs,
          "reduce_pipeline: families have the wrong number of objects");
  for (Elem a = 0; a < objs; ++a) {
    for (Mor x : g.aut(a))
      for (Mor y : g.aut(a))
        if (g.compose(x, y) != g.compose(y, x))
          throw InputError("reduce_pipeline: Aut(" + str(a) + ") is not abelian");
    for (Mor x : n_minus.at(a))
      if (!n.contains(a, x)) throw InputError("reduce_pipeline: N^- is not contained in N at object " + str(a));
  }
  if (std::gcd(S.order(), n_minus.order()) != 1)
    throw InputError("reduce_pipeline: gcd(|Σ|, |N^-|) = " + str(std::gcd(S.order(), n_minus.order())) + " != 1");

  PipelineResult r{0, {}, g, g, g, {}, {}, {}, 0, {}};
  auto fixed = fixed_objects(g, Subgroup::whole(S));
  if (fixed.empty()) throw InputError("reduce_pipeline: no Σ-fixed base object");
  const Elem base = fixed.front();
  r.base = base;

  // c(a) in Γ/N: averages over Stab_Σ(a)-orbits, transported along Σ-orbits.
  QuotientGroupoid q = quotient_groupoid(g, n);
  const auto& Q = q.groupoid;
  std::vector<Mor> c(objs, kNoMor);
  for (Elem a = 0; a < objs; ++a) {
    if (c[a] != kNoMor) continue;
    std::vector<Elem> stab;
    for (Elem s = 0; s < S.order(); ++s)
      if (g.act_obj(s, a) == a) stab.push_back(s);
    const auto& hom = Q.hom(base, a);
    const auto& aut = Q.aut(a);
    std::vector<Elem> orbit;
    auto local_point = [&](Mor f) {
      return static_cast<Elem>(std::lower_bound(hom.begin(), hom.end(), f) - hom.begin());
    };
    for (Elem s : stab) orbit.push_back(local_point(Q.act_mor(s, hom.front())));
    std::sort(orbit.begin(), orbit.end());
    orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
    if (std::gcd(orbit.size(), aut.size()) != 1)
      throw InputError("reduce_pipeline: averaging guard fails for objects (" + str(base) + "," + str(a) +
                       "): orbit of size " + str(orbit.size()) + " in a torsor of order " + str(aut.size()));
    Torsor y{aut_group(Q, a), hom.size(), std::vector<Elem>(aut.size() * hom.size())};
    for (std::size_t u = 0; u < aut.size(); ++u)
      for (std::size_t p = 0; p < hom.size(); ++p) y.action[u * hom.size() + p] = local_point(Q.compose(aut[u], hom[p]));
    Mor avg = hom[torsor_average(y, orbit)];
    for (Elem s : stab) ensure(Q.act_mor(s, avg) == avg, "reduce_pipeline: average is not fixed by Stab(a)");
    for (Elem s = 0; s < S.order(); ++s) {
      Elem b = g.act_obj(s, a);
      Mor image = Q.act_mor(s, avg);
      if (c[b] == kNoMor) c[b] = image;
      else ensure(c[b] == image, "reduce_pipeline: section is not Σ-equivariant");
    }
  }
  r.section = c;

  // Γ1: morphisms f with fN = c(b) c(a)^-1.
  std::vector<bool> keep(g.morphisms());
  for (Mor f = 0; f < g.morphisms(); ++f) {
    Elem a = g.src(f), b = g.dst(f);
    keep[f] = q.projection[f] == Q.compose(c[b], Q.inverse(c[a]));
  }
  auto [gamma1, old_of] = restrict_morphisms(g, keep);
  r.gamma1 = gamma1;
  r.step1 = certify_functor("inclusion", gamma1, g, Functor{[&] {
                              std::vector<Elem> o(objs);
                              std::iota(o.begin(), o.end(), Elem{0});
                              return o;
                            }(),
                                                             old_of});

  // Γ2 = Γ1 / N^-.
  std::vector<Mor> new_of(g.morphisms(), kNoMor);
  for (Mor i = 0; i < old_of.size(); ++i) new_of[old_of[i]] = i;
  std::vector<std::vector<Mor>> nm(objs);
  for (Elem a = 0; a < objs; ++a)
    for (Mor x : n_minus.at(a)) {
      ensure(new_of[x] != kNoMor, "reduce_pipeline: N^- is not inside Γ1");
      nm[a].push_back(new_of[x]);
    }
  NormalFamily n_minus1(gamma1, std::move(nm));
  QuotientGroupoid q2 = quotient_groupoid(gamma1, n_minus1);
  r.gamma2 = SymGroupoid(q2.groupoid.sym(), objs, q2.groupoid.src_table(), q2.groupoid.dst_table(),
                         q2.groupoid.comp_table(), q2.groupoid.obj_action(), q2.groupoid.mor_action());
  std::vector<Elem> ident(objs);
  std::iota(ident.begin(), ident.end(), Elem{0});
  r.step2 = certify_functor("quotient by N^-", gamma1, r.gamma2, Functor{ident, q2.projection});

  // Constructive lifts: for each level and each fixed Γ2-morphism out of a
  // class representative, a fixed Γ1-morphism over it.
  for (const auto& level : all_subgroups(S)) {
    Embedded sub = as_group(level);
    for (const auto& cls : iso_classes(r.gamma2, level)) {
      Elem a = cls.front();
      for (Elem b : cls) {
        Mor phi = kNoMor;
        for (Mor f : r.gamma2.hom(a, b))
          if (is_fixed(r.gamma2, level, f)) {
            phi = f;
            break;
          }
        ensure(phi != kNoMor, "reduce_pipeline: iso class without a fixed morphism");
        const auto& y = gamma1.hom(a, b);
        const auto& nb = gamma1.aut(b);
        auto py = [&](Mor f) { return static_cast<Elem>(std::lower_bound(y.begin(), y.end(), f) - y.begin()); };
        auto pn = [&](Mor f) { return static_cast<Elem>(std::lower_bound(nb.begin(), nb.end(), f) - nb.begin()); };
        FiniteGroup A = aut_group(gamma1, b);
        Torsor t{A, y.size(), std::vector<Elem>(nb.size() * y.size())};
        for (std::size_t u = 0; u < nb.size(); ++u)
          for (std::size_t p = 0; p < y.size(); ++p) t.action[u * y.size() + p] = py(gamma1.compose(nb[u], y[p]));
        const std::size_t ls = level.order();
        std::vector<Elem> ma(ls * nb.size()), pa(ls * y.size());
        for (std::size_t s = 0; s < ls; ++s) {
          Elem sg = level.members()[s];
          for (std::size_t u = 0; u < nb.size(); ++u) ma[s * nb.size() + u] = pn(gamma1.act_mor(sg, nb[u]));
          for (std::size_t p = 0; p < y.size(); ++p) pa[s * y.size() + p] = py(gamma1.act_mor(sg, y[p]));
        }
        SymTorsor st{t, GammaGroup(sub.group, A, std::move(ma)), GroupAction(sub.group, y.size(), std::move(pa))};
        validate_sym_torsor(st);
        std::vector<Elem> bm;
        for (Mor x : n_minus1.at(b)) bm.push_back(pn(x));
        std::sort(bm.begin(), bm.end());
        Subgroup B = make_trusted_subgroup(A, bm);
        Elem q0 = 0;
        while (q2.projection[y[q0]] != phi) ++q0;
        Mor lifted = y[lift_fixed_point(st, B, q0)];
        ensure(q2.projection[lifted] == phi && is_fixed(gamma1, level, lifted),
               "reduce_pipeline: lift does not lie over the fixed morphism");
        ++r.lifts;
      }
    }
  }

  // Γ3: objects relabeled by the code of Mor_Γ2(base, a).
  std::vector<std::pair<std::vector<Mor>, Elem>> codes;
  for (Elem a = 0; a < objs; ++a) codes.push_back({r.gamma2.hom(base, a), a});
  std::sort(codes.begin(), codes.end());
  std::vector<Elem> j(objs);
  for (Elem i = 0; i < objs; ++i) j[codes[i].second] = i;
  const auto& g2 = r.gamma2;
  std::vector<Elem> src3(g2.morphisms()), dst3(g2.morphisms()), oa3(S.order() * objs);
  for (Mor f = 0; f < g2.morphisms(); ++f) {
    src3[f] = j[g2.src(f)];
    dst3[f] = j[g2.dst(f)];
  }
  for (Elem s = 0; s < S.order(); ++s)
    for (Elem a = 0; a < objs; ++a) oa3[s * objs + j[a]] = j[g2.act_obj(s, a)];
  r.gamma3 = SymGroupoid(S, objs, std::move(src3), std::move(dst3), g2.comp_table(), std::move(oa3), g2.mor_action());
  std::vector<Mor> same(g2.morphisms());
  std::iota(same.begin(), same.end(), Mor{0});
  r.step3 = certify_functor("relabel objects", g2, r.gamma3, Functor{j, same});

  for (const auto& level : all_subgroups(S))
    r.composite.push_back({iso_classes(g, level).size(), iso_classes(r.gamma3, level).size()});
  return r;
}

// ------------------------------------------------------------------ instances

std::vector<GroupoidInstance> random_groupoid_instances(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };

  std::vector<FiniteGroup> syms{make_cyclic(1), make_cyclic(2), make_cyclic(3),
                                direct_product(make_cyclic(2), make_cyclic(2)), make_cyclic(4), make_dihedral(3)};
  std::vector<FiniteGroup> groups;
  for (auto& G : small_group_catalog(24))
    if (G.order() >= 2) groups.push_back(G);

  std::map<std::pair<std::size_t, std::size_t>, std::vector<GammaGroup>> action_cache;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<H1Classes>> h1_cache;
  std::map<std::size_t, std::vector<Subgroup>> subgroup_cache;

  std::vector<GroupoidInstance> out;
  std::size_t attempts = 0;
  while (out.size() < count) {
    if (++attempts > count * 500) throw BudgetError("random_groupoid_instances: too many rejected attempts");
    std::size_t si = pick(syms.size()), gi = pick(groups.size());
    const auto& S = syms[si];
    const auto& G = groups[gi];
    auto key = std::make_pair(si, gi);
    if (!action_cache.count(key)) {
      try {
        action_cache[key] = all_actions(S, G);
      } catch (const BudgetError&) {
        action_cache[key] = {};
      }
    }
    const auto& actions = action_cache[key];
    if (actions.empty()) continue;
    std::size_t ai = pick(actions.size());
    const auto& m = actions[ai];
    if (!subgroup_cache.count(gi)) subgroup_cache[gi] = all_subgroups(G);
    const auto& subs = subgroup_cache[gi];

    auto stable = [&](const Subgroup& h) {
      for (Elem s = 0; s < S.order(); ++s)
        for (Elem x : h.members())
          if (!h.contains(m.act(s, x))) return false;
      return true;
    };
    auto inside = [](const Subgroup& a, const Subgroup& b) {
      return std::all_of(a.members().begin(), a.members().end(), [&](Elem x) { return b.contains(x); });
    };
    std::vector<std::size_t> tori;
    for (std::size_t i = 0; i < subs.size(); ++i) {
      const auto& T = subs[i];
      if (G.order() * T.index() > kMaxMorphisms || !stable(T)) continue;
      bool abelian = true;
      for (Elem x : T.members())
        for (Elem y : T.members()) abelian = abelian && G.mul(x, y) == G.mul(y, x);
      if (abelian) tori.push_back(i);
    }
    if (tori.empty()) continue;
    const auto& T = subs[tori[pick(tori.size())]];
    std::vector<std::size_t> ns;
    for (std::size_t i = 0; i < subs.size(); ++i)
      if (inside(subs[i], T) && stable(subs[i]) && std::gcd(S.order(), T.order() / subs[i].order()) == 1)
        ns.push_back(i);
    if (ns.empty()) continue;
    const auto& N = subs[ns[pick(ns.size())]];
    std::vector<std::size_t> nms;
    for (std::size_t i = 0; i < subs.size(); ++i)
      if (inside(subs[i], N) && stable(subs[i]) && std::gcd(S.order(), subs[i].order()) == 1) nms.push_back(i);
    const auto& NM = subs[nms[pick(nms.size())]];  // the trivial subgroup always qualifies

    auto hkey = std::make_pair(key.first * 1000 + key.second, ai);
    if (!h1_cache.count(hkey)) h1_cache[hkey] = {h1(m)};
    const auto& classes = h1_cache[hkey].front();
    std::size_t ci = pick(classes.class_count());
    HomogeneousSpace space = coset_space(m, T);
    const auto& a = classes.cocycles[classes.representatives[ci]];
    if (!a.is_trivial()) space = twist(space, a);
    if (rational_points(space).empty()) continue;

    SymGroupoid gpd = action_groupoid(space);
    const std::size_t x = space.points();
    auto family = [&](const Subgroup& h) {
      std::vector<Mor> at0;
      for (Elem t : h.members()) at0.push_back(t * x + 0);
      return NormalFamily::transported(gpd, 0, at0);
    };
    std::string label = "seed " + std::to_string(seed) + " #" + std::to_string(out.size()) + ": " + S.name() +
                        " on " + G.name() + " action " + std::to_string(ai) + " |T|=" + std::to_string(T.order()) +
                        " |N|=" + std::to_string(N.order()) + " |N-|=" + std::to_string(NM.order()) + " twist " +
                        std::to_string(ci);
    out.push_back(GroupoidInstance{label, gpd, family(N), family(NM)});
  }
  return out;
}

}  // namespace fimag
