#include "fimag/cohomology.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>

#include "fimag/error.hpp"

namespace fimag {

// ------------------------------------------------------------------ Cocycle

Cocycle::Cocycle(GammaGroup parent, std::vector<Elem> values, Trusted)
    : parent_(std::move(parent)), values_(std::move(values)) {}

Cocycle Cocycle::trusted(GammaGroup parent, std::vector<Elem> values) {
  return Cocycle(std::move(parent), std::move(values), Trusted{});
}

Cocycle::Cocycle(GammaGroup parent, std::vector<Elem> values)
    : parent_(std::move(parent)), values_(std::move(values)) {
  if (auto why = cocycle_violation(parent_, values_)) throw InputError(*why);
}

Cocycle Cocycle::trivial(const GammaGroup& parent) {
  return trusted(parent, std::vector<Elem>(parent.gamma().order(), parent.coeff().identity()));
}

bool Cocycle::is_trivial() const {
  const Elem e = parent_.coeff().identity();
  return std::all_of(values_.begin(), values_.end(), [e](Elem v) { return v == e; });
}

std::optional<std::string> cocycle_violation(const GammaGroup& m, const std::vector<Elem>& values) {
  const auto& G = m.gamma();
  const auto& A = m.coeff();
  if (values.size() != G.order()) return "cocycle table has wrong length";
  for (Elem v : values)
    if (v >= A.order()) return "cocycle value out of range";
  for (Elem s = 0; s < G.order(); ++s)
    for (Elem t = 0; t < G.order(); ++t)
      if (values[G.mul(s, t)] != A.mul(values[s], m.act(s, values[t])))
        return "cocycle identity fails at (s,t) = (" + std::to_string(s) + "," + std::to_string(t) + ")";
  return std::nullopt;
}

std::vector<Cocycle> enumerate_z1(const GammaGroup& m, std::uint64_t budget) {
  const auto& G = m.gamma();
  const auto& A = m.coeff();
  auto gens = generating_sequence(G);
  std::uint64_t candidates = 1;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    candidates *= A.order();
    if (candidates > budget)
      throw BudgetError("Z1 enumeration needs " + std::to_string(A.order()) + "^" + std::to_string(gens.size()) +
                        " candidates, above the budget of " + std::to_string(budget));
  }
  const Elem unset = std::numeric_limits<Elem>::max();
  std::vector<std::vector<Elem>> found;
  std::vector<Elem> images(gens.size());
  std::vector<Elem> val(G.order());
  std::deque<Elem> queue;
  for (std::uint64_t c = 0; c < candidates; ++c) {
    std::uint64_t rest = c;
    for (std::size_t i = gens.size(); i-- > 0;) {
      images[i] = static_cast<Elem>(rest % A.order());
      rest /= A.order();
    }
    std::fill(val.begin(), val.end(), unset);
    val[G.identity()] = A.identity();
    queue.assign(1, G.identity());
    bool ok = true;
    while (!queue.empty() && ok) {
      Elem x = queue.front();
      queue.pop_front();
      for (std::size_t i = 0; i < gens.size(); ++i) {
        // a(x g) = a(x) · x(a(g))
        Elem y = G.mul(x, gens[i]);
        Elem v = A.mul(val[x], m.act(x, images[i]));
        if (val[y] == unset) {
          val[y] = v;
          queue.push_back(y);
        } else if (val[y] != v) {
          ok = false;
          break;
        }
      }
    }
    if (ok) found.push_back(val);
  }
  std::sort(found.begin(), found.end());
  std::vector<Cocycle> out;
  out.reserve(found.size());
  for (auto& v : found) out.push_back(Cocycle::trusted(m, std::move(v)));
  return out;
}

Cocycle twist_by(const Cocycle& a, Elem b) {
  const auto& m = a.parent();
  const auto& A = m.coeff();
  std::vector<Elem> v(a.values().size());
  Elem bi = A.inv(b);
  for (Elem s = 0; s < v.size(); ++s) v[s] = A.mul(A.mul(bi, a(s)), m.act(s, b));
  return Cocycle::trusted(m, std::move(v));
}

std::optional<Elem> cohomologous(const Cocycle& a1, const Cocycle& a2) {
  require(a1.parent() == a2.parent(), "cohomologous: cocycles over different Γ-groups");
  const auto& m = a1.parent();
  const auto& A = m.coeff();
  for (Elem b = 0; b < A.order(); ++b) {
    Elem bi = A.inv(b);
    bool ok = true;
    for (Elem s = 0; s < m.gamma().order() && ok; ++s) ok = a2(s) == A.mul(A.mul(bi, a1(s)), m.act(s, b));
    if (ok) return b;
  }
  return std::nullopt;
}

// ------------------------------------------------------------------------ H1

std::size_t H1Classes::trivial_class() const {
  return class_of_values(std::vector<Elem>(parent.gamma().order(), parent.coeff().identity()));
}

std::size_t H1Classes::class_of_values(const std::vector<Elem>& values) const {
  auto it = index.find(values);
  if (it == index.end()) throw InputError("H1: value table is not a cocycle of this Γ-group");
  return class_of[it->second];
}

H1Classes h1(const GammaGroup& m, std::uint64_t budget) {
  H1Classes out{m, enumerate_z1(m, budget), {}, {}, {}, {}};
  const std::size_t n = out.cocycles.size();
  const std::size_t unset = std::numeric_limits<std::size_t>::max();
  for (std::size_t i = 0; i < n; ++i) out.index.emplace(out.cocycles[i].values(), i);
  out.class_of.assign(n, unset);
  out.witness.assign(n, m.coeff().identity());
  for (std::size_t i = 0; i < n; ++i) {
    if (out.class_of[i] != unset) continue;
    std::size_t cls = out.representatives.size();
    out.representatives.push_back(i);
    for (Elem b = 0; b < m.coeff().order(); ++b) {
      auto t = twist_by(out.cocycles[i], b);
      std::size_t j = out.index.at(t.values());
      if (out.class_of[j] == unset) {
        out.class_of[j] = cls;
        out.witness[j] = b;
      }
    }
  }
  return out;
}

bool is_equivariant(const GroupHom& f, const GammaGroup& source, const GammaGroup& target) {
  if (!(f.source() == source.coeff()) || !(f.target() == target.coeff())) return false;
  if (!(source.gamma() == target.gamma())) return false;
  for (Elem s = 0; s < source.gamma().order(); ++s)
    for (Elem x = 0; x < source.coeff().order(); ++x)
      if (f(source.act(s, x)) != target.act(s, f(x))) return false;
  return true;
}

InducedH1Map induced_h1_map(const GroupHom& f, const H1Classes& source, const H1Classes& target) {
  require(is_equivariant(f, source.parent, target.parent), "induced_h1_map: homomorphism is not Γ-equivariant");
  InducedH1Map out;
  std::size_t trivial = target.trivial_class();
  for (std::size_t c = 0; c < source.class_count(); ++c) {
    const auto& rep = source.cocycles[source.representatives[c]];
    std::vector<Elem> image(rep.values().size());
    for (std::size_t s = 0; s < image.size(); ++s) image[s] = f(rep(static_cast<Elem>(s)));
    std::size_t tc = target.class_of_values(image);
    out.map.push_back(tc);
    if (tc == trivial) out.kernel.push_back(c);
  }
  return out;
}

// ------------------------------------------------------------------ inflation

QuotientModule descend_module(const GammaGroup& m, const Subgroup& n) {
  require(n.parent() == m.gamma(), "descend_module: N is not a subgroup of Γ");
  auto ker = m.action_kernel();
  for (Elem s : n.members())
    if (!ker.contains(s)) throw InputError("descend_module: element " + std::to_string(s) + " of N acts nontrivially");
  Quotient q = quotient(m.gamma(), n);
  const std::size_t na = m.coeff().order();
  std::vector<Elem> t(q.group.order() * na);
  for (Elem s = 0; s < m.gamma().order(); ++s)
    for (Elem a = 0; a < na; ++a) t[q.projection(s) * na + a] = m.act(s, a);
  return {q, GammaGroup::trusted(q.group, m.coeff(), std::move(t))};
}

Cocycle inflate(const Cocycle& a, const GammaGroup& full, const GroupHom& projection) {
  const auto& small = a.parent();
  require(projection.source() == full.gamma() && projection.target() == small.gamma(),
          "inflate: projection does not connect the two acting groups");
  require(full.coeff() == small.coeff(), "inflate: coefficient groups differ");
  auto ker = projection.kernel();
  auto acting = full.action_kernel();
  for (Elem s : ker.members())
    if (!acting.contains(s)) throw InputError("inflate: N does not act trivially on A");
  for (Elem s = 0; s < full.gamma().order(); ++s)
    for (Elem x = 0; x < full.coeff().order(); ++x)
      require(full.act(s, x) == small.act(projection(s), x), "inflate: actions are not compatible");
  std::vector<Elem> v(full.gamma().order());
  for (Elem s = 0; s < v.size(); ++s) v[s] = a(projection(s));
  return Cocycle::trusted(full, std::move(v));
}

// ------------------------------------------------------------------ factoring

std::uint64_t factorial_power_bound(std::uint64_t n) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t f = 1;
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (f > kMax / i) return kMax;
    f *= i;
  }
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < f; ++i) {
    if (f > 1 && r > kMax / f) return kMax;
    r *= f;
    if (f == 1) break;
  }
  return r;
}

FactoredCocycle factor_cocycle(const Cocycle& a) {
  const auto& m = a.parent();
  const auto& G = m.gamma();
  const auto& A = m.coeff();

  Subgroup g0 = m.action_kernel();
  for (Elem s : g0.members())
    for (Elem t : g0.members())
      ensure(a(G.mul(s, t)) == A.mul(a(s), a(t)), "factor_cocycle: a restricted to G0 is not a homomorphism");

  std::vector<Elem> k1;
  for (Elem s : g0.members())
    if (a(s) == A.identity()) k1.push_back(s);
  Subgroup g1 = make_trusted_subgroup(G, std::move(k1));
  Subgroup g2 = core_of_subgroup(G, g1);

  for (Elem s = 0; s < G.order(); ++s)
    for (Elem g : g2.members())
      ensure(a(G.mul(s, g)) == a(s), "factor_cocycle: a is not constant on left G2-cosets");

  QuotientModule level = descend_module(m, g2);
  std::vector<Elem> v(level.quotient.group.order(), A.identity());
  for (Elem s = 0; s < G.order(); ++s) v[level.quotient.projection(s)] = a(s);
  auto why = cocycle_violation(level.module, v);
  ensure(!why, "factor_cocycle: factored map is not a cocycle: " + why.value_or(""));
  Cocycle factored = Cocycle::trusted(level.module, std::move(v));
  ensure(inflate(factored, m, level.quotient.projection).values() == a.values(),
         "factor_cocycle: inflation does not recover a");

  std::uint64_t index = G.order() / g2.order();
  std::uint64_t bound = factorial_power_bound(A.order());
  ensure(index <= bound, "factor_cocycle: index exceeds (n!)^(n!)");
  return {g0, g1, g2, level, factored, index, bound};
}

// ------------------------------------------------------------------ coprime

Elem coprime_splitting(const Cocycle& a) {
  const auto& m = a.parent();
  const auto& G = m.gamma();
  const auto& A = m.coeff();
  require(A.is_abelian(), "coprime_splitting: coefficient group is not abelian");
  require(std::gcd(G.order(), A.order()) == 1, "coprime_splitting: gcd(|Γ|, |A|) != 1");

  // Summing a(st) = a(s) + s·a(t) over t gives |Γ|·a(s) = S - s·S with
  // S = sum_t a(t). With c = S / |Γ| this reads a(s) = c - s·c, so b = -c.
  Elem sum = A.identity();
  for (Elem t = 0; t < G.order(); ++t) sum = A.mul(sum, a(t));
  long long e = static_cast<long long>(A.exponent());
  long long inv = 1;
  for (long long k = 1; k <= e; ++k)
    if ((static_cast<long long>(G.order()) * k) % e == 1 % e) {
      inv = k;
      break;
    }
  Elem c = A.pow(sum, inv);
  Elem b = A.inv(c);
  for (Elem s = 0; s < G.order(); ++s)
    ensure(a(s) == A.mul(A.inv(b), m.act(s, b)), "coprime_splitting: averaged element is not a splitting");
  return b;
}

}  // namespace fimag
