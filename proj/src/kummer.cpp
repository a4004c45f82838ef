#include "fimag/kummer.hpp"

#include <map>
#include <numeric>
#include <random>

#include "fimag/error.hpp"

namespace fimag {

std::string Tower::str() const {
  return "tower " + std::to_string(base) + " " + std::to_string(top) + " " + std::to_string(ram);
}

Tower make_tower(std::size_t base, std::size_t top, std::size_t ram) {
  require(base >= 1 && top >= 1 && ram >= 1, "tower: N, N' and n must be positive");
  require(top <= kMaxTowerConductor && ram <= kMaxTowerConductor, "tower: N' and n must be at most 60");
  require(top % base == 0, "tower: N = " + std::to_string(base) + " does not divide N' = " + std::to_string(top));
  require(contains_roots_of_unity(top, ram),
          "tower: μ_" + std::to_string(ram) + " is not contained in ℚ(ζ_" + std::to_string(top) + ")");
  return Tower{base, top, ram};
}

namespace {

std::string key(const CycNumber& c) {
  std::string k;
  for (const auto& x : c.coeffs()) k += x.get_str() + ",";
  return k;
}

long long mod(long long a, long long m) { return ((a % m) + m) % m; }

CycNumber base_zeta(const Tower& t, long long a) {
  return CycNumber::zeta(t.top, static_cast<long long>(t.top / t.base) * a);
}

}  // namespace

TowerAutGroup::TowerAutGroup(const Tower& tower)
    : tower_(tower),
      w_(root_of_unity(tower.top, tower.ram)),
      ramified_(Subgroup::trivial(group_)),
      cyclotomic_(Subgroup::trivial(group_)) {
  const long long big = static_cast<long long>(tower.top), n = static_cast<long long>(tower.ram);
  std::vector<long long> units;
  for (long long u = 1; u <= big; ++u)
    if (std::gcd(u, big) == 1 && mod(u, static_cast<long long>(tower.base)) == 1 % static_cast<long long>(tower.base))
      units.push_back(u % big == 0 ? big : u);
  for (long long u : units)
    for (long long j = 0; j < n; ++j) elems_.push_back(TowerAut{u, j});
  const std::size_t order = elems_.size();
  if (order > 1024) throw BudgetError("aut_group: group of order " + std::to_string(order) + " above the guard");

  // Powers of w, to read off σ_u(w) = w^e(u).
  std::map<std::string, long long> wpow;
  CycNumber x(tower.top, mpq_class(1));
  for (long long i = 0; i < n; ++i, x = x * w_) {
    bool fresh = wpow.emplace(key(x), i).second;
    ensure(fresh, "aut_group: root of unity is not primitive");
  }
  ensure(x.is_one(), "aut_group: w^n != 1");
  std::map<long long, std::size_t> upos;
  std::vector<long long> wexp(units.size());
  for (std::size_t i = 0; i < units.size(); ++i) {
    upos[units[i] % big] = i;
    auto it = wpow.find(key(w_.galois(units[i])));
    ensure(it != wpow.end(), "aut_group: σ_u(w) is not a power of w");
    wexp[i] = it->second;
  }
  // (σ_a σ_b)(t^(1/n)) = σ_ua(w^jb) w^ja t^(1/n).
  std::vector<Elem> table(order * order);
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = 0; b < order; ++b) {
      const auto& ea = elems_[a];
      const auto& eb = elems_[b];
      long long u = ea.u * eb.u % big;
      std::size_t ui = upos.at(u);
      long long j = mod(wexp[a / n] * eb.j + ea.j, n);
      table[a * order + b] = static_cast<Elem>(ui * n + j);
    }
  group_ = order <= 256 ? FiniteGroup::from_table(std::move(table), "Aut(L'/K)")
                        : FiniteGroup::from_trusted_table(std::move(table), "Aut(L'/K)");
  std::vector<Elem> ram, cyc;
  for (Elem s = 0; s < order; ++s) {
    if (elems_[s].u % big == 1 % big) ram.push_back(s);
    if (elems_[s].j == 0) cyc.push_back(s);
  }
  ramified_ = Subgroup(group_, ram);
  cyclotomic_ = Subgroup(group_, cyc);
}

Elem TowerAutGroup::index_of(const TowerAut& a) const {
  for (Elem s = 0; s < elems_.size(); ++s)
    if (elems_[s] == a) return s;
  throw InputError("tower automorphism (u=" + std::to_string(a.u) + ", j=" + std::to_string(a.j) + ") not in the group");
}

CycNumber TowerAutGroup::apply(Elem s, const CycNumber& c) const {
  require(c.conductor() == tower_.top, "tower automorphism: coefficient outside ℚ(ζ_N')");
  return c.galois(elems_[s].u);
}

PuiseuxElement TowerAutGroup::apply(Elem s, const PuiseuxElement& x) const {
  require(x.conductor() == tower_.top && x.denom() == tower_.ram, "tower automorphism: element outside L'");
  const auto& e = elems_[s];
  PuiseuxElement::Terms out;
  for (const auto& [q, c] : x.terms()) {
    mpq_class kq = q * static_cast<long>(tower_.ram);
    long long k = kq.get_num().get_si();
    out.emplace(q, c.galois(e.u) * w_.pow(mod(e.j * k, static_cast<long long>(tower_.ram))));
  }
  return PuiseuxElement(x.conductor(), x.denom(), std::move(out));
}

bool TowerAutGroup::decomposition_holds() const {
  const auto& G = group_;
  std::vector<std::size_t> hits(G.order(), 0);
  for (Elem c : cyclotomic_.members())
    for (Elem r : ramified_.members()) ++hits[G.mul(c, r)];
  for (auto h : hits)
    if (h != 1) return false;
  return intersect(cyclotomic_, ramified_).order() == 1;
}

TowerAutGroup aut_group(const Tower& tower) {
  TowerAutGroup g(tower);
  const auto& t = g.tower();
  auto zeta_n = base_zeta(t, 1);
  auto tee = PuiseuxElement::monomial(CycNumber(t.top, mpq_class(1)), mpq_class(1), t.ram);
  for (Elem s = 0; s < g.group().order(); ++s) {
    ensure(g.apply(s, zeta_n) == zeta_n, "aut_group: an automorphism moves ζ_N");
    ensure(g.apply(s, tee) == tee, "aut_group: an automorphism moves t");
  }
  // Composition in the table agrees with composing the actions on generators.
  auto zeta_top = PuiseuxElement::constant(CycNumber::zeta(t.top), t.ram);
  auto root_t = PuiseuxElement::monomial(CycNumber(t.top, mpq_class(1)), mpq_class(1, static_cast<long>(t.ram)), t.ram);
  const auto& G = g.group();
  for (Elem a = 0; a < G.order(); ++a)
    for (Elem b : {Elem{0}, static_cast<Elem>(G.order() - 1), static_cast<Elem>(a / 2)}) {
      Elem c = G.mul(a, b);
      ensure(g.apply(c, zeta_top) == g.apply(a, g.apply(b, zeta_top)) &&
                 g.apply(c, root_t) == g.apply(a, g.apply(b, root_t)),
             "aut_group: composition table disagrees with the action");
    }
  std::size_t expected = euler_phi(t.top) / euler_phi(t.base) * t.ram;
  ensure(G.order() == expected, "aut_group: order " + std::to_string(G.order()) + ", expected " + std::to_string(expected));
  ensure(g.decomposition_holds(), "aut_group: Aut(L'/K) is not the product of its two parts");
  return g;
}

ResidueCertificate residue_iso_check(const TowerAutGroup& g) {
  const auto& t = g.tower();
  ResidueCertificate r;
  r.left_order = g.cyclotomic().order();
  auto zeta_n = base_zeta(t, 1);
  for (long long k = 1; k <= static_cast<long long>(t.top); ++k) {
    if (std::gcd(k, static_cast<long long>(t.top)) != 1) continue;
    if (zeta_n.galois(k) == zeta_n) r.right.push_back(k % static_cast<long long>(t.top));
  }
  r.right_order = r.right.size();
  auto z = CycNumber::zeta(t.top);
  std::vector<bool> hit(r.right.size(), false);
  bool ok = true;
  for (Elem s : g.cyclotomic().members()) {
    auto img = g.apply(s, z);
    std::size_t found = r.right.size();
    for (std::size_t i = 0; i < r.right.size(); ++i)
      if (img == CycNumber::zeta(t.top, r.right[i])) found = i;
    if (found == r.right.size() || hit[found]) ok = false;
    else hit[found] = true;
    r.map.push_back(found);
  }
  r.bijective = ok && r.left_order == r.right_order;
  return r;
}

CycNumber kummer_pairing(const TowerAutGroup& g, Elem sigma, const PuiseuxElement& e) {
  const auto& t = g.tower();
  require(sigma < g.group().order() && g.ramified().contains(sigma),
          "kummer_pairing: σ does not fix the maximal unramified extension");
  require(e.conductor() == t.top && e.denom() == t.ram, "kummer_pairing: element outside L'");
  require(e.is_monomial(), "kummer_pairing: e is not a monomial");
  const CycNumber& c = ac(e);
  auto cn = c.pow(static_cast<long long>(t.ram));
  for (Elem s : g.cyclotomic().members())
    require(g.apply(s, cn) == cn, "kummer_pairing: e^n is not in K");
  auto image = g.apply(sigma, e);
  auto b = ac(image) / c;
  ensure(b.pow(static_cast<long long>(t.ram)).is_one(), "kummer_pairing: value is not an n-th root of unity");
  return b;
}

Claim3Certificate verify_claim3(const TowerAutGroup& g) {
  const auto& t = g.tower();
  const long long n = static_cast<long long>(t.ram);
  Claim3Certificate c;
  c.aut_order = g.ramified().order();
  std::map<std::string, std::size_t> mu;
  CycNumber x(t.top, mpq_class(1));
  for (long long i = 0; i < n; ++i, x = x * g.root())
    if (x.pow(n).is_one()) mu.emplace(key(x), static_cast<std::size_t>(i));
  c.hom_order = mu.size();

  auto mono = [&](long long k) {
    return PuiseuxElement::monomial(CycNumber(t.top, mpq_class(1)), mpq_class(static_cast<long>(k), static_cast<long>(n)), t.ram);
  };
  const auto& R = g.ramified().members();
  c.multiplicative = c.factors = true;
  for (Elem s : R) {
    auto b = kummer_pairing(g, s, mono(1));
    auto it = mu.find(key(b));
    ensure(it != mu.end(), "verify_claim3: pairing value outside μ_n");
    c.exponents.push_back(it->second);
    for (long long k = -n; k < n; ++k) {
      auto bk = kummer_pairing(g, s, mono(k));
      if (bk != b.pow(k)) c.multiplicative = false;
      if (kummer_pairing(g, s, mono(k + n)) != bk) c.factors = false;
    }
  }
  const auto& G = g.group();
  c.homomorphism = true;
  for (std::size_t i = 0; i < R.size(); ++i)
    for (std::size_t j = 0; j < R.size(); ++j) {
      Elem p = G.mul(R[i], R[j]);
      std::size_t k = static_cast<std::size_t>(std::lower_bound(R.begin(), R.end(), p) - R.begin());
      if (k == R.size() || R[k] != p || c.exponents[k] != (c.exponents[i] + c.exponents[j]) % t.ram)
        c.homomorphism = false;
    }
  std::size_t trivial = 0;
  for (std::size_t i = 0; i < R.size(); ++i)
    if (c.exponents[i] == 0) ++trivial;
  c.injective = trivial == 1 && c.exponents[0] == 0;
  c.surjective = c.injective && c.aut_order == c.hom_order;
  return c;
}

PairingReport check_pairing(const TowerAutGroup& g, std::size_t pairs, std::uint64_t seed) {
  const auto& t = g.tower();
  const long long n = static_cast<long long>(t.ram);
  std::mt19937_64 rng(seed);
  auto pick = [&](long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(rng); };
  auto coeff = [&] {
    long long num = pick(1, 5) * (pick(0, 1) ? 1 : -1);
    mpq_class r(static_cast<long>(num), static_cast<long>(pick(1, 4)));
    r.canonicalize();
    return CycNumber(t.top, r) * base_zeta(t, pick(0, static_cast<long long>(t.base) - 1)) * g.root().pow(pick(0, n - 1));
  };
  auto monomial = [&](long long k) { return PuiseuxElement::monomial(coeff(), mpq_class(static_cast<long>(k), static_cast<long>(n)), t.ram); };
  const auto& R = g.ramified().members();
  PairingReport rep;
  for (std::size_t i = 0; i < pairs; ++i) {
    Elem s = R[static_cast<std::size_t>(pick(0, static_cast<long long>(R.size()) - 1))];
    auto e1 = monomial(pick(-2 * n, 2 * n));
    auto e2 = monomial(pick(-2 * n, 2 * n));
    auto e3 = monomial(n * pick(-2, 2));
    auto b1 = kummer_pairing(g, s, e1);
    if (kummer_pairing(g, s, e1 * e2) != b1 * kummer_pairing(g, s, e2)) ++rep.multiplicative_failures;
    if (!kummer_pairing(g, s, e3).is_one()) ++rep.trivial_failures;
    if (kummer_pairing(g, s, e1 * e3) != b1) ++rep.factor_failures;
    ++rep.pairs;
  }
  return rep;
}

}  // namespace fimag
