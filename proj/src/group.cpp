#include "fimag/group.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "fimag/error.hpp"

namespace fimag {

namespace {

std::size_t isqrt_exact(std::size_t n) {
  std::size_t r = 0;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r * r == n ? r : 0;
}

std::vector<Elem> closure(const FiniteGroup& g, std::vector<bool>& mask, std::vector<Elem> members,
                          std::span<const Elem> gens) {
  std::deque<Elem> queue(members.begin(), members.end());
  while (!queue.empty()) {
    Elem x = queue.front();
    queue.pop_front();
    for (Elem s : gens) {
      Elem y = g.mul(x, s);
      if (!mask[y]) {
        mask[y] = true;
        members.push_back(y);
        queue.push_back(y);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

std::size_t factorial(std::size_t n) {
  std::size_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

// Lehmer rank of a permutation of 0..d-1.
std::size_t perm_rank(const Perm& p) {
  std::size_t d = p.size();
  std::size_t rank = 0;
  for (std::size_t i = 0; i < d; ++i) {
    std::size_t smaller = 0;
    for (std::size_t j = i + 1; j < d; ++j)
      if (p[j] < p[i]) ++smaller;
    rank = rank * (d - i) + smaller;
  }
  return rank;
}

}  // namespace

// ---------------------------------------------------------------- FiniteGroup

FiniteGroup::FiniteGroup() {
  auto d = std::make_shared<Data>();
  d->n = 1;
  d->id = 0;
  d->table = {0};
  d->inv = {0};
  d->name = "C1";
  d_ = std::move(d);
}

std::shared_ptr<FiniteGroup::Data> FiniteGroup::prepare(std::vector<Elem>& table, std::string name) {
  std::size_t n = isqrt_exact(table.size());
  if (!(n >= 1)) throw InputError("group table size " + std::to_string(table.size()) + " is not a positive square");
  if (n > kMaxGroupOrder)
    throw BudgetError("group order " + std::to_string(n) + " exceeds the table guard " +
                      std::to_string(kMaxGroupOrder));
  for (std::size_t i = 0; i < table.size(); ++i)
    if (!(table[i] < n)) throw InputError("table entry " + std::to_string(table[i]) + " out of range at row " +
                              std::to_string(i / n) + ", column " + std::to_string(i % n));
  auto d = std::make_shared<Data>();
  d->n = n;
  d->name = std::move(name);
  d->table.assign(table.begin(), table.end());
  std::optional<Elem> id;
  for (Elem e = 0; e < n && !id; ++e) {
    bool ok = true;
    for (Elem x = 0; x < n && ok; ++x) ok = table[e * n + x] == x && table[x * n + e] == x;
    if (ok) id = e;
  }
  require(id.has_value(), "group table has no two-sided identity");
  d->id = *id;
  d->inv.assign(n, 0);
  for (Elem a = 0; a < n; ++a) {
    std::optional<Elem> b;
    for (Elem x = 0; x < n && !b; ++x)
      if (table[a * n + x] == *id && table[x * n + a] == *id) b = x;
    if (!(b.has_value())) throw InputError("element " + std::to_string(a) + " has no two-sided inverse");
    d->inv[a] = *b;
  }
  return d;
}

FiniteGroup FiniteGroup::from_trusted_table(std::vector<Elem> table, std::string name) {
  return FiniteGroup(prepare(table, std::move(name)));
}

FiniteGroup FiniteGroup::from_table(std::vector<Elem> table, std::string name) {
  FiniteGroup g(prepare(table, std::move(name)));
  std::size_t n = g.order();
  for (Elem a = 0; a < n; ++a) {
    std::vector<bool> seen(n, false);
    for (Elem b = 0; b < n; ++b) {
      Elem c = g.mul(a, b);
      if (!(!seen[c])) throw InputError("row " + std::to_string(a) + " repeats entry " + std::to_string(c));
      seen[c] = true;
    }
  }
  if (n <= kFullCheckOrder) {
    if (auto why = group_law_violation(g)) throw InputError(*why);
  }
  return g;
}

Elem FiniteGroup::pow(Elem a, long long k) const {
  if (k < 0) {
    a = inv(a);
    k = -k;
  }
  Elem result = identity();
  Elem base = a;
  while (k > 0) {
    if (k & 1) result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

std::size_t FiniteGroup::element_order(Elem a) const {
  std::size_t k = 1;
  for (Elem x = a; x != identity(); x = mul(x, a)) ++k;
  return k;
}

std::size_t FiniteGroup::exponent() const {
  std::size_t e = 1;
  for (Elem a = 0; a < order(); ++a) e = std::lcm(e, element_order(a));
  return e;
}

bool FiniteGroup::is_abelian() const {
  for (Elem a = 0; a < order(); ++a)
    for (Elem b = a + 1; b < order(); ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

FiniteGroup FiniteGroup::renamed(std::string name) const {
  auto d = std::make_shared<Data>(*d_);
  d->name = std::move(name);
  return FiniteGroup(std::move(d));
}

bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
  return a.d_ == b.d_ || (a.d_->n == b.d_->n && a.d_->table == b.d_->table);
}

std::vector<Elem> FiniteGroup::table() const { return {d_->table.begin(), d_->table.end()}; }

std::optional<std::string> group_law_violation(const FiniteGroup& g) {
  std::size_t n = g.order();
  for (Elem x = 0; x < n; ++x) {
    if (g.mul(g.identity(), x) != x || g.mul(x, g.identity()) != x)
      return "identity law fails at " + std::to_string(x);
    if (g.mul(x, g.inv(x)) != g.identity() || g.mul(g.inv(x), x) != g.identity())
      return "inverse law fails at " + std::to_string(x);
  }
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      Elem ab = g.mul(a, b);
      for (Elem c = 0; c < n; ++c)
        if (g.mul(ab, c) != g.mul(a, g.mul(b, c)))
          return "associativity fails at (" + std::to_string(a) + "," + std::to_string(b) + "," +
                 std::to_string(c) + ")";
    }
  return std::nullopt;
}

// ------------------------------------------------------------------ Subgroup

Subgroup::Subgroup(FiniteGroup parent, std::vector<Elem> members, Trusted)
    : parent_(std::move(parent)), members_(std::move(members)), mask_(parent_.order(), false) {
  for (Elem x : members_) mask_[x] = true;
}

Subgroup::Subgroup(FiniteGroup parent, std::vector<Elem> members)
    : parent_(std::move(parent)), mask_(parent_.order(), false) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  for (Elem x : members) {
    if (!(x < parent_.order())) throw InputError("subgroup member " + std::to_string(x) + " out of range");
    mask_[x] = true;
  }
  require(!members.empty() && mask_[parent_.identity()], "subgroup does not contain the identity");
  for (Elem a : members) {
    if (!(mask_[parent_.inv(a)])) throw InputError("subgroup not closed under inverse at " + std::to_string(a));
    for (Elem b : members)
      if (!(mask_[parent_.mul(a, b)])) throw InputError("subgroup not closed under product of " + std::to_string(a) +
                                            " and " + std::to_string(b));
  }
  members_ = std::move(members);
}

Subgroup make_trusted_subgroup(FiniteGroup parent, std::vector<Elem> members) {
  std::sort(members.begin(), members.end());
  return Subgroup(std::move(parent), std::move(members), Subgroup::Trusted{});
}

Subgroup Subgroup::trivial(const FiniteGroup& g) { return make_trusted_subgroup(g, {g.identity()}); }

Subgroup Subgroup::whole(const FiniteGroup& g) {
  std::vector<Elem> all(g.order());
  std::iota(all.begin(), all.end(), Elem{0});
  return make_trusted_subgroup(g, std::move(all));
}

Subgroup generated_subgroup(const FiniteGroup& g, std::span<const Elem> gens) {
  std::vector<bool> mask(g.order(), false);
  mask[g.identity()] = true;
  for (Elem s : gens) require(s < g.order(), "generator out of range");
  return make_trusted_subgroup(g, closure(g, mask, {g.identity()}, gens));
}

Subgroup conjugate(const Subgroup& h, Elem g) {
  const auto& G = h.parent();
  std::vector<Elem> m;
  m.reserve(h.order());
  for (Elem x : h.members()) m.push_back(G.conj(g, x));
  return make_trusted_subgroup(G, std::move(m));
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  require(a.parent() == b.parent(), "intersect: subgroups of different groups");
  std::vector<Elem> m;
  for (Elem x : a.members())
    if (b.contains(x)) m.push_back(x);
  return make_trusted_subgroup(a.parent(), std::move(m));
}

std::optional<std::pair<Elem, Elem>> normality_violation(const Subgroup& h) {
  const auto& G = h.parent();
  for (Elem g = 0; g < G.order(); ++g)
    for (Elem x : h.members())
      if (!h.contains(G.conj(g, x))) return std::make_pair(g, x);
  return std::nullopt;
}

bool is_normal(const Subgroup& h) { return !normality_violation(h).has_value(); }

Subgroup core_of_subgroup(const FiniteGroup& g, const Subgroup& h) {
  require(h.parent() == g, "core_of_subgroup: H is not a subgroup of G");
  std::vector<bool> keep(g.order(), false);
  for (Elem x : h.members()) keep[x] = true;
  for (Elem s = 0; s < g.order(); ++s) {
    Elem si = g.inv(s);
    for (Elem x : h.members())
      if (keep[x] && !h.contains(g.mul(g.mul(si, x), s))) keep[x] = false;
  }
  std::vector<Elem> m;
  for (Elem x : h.members())
    if (keep[x]) m.push_back(x);
  return make_trusted_subgroup(g, std::move(m));
}

std::vector<Subgroup> all_subgroups(const FiniteGroup& g) {
  if (g.order() > 256) throw BudgetError("all_subgroups: order above 256");
  struct Entry {
    std::vector<Elem> members;
    std::vector<Elem> gens;
  };
  std::map<std::vector<Elem>, std::size_t> seen;
  std::vector<Entry> entries;
  auto add = [&](std::vector<Elem> gens) {
    Subgroup s = generated_subgroup(g, gens);
    if (seen.emplace(s.members(), entries.size()).second)
      entries.push_back({s.members(), std::move(gens)});
  };
  add({});
  for (Elem x = 0; x < g.order(); ++x) add({x});
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (Elem x = 0; x < g.order(); ++x) {
      const auto& m = entries[i].members;
      if (std::binary_search(m.begin(), m.end(), x)) continue;
      auto gens = entries[i].gens;
      gens.push_back(x);
      add(std::move(gens));
    }
  }
  std::vector<Subgroup> out;
  out.reserve(entries.size());
  for (auto& e : entries) out.push_back(make_trusted_subgroup(g, std::move(e.members)));
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.members() < b.members();
  });
  return out;
}

std::vector<Subgroup> normal_subgroups(const FiniteGroup& g) {
  std::vector<Subgroup> out;
  for (auto& s : all_subgroups(g))
    if (is_normal(s)) out.push_back(std::move(s));
  return out;
}

std::vector<Elem> generating_sequence(const FiniteGroup& g) {
  std::vector<std::pair<std::size_t, Elem>> by_order;
  for (Elem x = 0; x < g.order(); ++x) by_order.emplace_back(g.element_order(x), x);
  std::sort(by_order.begin(), by_order.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  std::vector<Elem> gens;
  std::vector<bool> mask(g.order(), false);
  mask[g.identity()] = true;
  std::vector<Elem> members{g.identity()};
  for (auto [ord, x] : by_order) {
    if (mask[x]) continue;
    gens.push_back(x);
    members = closure(g, mask, members, gens);
    if (members.size() == g.order()) break;
  }
  return gens;
}

// ------------------------------------------------------------------ GroupHom

GroupHom::GroupHom(FiniteGroup source, FiniteGroup target, std::vector<Elem> map, Trusted)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {}

GroupHom::GroupHom(FiniteGroup source, FiniteGroup target, std::vector<Elem> map)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
  require(map_.size() == source_.order(), "homomorphism table has wrong length");
  for (Elem v : map_) require(v < target_.order(), "homomorphism value out of range");
  for (Elem x = 0; x < source_.order(); ++x)
    for (Elem y = 0; y < source_.order(); ++y)
      if (!(map_[source_.mul(x, y)] == target_.mul(map_[x], map_[y]))) throw InputError("map is not multiplicative at (" + std::to_string(x) + "," + std::to_string(y) + ")");
}

GroupHom GroupHom::trusted(FiniteGroup source, FiniteGroup target, std::vector<Elem> map) {
  return GroupHom(std::move(source), std::move(target), std::move(map), Trusted{});
}

GroupHom GroupHom::identity(const FiniteGroup& g) {
  std::vector<Elem> m(g.order());
  std::iota(m.begin(), m.end(), Elem{0});
  return trusted(g, g, std::move(m));
}

Subgroup GroupHom::kernel() const {
  std::vector<Elem> m;
  for (Elem x = 0; x < source_.order(); ++x)
    if (map_[x] == target_.identity()) m.push_back(x);
  return make_trusted_subgroup(source_, std::move(m));
}

Subgroup GroupHom::image() const {
  std::vector<Elem> m(map_);
  std::sort(m.begin(), m.end());
  m.erase(std::unique(m.begin(), m.end()), m.end());
  return make_trusted_subgroup(target_, std::move(m));
}

bool GroupHom::is_injective() const { return kernel().order() == 1; }
bool GroupHom::is_surjective() const { return image().order() == target_.order(); }

GroupHom compose(const GroupHom& outer, const GroupHom& inner) {
  require(inner.target() == outer.source(), "compose: mismatched groups");
  std::vector<Elem> m(inner.source().order());
  for (Elem x = 0; x < m.size(); ++x) m[x] = outer(inner(x));
  return GroupHom::trusted(inner.source(), outer.target(), std::move(m));
}

std::vector<GroupHom> homomorphisms(const FiniteGroup& src, const FiniteGroup& dst, std::uint64_t budget) {
  auto gens = generating_sequence(src);
  std::uint64_t candidates = 1;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    candidates *= dst.order();
    if (candidates > budget)
      throw BudgetError("homomorphism search needs more than " + std::to_string(budget) + " candidates");
  }
  std::vector<GroupHom> out;
  std::vector<Elem> images(gens.size(), 0);
  const Elem unset = static_cast<Elem>(-1);
  for (std::uint64_t c = 0; c < candidates; ++c) {
    std::uint64_t rest = c;
    for (std::size_t i = gens.size(); i-- > 0;) {
      images[i] = static_cast<Elem>(rest % dst.order());
      rest /= dst.order();
    }
    std::vector<Elem> val(src.order(), unset);
    val[src.identity()] = dst.identity();
    std::deque<Elem> queue{src.identity()};
    bool ok = true;
    while (!queue.empty() && ok) {
      Elem x = queue.front();
      queue.pop_front();
      for (std::size_t i = 0; i < gens.size(); ++i) {
        Elem y = src.mul(x, gens[i]);
        Elem v = dst.mul(val[x], images[i]);
        if (val[y] == unset) {
          val[y] = v;
          queue.push_back(y);
        } else if (val[y] != v) {
          ok = false;
          break;
        }
      }
    }
    if (ok) out.push_back(GroupHom::trusted(src, dst, std::move(val)));
  }
  return out;
}

// ------------------------------------------------------------------ quotient

Quotient quotient(const FiniteGroup& g, const Subgroup& n) {
  require(n.parent() == g, "quotient: N is not a subgroup of G");
  if (auto bad = normality_violation(n)) {
    auto [s, x] = *bad;
    throw InputError("quotient: subgroup is not normal: " + std::to_string(s) + " * " + std::to_string(x) +
                     " * " + std::to_string(g.inv(s)) + " = " + std::to_string(g.conj(s, x)) +
                     " lies outside N");
  }
  const Elem unset = static_cast<Elem>(-1);
  std::vector<Elem> coset(g.order(), unset);
  std::vector<Elem> reps;
  for (Elem x = 0; x < g.order(); ++x) {
    if (coset[x] != unset) continue;
    Elem id = static_cast<Elem>(reps.size());
    reps.push_back(x);
    for (Elem m : n.members()) coset[g.mul(x, m)] = id;
  }
  std::size_t q = reps.size();
  std::vector<Elem> table(q * q);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j) table[i * q + j] = coset[g.mul(reps[i], reps[j])];
  std::string name = g.name().empty() ? std::string{} : g.name() + "/N";
  FiniteGroup qg = FiniteGroup::from_trusted_table(std::move(table), std::move(name));
  return {qg, GroupHom::trusted(g, qg, std::move(coset))};
}

Embedded as_group(const Subgroup& h, std::string name) {
  const auto& G = h.parent();
  const auto& m = h.members();
  std::vector<Elem> local(G.order(), 0);
  for (std::size_t i = 0; i < m.size(); ++i) local[m[i]] = static_cast<Elem>(i);
  std::size_t k = m.size();
  std::vector<Elem> table(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) table[i * k + j] = local[G.mul(m[i], m[j])];
  FiniteGroup sub = FiniteGroup::from_trusted_table(std::move(table), std::move(name));
  return {sub, GroupHom::trusted(sub, G, m)};
}

// --------------------------------------------------------------- GroupAction

GroupAction::GroupAction(FiniteGroup group, std::size_t points, std::vector<Elem> table, Trusted)
    : group_(std::move(group)), points_(points), table_(std::move(table)) {}

GroupAction GroupAction::trusted(FiniteGroup group, std::size_t points, std::vector<Elem> table) {
  return GroupAction(std::move(group), points, std::move(table), Trusted{});
}

GroupAction GroupAction::trivial(FiniteGroup group, std::size_t points) {
  std::vector<Elem> t(group.order() * points);
  for (std::size_t g = 0; g < group.order(); ++g)
    for (std::size_t p = 0; p < points; ++p) t[g * points + p] = static_cast<Elem>(p);
  return trusted(std::move(group), points, std::move(t));
}

GroupAction::GroupAction(FiniteGroup group, std::size_t points, std::vector<Elem> table)
    : group_(std::move(group)), points_(points), table_(std::move(table)) {
  require(table_.size() == group_.order() * points_, "action table has wrong size");
  for (Elem v : table_) require(v < points_, "action table entry out of range");
  for (Elem p = 0; p < points_; ++p)
    if (!(act(group_.identity(), p) == p)) throw InputError("identity moves point " + std::to_string(p));
  for (Elem g = 0; g < group_.order(); ++g)
    for (Elem h = 0; h < group_.order(); ++h)
      for (Elem p = 0; p < points_; ++p)
        if (!(act(group_.mul(g, h), p) == act(g, act(h, p)))) throw InputError("action law fails at (" + std::to_string(g) + "," + std::to_string(h) + "," +
                    std::to_string(p) + ")");
}

std::vector<Elem> GroupAction::orbit(Elem p) const {
  std::vector<bool> seen(points_, false);
  std::vector<Elem> out;
  for (Elem g = 0; g < group_.order(); ++g) {
    Elem q = act(g, p);
    if (!seen[q]) {
      seen[q] = true;
      out.push_back(q);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<Elem>> GroupAction::orbits() const {
  std::vector<bool> seen(points_, false);
  std::vector<std::vector<Elem>> out;
  for (Elem p = 0; p < points_; ++p) {
    if (seen[p]) continue;
    auto o = orbit(p);
    for (Elem q : o) seen[q] = true;
    out.push_back(std::move(o));
  }
  return out;
}

Subgroup GroupAction::stabilizer(Elem p) const {
  std::vector<Elem> m;
  for (Elem g = 0; g < group_.order(); ++g)
    if (act(g, p) == p) m.push_back(g);
  return make_trusted_subgroup(group_, std::move(m));
}

Subgroup GroupAction::kernel() const {
  std::vector<Elem> m;
  for (Elem g = 0; g < group_.order(); ++g) {
    bool fixes = true;
    for (Elem p = 0; p < points_ && fixes; ++p) fixes = act(g, p) == p;
    if (fixes) m.push_back(g);
  }
  return make_trusted_subgroup(group_, std::move(m));
}

bool GroupAction::is_transitive() const { return points_ > 0 && orbit(0).size() == points_; }
bool GroupAction::is_faithful() const { return kernel().order() == 1; }

std::vector<Elem> GroupAction::fixed_points(const Subgroup& h) const {
  std::vector<Elem> out;
  for (Elem p = 0; p < points_; ++p) {
    bool fixed = true;
    for (Elem g : h.members())
      if (act(g, p) != p) {
        fixed = false;
        break;
      }
    if (fixed) out.push_back(p);
  }
  return out;
}

GroupAction GroupAction::pullback(const GroupHom& f) const {
  require(f.target() == group_, "pullback: homomorphism does not land in the acting group");
  std::vector<Elem> t(f.source().order() * points_);
  for (Elem g = 0; g < f.source().order(); ++g)
    for (Elem p = 0; p < points_; ++p) t[g * points_ + p] = act(f(g), p);
  return trusted(f.source(), points_, std::move(t));
}

// -------------------------------------------------------------- constructors

FiniteGroup make_cyclic(std::size_t n) {
  require(n >= 1, "make_cyclic: order must be at least 1");
  if (n > kMaxGroupOrder) throw BudgetError("make_cyclic: order above table guard");
  std::vector<Elem> t(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a * n + b] = static_cast<Elem>((a + b) % n);
  return FiniteGroup::from_trusted_table(std::move(t), "C" + std::to_string(n));
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  std::size_t na = a.order(), nb = b.order(), n = na * nb;
  if (n > kMaxGroupOrder) throw BudgetError("direct_product: order above table guard");
  std::vector<Elem> t(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      t[x * n + y] = static_cast<Elem>(a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb));
  std::string name = a.name().empty() || b.name().empty() ? std::string{} : a.name() + "x" + b.name();
  return FiniteGroup::from_trusted_table(std::move(t), std::move(name));
}

PermutationGroup permutation_group(const std::vector<Perm>& generators, std::size_t degree, std::string name) {
  require(degree >= 1 && degree <= 8, "permutation_group: degree must lie in 1..8");
  Perm id(degree);
  std::iota(id.begin(), id.end(), Elem{0});
  for (const auto& g : generators) {
    require(g.size() == degree, "permutation_group: generator has wrong degree");
    auto s = g;
    std::sort(s.begin(), s.end());
    require(s == id, "permutation_group: generator is not a permutation");
  }
  std::vector<bool> seen(factorial(degree), false);
  std::vector<Perm> elems{id};
  seen[perm_rank(id)] = true;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const auto& g : generators) {
      Perm p(degree);
      for (std::size_t k = 0; k < degree; ++k) p[k] = g[elems[i][k]];
      std::size_t r = perm_rank(p);
      if (!seen[r]) {
        seen[r] = true;
        elems.push_back(std::move(p));
        if (elems.size() > kMaxGroupOrder) throw BudgetError("permutation_group: order above table guard");
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  std::vector<Elem> index(factorial(degree), 0);
  for (std::size_t i = 0; i < elems.size(); ++i) index[perm_rank(elems[i])] = static_cast<Elem>(i);
  std::size_t n = elems.size();
  std::vector<Elem> t(n * n);
  Perm p(degree);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t k = 0; k < degree; ++k) p[k] = elems[a][elems[b][k]];
      t[a * n + b] = index[perm_rank(p)];
    }
  FiniteGroup g = FiniteGroup::from_trusted_table(std::move(t), std::move(name));
  std::vector<Elem> act(n * degree);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t k = 0; k < degree; ++k) act[a * degree + k] = elems[a][k];
  GroupAction nat = GroupAction::trusted(g, degree, std::move(act));
  return {g, nat, std::move(elems)};
}

PermutationGroup make_symmetric(std::size_t n) {
  require(n >= 1 && n <= 8, "make_symmetric: degree must lie in 1..8");
  if (factorial(n) > kMaxGroupOrder)
    throw BudgetError("make_symmetric: Sym(" + std::to_string(n) + ") exceeds the table guard of " +
                      std::to_string(kMaxGroupOrder));
  std::vector<Perm> gens;
  if (n >= 2) {
    Perm swap(n), cycle(n);
    std::iota(swap.begin(), swap.end(), Elem{0});
    std::swap(swap[0], swap[1]);
    for (std::size_t k = 0; k < n; ++k) cycle[k] = static_cast<Elem>((k + 1) % n);
    gens = {swap, cycle};
  }
  return permutation_group(gens, n, "S" + std::to_string(n));
}

GroupAction coset_action(const Subgroup& h) {
  const auto& G = h.parent();
  const Elem unset = static_cast<Elem>(-1);
  std::vector<Elem> coset(G.order(), unset);
  std::vector<Elem> reps;
  auto assign = [&](Elem x) {
    Elem id = static_cast<Elem>(reps.size());
    reps.push_back(x);
    for (Elem m : h.members()) coset[G.mul(x, m)] = id;
  };
  assign(G.identity());
  for (Elem x = 0; x < G.order(); ++x)
    if (coset[x] == unset) assign(x);
  std::size_t k = reps.size();
  std::vector<Elem> t(G.order() * k);
  for (Elem g = 0; g < G.order(); ++g)
    for (std::size_t c = 0; c < k; ++c) t[g * k + c] = coset[G.mul(g, reps[c])];
  return GroupAction::trusted(G, k, std::move(t));
}

AutomorphismGroup automorphism_group(const FiniteGroup& g) {
  std::vector<GroupHom> autos;
  for (auto& f : homomorphisms(g, g))
    if (f.is_injective()) autos.push_back(std::move(f));
  auto is_id = [](const GroupHom& f) {
    for (Elem x = 0; x < f.map().size(); ++x)
      if (f(x) != x) return false;
    return true;
  };
  std::stable_partition(autos.begin(), autos.end(), is_id);
  std::map<std::vector<Elem>, Elem> index;
  for (std::size_t i = 0; i < autos.size(); ++i) index[autos[i].map()] = static_cast<Elem>(i);
  std::size_t k = autos.size();
  if (k > kMaxGroupOrder) throw BudgetError("automorphism_group: order above table guard");
  std::vector<Elem> t(k * k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) t[a * k + b] = index.at(compose(autos[a], autos[b]).map());
  return {FiniteGroup::from_trusted_table(std::move(t), "Aut(" + g.name() + ")"), std::move(autos)};
}

// ----------------------------------------------------------------- text I/O

std::string write_group_text(const FiniteGroup& g) {
  std::ostringstream os;
  os << "group " << g.order() << '\n';
  for (Elem a = 0; a < g.order(); ++a) {
    for (Elem b = 0; b < g.order(); ++b) os << (b ? " " : "") << g.mul(a, b);
    os << '\n';
  }
  return os.str();
}

FiniteGroup read_group_text(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      auto first = line.find_first_not_of(" \t\r");
      if (first != std::string::npos && line[first] != '#') return true;
    }
    return false;
  };
  require(next_line(), "group text: empty input");
  std::istringstream head(line);
  std::string word;
  long long n = -1;
  head >> word >> n;
  if (!(word == "group" && n >= 1)) throw InputError("group text line " + std::to_string(lineno) + ": expected 'group <n>'");
  if (static_cast<std::size_t>(n) > kMaxGroupOrder) throw BudgetError("group text: order above table guard");
  std::vector<Elem> table;
  table.reserve(static_cast<std::size_t>(n * n));
  for (long long r = 0; r < n; ++r) {
    if (!(next_line())) throw InputError("group text: missing row " + std::to_string(r));
    std::istringstream row(line);
    long long v;
    long long count = 0;
    while (row >> v) {
      if (!(v >= 0 && v < n)) throw InputError("group text line " + std::to_string(lineno) + ": entry out of range");
      table.push_back(static_cast<Elem>(v));
      ++count;
    }
    if (!(row.eof())) throw InputError("group text line " + std::to_string(lineno) + ": non-numeric entry");
    if (!(count == n)) throw InputError("group text line " + std::to_string(lineno) + ": expected " + std::to_string(n) +
                            " entries, found " + std::to_string(count));
  }
  return FiniteGroup::from_table(std::move(table));
}

}  // namespace fimag
