#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fimag {

// Dense index of a group element (or of a point of a finite set).
using Elem = std::uint32_t;
using Perm = std::vector<Elem>;

// Tables are stored with 16-bit entries; every exhaustive algorithm in the
// library assumes a group of at most this order.
inline constexpr std::size_t kMaxGroupOrder = 6000;

// Above this order the O(n^3) associativity scan is skipped when validating
// an untrusted table.
inline constexpr std::size_t kFullCheckOrder = 512;

// A finite group given by its full multiplication table. Elements are the
// dense indices 0..order()-1. Copies share the immutable table.
class FiniteGroup {
 public:
  // The trivial group.
  FiniteGroup();

  // Validates the table (row-major, table[a * n + b] = a*b) and throws
  // InputError naming the first violated law.
  static FiniteGroup from_table(std::vector<Elem> table, std::string name = {});

  // For constructions whose laws hold by construction. Identity and inverses
  // are still derived from the table.
  static FiniteGroup from_trusted_table(std::vector<Elem> table, std::string name = {});

  std::size_t order() const { return d_->n; }
  Elem identity() const { return d_->id; }
  Elem mul(Elem a, Elem b) const { return d_->table[static_cast<std::size_t>(a) * d_->n + b]; }
  Elem inv(Elem a) const { return d_->inv[a]; }
  Elem conj(Elem g, Elem h) const { return mul(mul(g, h), inv(g)); }  // g h g^-1
  Elem pow(Elem a, long long k) const;
  std::size_t element_order(Elem a) const;
  std::size_t exponent() const;
  bool is_abelian() const;

  const std::string& name() const { return d_->name; }
  FiniteGroup renamed(std::string name) const;

  // True when both handles share one table.
  bool same_as(const FiniteGroup& o) const { return d_ == o.d_; }
  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b);

  std::vector<Elem> table() const;

 private:
  struct Data {
    std::size_t n = 1;
    Elem id = 0;
    std::vector<std::uint16_t> table;
    std::vector<Elem> inv;
    std::string name;
  };
  explicit FiniteGroup(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  static std::shared_ptr<Data> prepare(std::vector<Elem>& table, std::string name);

  std::shared_ptr<const Data> d_;
};

// Full associativity/identity/inverse check. Returns a diagnostic on failure.
std::optional<std::string> group_law_violation(const FiniteGroup& g);

class Subgroup {
 public:
  // Validates closure under mul/inv and presence of the identity.
  Subgroup(FiniteGroup parent, std::vector<Elem> members);

  static Subgroup trivial(const FiniteGroup& g);
  static Subgroup whole(const FiniteGroup& g);

  const FiniteGroup& parent() const { return parent_; }
  const std::vector<Elem>& members() const { return members_; }
  bool contains(Elem x) const { return mask_[x]; }
  std::size_t order() const { return members_.size(); }
  std::size_t index() const { return parent_.order() / members_.size(); }

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.members_ == b.members_; }

 private:
  struct Trusted {};
  Subgroup(FiniteGroup parent, std::vector<Elem> members, Trusted);
  friend Subgroup make_trusted_subgroup(FiniteGroup, std::vector<Elem>);

  FiniteGroup parent_;
  std::vector<Elem> members_;
  std::vector<bool> mask_;
};

Subgroup make_trusted_subgroup(FiniteGroup parent, std::vector<Elem> members);

Subgroup generated_subgroup(const FiniteGroup& g, std::span<const Elem> gens);
Subgroup conjugate(const Subgroup& h, Elem g);  // g H g^-1
Subgroup intersect(const Subgroup& a, const Subgroup& b);

// (g, h) with h in H and g h g^-1 outside H, if any.
std::optional<std::pair<Elem, Elem>> normality_violation(const Subgroup& h);
bool is_normal(const Subgroup& h);

// Intersection of all conjugates of H.
Subgroup core_of_subgroup(const FiniteGroup& g, const Subgroup& h);

// Every subgroup, sorted by (order, members). Guarded to |G| <= 256.
std::vector<Subgroup> all_subgroups(const FiniteGroup& g);
std::vector<Subgroup> normal_subgroups(const FiniteGroup& g);

// Greedy generating sequence: elements by descending order (ties by index),
// kept when not already in the span of the previous ones.
std::vector<Elem> generating_sequence(const FiniteGroup& g);

class GroupHom {
 public:
  // Validates map(xy) = map(x)map(y) on all pairs.
  GroupHom(FiniteGroup source, FiniteGroup target, std::vector<Elem> map);

  static GroupHom identity(const FiniteGroup& g);
  static GroupHom trusted(FiniteGroup source, FiniteGroup target, std::vector<Elem> map);

  const FiniteGroup& source() const { return source_; }
  const FiniteGroup& target() const { return target_; }
  const std::vector<Elem>& map() const { return map_; }
  Elem operator()(Elem x) const { return map_[x]; }

  Subgroup kernel() const;
  Subgroup image() const;
  bool is_injective() const;
  bool is_surjective() const;

 private:
  struct Trusted {};
  GroupHom(FiniteGroup source, FiniteGroup target, std::vector<Elem> map, Trusted);

  FiniteGroup source_;
  FiniteGroup target_;
  std::vector<Elem> map_;
};

GroupHom compose(const GroupHom& outer, const GroupHom& inner);

// Every homomorphism src -> dst, in lexicographic order of the images of
// generating_sequence(src). Throws BudgetError past `budget` candidates.
std::vector<GroupHom> homomorphisms(const FiniteGroup& src, const FiniteGroup& dst,
                                    std::uint64_t budget = 1'000'000);

struct Quotient {
  FiniteGroup group;
  GroupHom projection;
};

// G/N with cosets indexed in order of their least element. Throws
// InputError naming a violating conjugation when N is not normal.
Quotient quotient(const FiniteGroup& g, const Subgroup& n);

struct Embedded {
  FiniteGroup group;
  GroupHom inclusion;
};

// The subgroup as a group in its own right; element i is members()[i].
Embedded as_group(const Subgroup& h, std::string name = {});

// Left action of a group on the points 0..points()-1.
class GroupAction {
 public:
  // Validates the identity and compatibility laws.
  GroupAction(FiniteGroup group, std::size_t points, std::vector<Elem> table);
  static GroupAction trusted(FiniteGroup group, std::size_t points, std::vector<Elem> table);
  static GroupAction trivial(FiniteGroup group, std::size_t points);

  const FiniteGroup& group() const { return group_; }
  std::size_t points() const { return points_; }
  Elem act(Elem g, Elem p) const { return table_[static_cast<std::size_t>(g) * points_ + p]; }
  const std::vector<Elem>& table() const { return table_; }

  std::vector<Elem> orbit(Elem p) const;  // sorted
  std::vector<std::vector<Elem>> orbits() const;  // ordered by least point
  Subgroup stabilizer(Elem p) const;
  Subgroup kernel() const;
  bool is_transitive() const;
  bool is_faithful() const;
  std::vector<Elem> fixed_points(const Subgroup& h) const;
  // Restriction along a homomorphism into group().
  GroupAction pullback(const GroupHom& f) const;

 private:
  struct Trusted {};
  GroupAction(FiniteGroup group, std::size_t points, std::vector<Elem> table, Trusted);

  FiniteGroup group_;
  std::size_t points_;
  std::vector<Elem> table_;
};

// Cyclic group Z/n; element k is the k-th power of the generator 1.
FiniteGroup make_cyclic(std::size_t n);

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);

struct PermutationGroup {
  FiniteGroup group;
  GroupAction natural;
  std::vector<Perm> perms;  // perms[i] is element i; lexicographic, identity first
};

// Closure of the generators inside Sym(degree).
PermutationGroup permutation_group(const std::vector<Perm>& generators, std::size_t degree,
                                   std::string name = {});

// Sym(n) for 1 <= n <= 8.
PermutationGroup make_symmetric(std::size_t n);

// Action of G on the left cosets G/H; coset 0 is H itself, the rest are
// ordered by least element.
GroupAction coset_action(const Subgroup& h);

struct AutomorphismGroup {
  FiniteGroup group;          // composition (a*b)(x) = a(b(x))
  std::vector<GroupHom> maps;  // maps[i] realizes element i; identity first
};

AutomorphismGroup automorphism_group(const FiniteGroup& g);

// Plain-text format: "group <n>" then n rows of n indices.
std::string write_group_text(const FiniteGroup& g);
FiniteGroup read_group_text(std::istream& in);

}  // namespace fimag
