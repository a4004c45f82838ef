#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fimag/descent.hpp"

namespace fimag {

using Mor = std::uint32_t;
inline constexpr Mor kNoMor = static_cast<Mor>(-1);
inline constexpr std::size_t kMaxMorphisms = 2048;

// A finite connected groupoid with a group Σ acting on objects and
// morphisms by functors. Morphisms carry global indices 0..M-1.
class SymGroupoid {
 public:
  // comp[g * M + f] = g∘f whenever dst(f) = src(g), kNoMor otherwise.
  // Validates category laws, invertibility, connectedness and the Σ-action.
  SymGroupoid(FiniteGroup sym, std::size_t objects, std::vector<Elem> src, std::vector<Elem> dst,
              std::vector<Mor> comp, std::vector<Elem> obj_action, std::vector<Mor> mor_action);
  static SymGroupoid trusted(FiniteGroup sym, std::size_t objects, std::vector<Elem> src, std::vector<Elem> dst,
                             std::vector<Mor> comp, std::vector<Elem> obj_action, std::vector<Mor> mor_action);

  const FiniteGroup& sym() const { return d_->sym; }
  std::size_t objects() const { return d_->n; }
  std::size_t morphisms() const { return d_->src.size(); }
  Elem src(Mor f) const { return d_->src[f]; }
  Elem dst(Mor f) const { return d_->dst[f]; }
  // g∘f; kNoMor when not composable.
  Mor compose(Mor g, Mor f) const { return d_->comp[static_cast<std::size_t>(g) * morphisms() + f]; }
  Mor id(Elem a) const { return d_->ids[a]; }
  Mor inverse(Mor f) const { return d_->inv[f]; }
  // Mor(a,b), sorted.
  const std::vector<Mor>& hom(Elem a, Elem b) const { return d_->hom[static_cast<std::size_t>(a) * objects() + b]; }
  const std::vector<Mor>& aut(Elem a) const { return hom(a, a); }
  Elem act_obj(Elem s, Elem a) const { return d_->obj_action[static_cast<std::size_t>(s) * objects() + a]; }
  Mor act_mor(Elem s, Mor f) const { return d_->mor_action[static_cast<std::size_t>(s) * morphisms() + f]; }

  const std::vector<Elem>& src_table() const { return d_->src; }
  const std::vector<Elem>& dst_table() const { return d_->dst; }
  const std::vector<Mor>& comp_table() const { return d_->comp; }
  const std::vector<Elem>& obj_action() const { return d_->obj_action; }
  const std::vector<Mor>& mor_action() const { return d_->mor_action; }

 private:
  struct Data {
    FiniteGroup sym;
    std::size_t n;
    std::vector<Elem> src, dst;
    std::vector<Mor> comp;
    std::vector<Elem> obj_action;
    std::vector<Mor> mor_action;
    std::vector<Mor> ids, inv;
    std::vector<std::vector<Mor>> hom;
  };
  explicit SymGroupoid(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  static std::shared_ptr<Data> build(FiniteGroup sym, std::size_t objects, std::vector<Elem> src,
                                     std::vector<Elem> dst, std::vector<Mor> comp, std::vector<Elem> obj_action,
                                     std::vector<Mor> mor_action);
  std::shared_ptr<const Data> d_;
};

// The groupoid of a homogeneous space: objects are points, Mor(x,y) =
// {g : g·x = y}; the morphism (g, x) has index g * |X| + x.
SymGroupoid action_groupoid(const HomogeneousSpace& h);

// Objects (resp. morphisms) fixed by every element of the subgroup.
std::vector<Elem> fixed_objects(const SymGroupoid& g, const Subgroup& level);
bool is_fixed(const SymGroupoid& g, const Subgroup& level, Mor f);

// Σ'-fixed objects partitioned by existence of a Σ'-fixed morphism; each
// class sorted, classes ordered by least object.
std::vector<std::vector<Elem>> iso_classes(const SymGroupoid& g, const Subgroup& level);

// A normal subgroup N_a of each Aut(a), coherent under transport and
// Σ-stable. Members are morphism indices, sorted.
class NormalFamily {
 public:
  NormalFamily(const SymGroupoid& g, std::vector<std::vector<Mor>> members);
  static NormalFamily trivial(const SymGroupoid& g);
  static NormalFamily full(const SymGroupoid& g);
  // Transport of a normal subgroup of Aut(a): N_b = f N f^-1 for any f: a -> b.
  static NormalFamily transported(const SymGroupoid& g, Elem a, const std::vector<Mor>& n);

  const std::vector<Mor>& at(Elem a) const { return members_[a]; }
  bool contains(Elem a, Mor f) const;
  std::size_t order() const { return members_.empty() ? 0 : members_[0].size(); }
  const std::vector<std::vector<Mor>>& members() const { return members_; }

 private:
  NormalFamily() = default;
  std::vector<std::vector<Mor>> members_;
};

struct QuotientGroupoid {
  SymGroupoid groupoid;
  std::vector<Mor> projection;  // morphism -> class, classes numbered by least member
};

// Mor(a,b)/N: f ~ n∘f for n in N_b.
QuotientGroupoid quotient_groupoid(const SymGroupoid& g, const NormalFamily& n);

// For abelian automorphism groups: table[a * objects + b][i] = f∘aut(a)[i]∘f^-1,
// the same for every f in Mor(a,b) (checked).
std::vector<std::vector<Mor>> canonical_transport(const SymGroupoid& g);

// A set Y with a simply transitive action of an abelian group A.
struct Torsor {
  FiniteGroup group;
  std::size_t points = 0;
  std::vector<Elem> action;  // action[a * points + y] = a·y

  Elem act(Elem a, Elem y) const { return action[static_cast<std::size_t>(a) * points + y]; }
  // The unique a with a·y = x.
  Elem difference(Elem x, Elem y) const;
};

// Checks abelian group and simple transitivity.
void validate_torsor(const Torsor& y);

// y0 + |S|^-1 · Σ_s (s - y0); the base point defaults to the least point.
Elem torsor_average(const Torsor& y, const std::vector<Elem>& s, std::optional<Elem> base = std::nullopt);

// A torsor with compatible actions of a group Σ on A and on Y:
// σ(a·y) = σ(a)·σ(y).
struct SymTorsor {
  Torsor torsor;
  GammaGroup module;  // Σ acting on A
  GroupAction points; // Σ acting on Y
};

void validate_sym_torsor(const SymTorsor& y);

// Given a subgroup B <= A (playing N^-) with gcd(|Σ|, |B|) = 1 and a point
// q whose B-orbit is Σ-stable, returns a Σ-fixed point in that orbit,
// built from coprime_splitting of the translation cocycle σ -> σ(q) - q.
Elem lift_fixed_point(const SymTorsor& y, const Subgroup& b, Elem q);

struct Functor {
  std::vector<Elem> objects;  // object map
  std::vector<Mor> morphisms; // morphism map
};

struct LevelVerdict {
  std::vector<Elem> level;            // members of Σ'
  std::size_t source_classes = 0;
  std::size_t target_classes = 0;
  std::vector<std::size_t> class_map; // source class -> target class
  bool injective = false;
  bool surjective = false;
  std::string witness;                // a violating pair when a flag is false
};

struct ReductionCertificate {
  std::string step;
  bool functorial = false;
  bool equivariant = false;
  std::vector<LevelVerdict> levels;   // one per subgroup of Σ, in all_subgroups order

  bool all_injective() const;
  bool all_surjective() const;
};

// Checks that F is a Σ-equivariant functor and computes, for every subgroup
// Σ' of Σ, the map Iso(source, Σ') -> Iso(target, Σ').
ReductionCertificate certify_functor(const std::string& step, const SymGroupoid& source,
                                     const SymGroupoid& target, const Functor& f);

struct PipelineResult {
  Elem base = 0;                        // lowest Σ-fixed object
  std::vector<Mor> section;             // c(a) in the quotient by N, per object
  SymGroupoid gamma1, gamma2, gamma3;
  ReductionCertificate step1;           // Γ1 -> Γ (inclusion)
  ReductionCertificate step2;           // Γ1 -> Γ2 = Γ1/N^-
  ReductionCertificate step3;           // Γ2 -> Γ3 (objects relabeled)
  std::size_t lifts = 0;                // fixed morphisms produced by lift_fixed_point
  std::vector<std::pair<std::size_t, std::size_t>> composite;  // |Iso(Γ,Σ')|, |Iso(Γ3,Σ')|

  bool passed() const;
};

// The three-step reduction. Requires abelian automorphism groups,
// N^- <= N, gcd(|Σ|, |N^-_a|) = 1 and gcd(|Σ|, |Aut_a/N_a|) = 1, and a
// Σ-fixed object. Guard failures throw InputError naming the offending pair.
PipelineResult reduce_pipeline(const SymGroupoid& g, const NormalFamily& n, const NormalFamily& n_minus);

struct GroupoidInstance {
  std::string label;
  SymGroupoid groupoid;
  NormalFamily n;
  NormalFamily n_minus;
};

// Seeded random instances satisfying the pipeline guards: action groupoids
// of twisted coset spaces G/T with T abelian and Σ-stable, N and N^- taken
// from Σ-stable subgroups of T and transported to every object.
std::vector<GroupoidInstance> random_groupoid_instances(std::size_t count, std::uint64_t seed);

}  // namespace fimag
