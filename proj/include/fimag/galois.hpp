#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fimag/group.hpp"

namespace fimag {

// A finite group acting on a finite set of points.
class AmbientAction {
 public:
  explicit AmbientAction(GroupAction act, bool require_faithful = true);

  const GroupAction& action() const { return act_; }
  const FiniteGroup& group() const { return act_.group(); }
  std::size_t points() const { return act_.points(); }

 private:
  GroupAction act_;
};

// A single G-orbit, sorted.
struct IrrObject {
  std::vector<Elem> orbit;
  std::size_t size() const { return orbit.size(); }
  bool operator==(const IrrObject&) const = default;
};

// The G-orbits of size m, ordered by least point.
std::vector<IrrObject> irr_objects(const AmbientAction& a, std::size_t m);
std::vector<IrrObject> irr_objects(const AmbientAction& a);

// f[i] is the image of y.orbit[i], a point of x.
using OrbitMap = std::vector<Elem>;

// Maps y -> x with G-invariant graph, i.e. f(g·p) = g·f(p); sorted.
std::vector<OrbitMap> invariant_morphisms(const AmbientAction& a, const IrrObject& x, const IrrObject& y);

// g∘f for f: y -> x and g: x -> z.
OrbitMap compose_orbit_maps(const IrrObject& x, const OrbitMap& g, const OrbitMap& f);

struct RegularityTest {
  std::vector<Perm> h;      // invariant self-maps, as permutations of orbit positions
  bool order_matches = false;  // |H_s| = m
  bool transitive = false;
  bool regular = false;        // transitive and free
};

RegularityTest regularity_test(const AmbientAction& a, const IrrObject& s);

struct GalObject {
  IrrObject object;
  PermutationGroup h;    // H_s
  PermutationGroup gal;  // centralizer of H_s in Sym(s)
};

// Irreducible objects of size m whose invariant self-maps act regularly.
// Sizes above 8 exceed the permutation-group guard and throw BudgetError.
std::vector<GalObject> gal_objects(const AmbientAction& a, std::size_t m);
GalObject make_gal_object(const AmbientAction& a, const IrrObject& s);

// Orbits of Gal(s) on Gal(s)^k under simultaneous conjugation. Tuples are
// coded base |Gal| with the first entry most significant; each orbit sorted,
// orbits ordered by least member.
std::vector<std::vector<std::uint64_t>> conjugacy_power_sort(const GalObject& g, std::size_t k,
                                                             std::uint64_t budget = 1'000'000);

struct GalQuotient {
  Subgroup kernel;  // N: elements of G fixing the orbit pointwise
  Quotient quotient;
  GroupHom iso;     // G/N -> Gal(s)
};

// The map gN -> (g restricted to s), checked to be an isomorphism onto Gal(s).
GalQuotient verify_gal_quotient(const AmbientAction& a, const GalObject& g);

struct AmbientInstance {
  std::string label;
  AmbientAction ambient;
};

// Coset actions G/H for catalog groups of order <= max_order and subgroups of
// index <= max_points. Returns the number visited.
std::size_t for_each_coset_ambient(std::size_t max_order, std::size_t max_points,
                                   const std::function<void(const AmbientInstance&)>& visit);

// Disjoint union of two actions of the same group.
GroupAction disjoint_union(const GroupAction& a, const GroupAction& b);

}  // namespace fimag
