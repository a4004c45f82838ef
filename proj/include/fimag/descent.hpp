#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fimag/cohomology.hpp"

namespace fimag {

// A finite set X with a transitive G-action and a compatible Γ-action:
// σ(g·x) = σ(g)·σ(x). Γ-fixed points play the part of rational points.
class HomogeneousSpace {
 public:
  HomogeneousSpace(GammaGroup grp, GroupAction sym_action, GroupAction grp_action);
  static HomogeneousSpace trusted(GammaGroup grp, GroupAction sym_action, GroupAction grp_action);

  const FiniteGroup& sym() const { return grp_.gamma(); }
  const GammaGroup& grp() const { return grp_; }
  const GroupAction& sym_action() const { return sym_; }
  const GroupAction& grp_action() const { return gact_; }
  std::size_t points() const { return sym_.points(); }
  Elem sigma(Elem s, Elem x) const { return sym_.act(s, x); }
  Elem act(Elem g, Elem x) const { return gact_.act(g, x); }

 private:
  struct Trusted {};
  HomogeneousSpace(GammaGroup grp, GroupAction sym_action, GroupAction grp_action, Trusted);

  GammaGroup grp_;
  GroupAction sym_;
  GroupAction gact_;
};

std::vector<Elem> rational_points(const HomogeneousSpace& h);

// Orbits of G^Γ on the rational points, each sorted, ordered by least point.
std::vector<std::vector<Elem>> orbit_space(const HomogeneousSpace& h);

struct StabilizerModule {
  Subgroup stab;     // Stab(c) in G
  Embedded embedded; // Stab(c) as a group with its inclusion into G
  GammaGroup module; // Γ acting on Stab(c)
};

// Stab(c) with its Γ-action; c must be rational.
StabilizerModule stabilizer_module(const HomogeneousSpace& h, Elem c);

// a(σ) = g^-1 · σ(g) for the transporter g with g·c = v; values are indices
// into stabilizer_module(h, c).stab.members(). The one-argument form uses
// the least transporter.
Cocycle cocycle_of_point(const HomogeneousSpace& h, Elem c, Elem v);
Cocycle cocycle_via(const HomogeneousSpace& h, Elem c, Elem v, Elem g);

struct DescentReport {
  Elem base = 0;
  std::vector<std::vector<Elem>> orbits;
  std::size_t stab_order = 0;
  std::size_t stab_classes = 0;          // |H^1(Γ, Stab c)|
  std::size_t group_classes = 0;         // |H^1(Γ, G)|
  std::vector<std::size_t> kernel;       // classes of H^1(Γ, Stab c) dying in H^1(Γ, G)
  std::vector<std::size_t> matching;     // orbit -> class
  bool passed = false;
  std::string failure;                   // first violated check, empty on success
};

// Matches orbits of G^Γ on X^Γ with ker(H^1(Γ, Stab c) -> H^1(Γ, G)) and
// checks that the matching is well defined (over every point and every
// transporter), injective, and onto the kernel. Failures are reported in the
// result, not thrown. c must be rational.
DescentReport descent_report(const HomogeneousSpace& h, Elem c, std::uint64_t budget = kDefaultBudget);

// G/H with G acting on the left and σ(gH) = σ(g)H; H must be Γ-stable.
HomogeneousSpace coset_space(const GammaGroup& m, const Subgroup& h);

// The space twisted by a cocycle a: Γ -> G: σ*x = a(σ)·σ(x) and
// σ*g = a(σ) σ(g) a(σ)^-1.
HomogeneousSpace twist(const HomogeneousSpace& h, const Cocycle& a);

struct DescentFamilyOptions {
  std::size_t max_group = 12;  // |G|
  std::size_t max_sym = 6;     // |Γ|
  std::size_t max_points = 12; // |X|
};

struct DescentInstance {
  std::string label;
  HomogeneousSpace space;
};

// Deterministic exhaustive family: Γ among C1..C6, C2xC2, S3; G from
// small_group_catalog; every action of Γ on G; every Γ-stable H <= G; the
// coset space G/H twisted by one cocycle from each class of H^1(Γ, G).
// Returns the number of instances visited.
std::size_t for_each_descent_instance(const DescentFamilyOptions& opts,
                                      const std::function<void(const DescentInstance&)>& visit);

}  // namespace fimag
