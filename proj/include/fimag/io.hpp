#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "fimag/codings.hpp"
#include "fimag/descent.hpp"
#include "fimag/galois.hpp"
#include "fimag/groupoid.hpp"
#include "fimag/kummer.hpp"

namespace fimag {

using Json = nlohmann::json;

// Group descriptions: {"table": rows}, {"cyclic": n}, {"dihedral": n},
// {"dicyclic": n}, {"symmetric": n}, {"alternating": n} or
// {"product": [desc, desc]}; "name" renames.
FiniteGroup group_from_json(const Json& j, const std::string& where = "group");
Json group_to_json(const FiniteGroup& g);

struct SpaceInstance {
  HomogeneousSpace space;
  std::optional<Elem> base;
};

struct GroupoidFile {
  SymGroupoid groupoid;
  NormalFamily n;
  NormalFamily n_minus;
};

using Instance = std::variant<GammaGroup, SpaceInstance, GroupoidFile, Relation, AmbientAction, Tower>;

// Dispatches on "kind": gamma-group, homogeneous-space, groupoid, relation,
// ambient-action or tower. Schema violations throw InputError naming the
// offending field; malformed JSON reports line and column.
Instance parse_instance(const std::string& text);
Instance read_instance_file(const std::string& path);
std::string instance_kind(const Instance& inst);

GammaGroup gamma_group_from_json(const Json& j);
SpaceInstance space_from_json(const Json& j);
GroupoidFile groupoid_from_json(const Json& j);
Relation relation_from_json(const Json& j);
AmbientAction ambient_from_json(const Json& j);
Tower tower_from_json(const Json& j);
// "tower N N' n"
Tower parse_tower_line(const std::string& line);

Json gamma_group_to_json(const GammaGroup& m);
Json groupoid_to_json(const SymGroupoid& g, const NormalFamily& n, const NormalFamily& n_minus);
Json relation_to_json(const Relation& r);
Json ambient_to_json(const AmbientAction& a);

Json code_to_json(const TwistCode& c);
TwistCode code_from_json(const Json& j);

}  // namespace fimag
