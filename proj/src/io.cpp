#include "fimag/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "fimag/catalog.hpp"
#include "fimag/error.hpp"
#include "fimag/linear.hpp"

namespace fimag {

namespace {

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(where + ": missing field '" + key + "'");
  return *it;
}

std::size_t as_size(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw InputError(where + ": expected a non-negative integer");
  return j.get<std::size_t>();
}

template <class T = Elem>
std::vector<T> as_elems(const Json& j, std::size_t bound, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array");
  std::vector<T> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::size_t v = as_size(j[i], where + "[" + std::to_string(i) + "]");
    if (v >= bound)
      throw InputError(where + "[" + std::to_string(i) + "]: value " + std::to_string(v) + " out of range (< " +
                       std::to_string(bound) + ")");
    out.push_back(static_cast<T>(v));
  }
  return out;
}

// rows x cols table, flattened row-major.
template <class T = Elem>
std::vector<T> as_table(const Json& j, std::size_t rows, std::size_t cols, std::size_t bound,
                        const std::string& where) {
  if (!j.is_array() || j.size() != rows)
    throw InputError(where + ": expected " + std::to_string(rows) + " rows");
  std::vector<T> out;
  out.reserve(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    auto row = as_elems<T>(j[r], bound, where + "[" + std::to_string(r) + "]");
    if (row.size() != cols)
      throw InputError(where + "[" + std::to_string(r) + "]: expected " + std::to_string(cols) + " entries");
    out.insert(out.end(), row.begin(), row.end());
  }
  return out;
}

template <class T>
Json rows_of(const std::vector<T>& flat, std::size_t cols) {
  Json out = Json::array();
  for (std::size_t i = 0; i < flat.size(); i += cols)
    out.push_back(std::vector<T>(flat.begin() + static_cast<long>(i), flat.begin() + static_cast<long>(i + cols)));
  return out;
}

}  // namespace

FiniteGroup group_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected an object");
  FiniteGroup g;
  if (j.contains("table")) {
    const auto& t = j["table"];
    if (!t.is_array() || t.empty()) throw InputError(where + ".table: expected a non-empty array of rows");
    std::size_t n = t.size();
    g = FiniteGroup::from_table(as_table(t, n, n, n, where + ".table"));
  } else if (j.contains("cyclic")) {
    g = make_cyclic(as_size(j["cyclic"], where + ".cyclic"));
  } else if (j.contains("dihedral")) {
    g = make_dihedral(as_size(j["dihedral"], where + ".dihedral"));
  } else if (j.contains("dicyclic")) {
    g = make_dicyclic(as_size(j["dicyclic"], where + ".dicyclic"));
  } else if (j.contains("symmetric")) {
    g = make_symmetric(as_size(j["symmetric"], where + ".symmetric")).group;
  } else if (j.contains("alternating")) {
    g = make_alternating(as_size(j["alternating"], where + ".alternating"));
  } else if (j.contains("product")) {
    const auto& p = j["product"];
    if (!p.is_array() || p.size() != 2) throw InputError(where + ".product: expected two group descriptions");
    g = direct_product(group_from_json(p[0], where + ".product[0]"), group_from_json(p[1], where + ".product[1]"));
  } else {
    throw InputError(where + ": expected one of table, cyclic, dihedral, dicyclic, symmetric, alternating, product");
  }
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw InputError(where + ".name: expected a string");
    g = g.renamed(j["name"].get<std::string>());
  }
  return g;
}

Json group_to_json(const FiniteGroup& g) {
  return Json{{"name", g.name()}, {"table", rows_of(g.table(), g.order())}};
}

GammaGroup gamma_group_from_json(const Json& j) {
  if (j.contains("gl")) {
    auto p = as_elems(field(j, "gl", "gamma-group"), 1u << 16, "gamma-group.gl");
    if (p.size() != 3) throw InputError("gamma-group.gl: expected [n, q, m]");
    return make_gl(p[0], p[1], p[2]);
  }
  FiniteGroup gamma = group_from_json(field(j, "gamma", "gamma-group"), "gamma-group.gamma");
  FiniteGroup coeff = group_from_json(field(j, "coeff", "gamma-group"), "gamma-group.coeff");
  const auto& act = field(j, "action", "gamma-group");
  if (act.is_string() && act.get<std::string>() == "trivial") return GammaGroup::trivial_action(gamma, coeff);
  return GammaGroup(gamma, coeff, as_table(act, gamma.order(), coeff.order(), coeff.order(), "gamma-group.action"));
}

Json gamma_group_to_json(const GammaGroup& m) {
  return Json{{"kind", "gamma-group"},
              {"gamma", group_to_json(m.gamma())},
              {"coeff", group_to_json(m.coeff())},
              {"action", rows_of(m.action(), m.coeff().order())}};
}

SpaceInstance space_from_json(const Json& j) {
  FiniteGroup gamma = group_from_json(field(j, "gamma", "homogeneous-space"), "homogeneous-space.gamma");
  FiniteGroup g = group_from_json(field(j, "group", "homogeneous-space"), "homogeneous-space.group");
  const auto& ga = field(j, "group_action", "homogeneous-space");
  GammaGroup m = ga.is_string() && ga.get<std::string>() == "trivial"
                     ? GammaGroup::trivial_action(gamma, g)
                     : GammaGroup(gamma, g, as_table(ga, gamma.order(), g.order(), g.order(), "homogeneous-space.group_action"));
  std::optional<HomogeneousSpace> space;
  if (j.contains("subgroup")) {
    space = coset_space(m, Subgroup(g, as_elems(j["subgroup"], g.order(), "homogeneous-space.subgroup")));
  } else {
    std::size_t k = as_size(field(j, "points", "homogeneous-space"), "homogeneous-space.points");
    auto pa = as_table(field(j, "point_action", "homogeneous-space"), gamma.order(), k, k, "homogeneous-space.point_action");
    auto tr = as_table(field(j, "translation", "homogeneous-space"), g.order(), k, k, "homogeneous-space.translation");
    space = HomogeneousSpace(m, GroupAction(gamma, k, pa), GroupAction(g, k, tr));
  }
  if (j.contains("twist"))
    space = twist(*space, Cocycle(m, as_elems(j["twist"], g.order(), "homogeneous-space.twist")));
  SpaceInstance out{*space, std::nullopt};
  if (j.contains("base")) out.base = static_cast<Elem>(as_size(j["base"], "homogeneous-space.base"));
  return out;
}

GroupoidFile groupoid_from_json(const Json& j) {
  const std::string w = "groupoid";
  FiniteGroup sym = group_from_json(field(j, "sym", w), w + ".sym");
  std::size_t n = as_size(field(j, "objects", w), w + ".objects");
  auto src = as_elems(field(j, "src", w), n, w + ".src");
  std::size_t m = src.size();
  auto dst = as_elems(field(j, "dst", w), n, w + ".dst");
  if (dst.size() != m) throw InputError(w + ".dst: length differs from src");
  const auto& cj = field(j, "comp", w);
  if (!cj.is_array() || cj.size() != m) throw InputError(w + ".comp: expected " + std::to_string(m) + " rows");
  std::vector<Mor> comp;
  comp.reserve(m * m);
  for (std::size_t r = 0; r < m; ++r) {
    const auto& row = cj[r];
    if (!row.is_array() || row.size() != m)
      throw InputError(w + ".comp[" + std::to_string(r) + "]: expected " + std::to_string(m) + " entries");
    for (std::size_t c = 0; c < m; ++c) {
      const auto& v = row[c];
      if (!v.is_number_integer() || v.get<long long>() < -1 || v.get<long long>() >= static_cast<long long>(m))
        throw InputError(w + ".comp[" + std::to_string(r) + "][" + std::to_string(c) + "]: expected -1 or a morphism");
      long long x = v.get<long long>();
      comp.push_back(x < 0 ? kNoMor : static_cast<Mor>(x));
    }
  }
  auto oa = as_table(field(j, "obj_action", w), sym.order(), n, n, w + ".obj_action");
  auto ma = as_table<Mor>(field(j, "mor_action", w), sym.order(), m, m, w + ".mor_action");
  SymGroupoid g(sym, n, src, dst, comp, oa, ma);
  auto family = [&](const char* key) {
    if (!j.contains(key)) return NormalFamily::trivial(g);
    const auto& fj = j[key];
    if (!fj.is_array() || fj.size() != n)
      throw InputError(w + "." + key + ": expected one member list per object");
    std::vector<std::vector<Mor>> members;
    for (std::size_t a = 0; a < n; ++a) {
      members.push_back(as_elems<Mor>(fj[a], m, w + "." + key + "[" + std::to_string(a) + "]"));
    }
    return NormalFamily(g, members);
  };
  auto nf = family("normal");
  auto nm = family("normal_minus");
  return GroupoidFile{g, nf, nm};
}

Json groupoid_to_json(const SymGroupoid& g, const NormalFamily& n, const NormalFamily& n_minus) {
  const std::size_t m = g.morphisms();
  Json comp = Json::array();
  for (std::size_t r = 0; r < m; ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m; ++c) {
      Mor x = g.compose(static_cast<Mor>(r), static_cast<Mor>(c));
      row.push_back(x == kNoMor ? -1 : static_cast<long long>(x));
    }
    comp.push_back(std::move(row));
  }
  return Json{{"kind", "groupoid"},
              {"sym", group_to_json(g.sym())},
              {"objects", g.objects()},
              {"src", g.src_table()},
              {"dst", g.dst_table()},
              {"comp", comp},
              {"obj_action", rows_of(g.obj_action(), g.objects())},
              {"mor_action", rows_of(g.mor_action(), m)},
              {"normal", n.members()},
              {"normal_minus", n_minus.members()}};
}

Relation relation_from_json(const Json& j) {
  const auto& rows = field(j, "rows", "relation");
  if (!rows.is_array()) throw InputError("relation.rows: expected an array of 0/1 rows");
  Relation r;
  r.m1 = rows.size();
  if (r.m1 == 0) {
    r.m2 = j.contains("m2") ? as_size(j["m2"], "relation.m2") : 0;
    return r;
  }
  r.m2 = rows[0].is_array() ? rows[0].size() : 0;
  r.cells.assign(r.m1 * r.m2, false);
  auto t = as_table(rows, r.m1, r.m2, 2, "relation.rows");
  for (std::size_t i = 0; i < t.size(); ++i) r.cells[i] = t[i] != 0;
  return r;
}

Json relation_to_json(const Relation& r) {
  Json rows = Json::array();
  for (std::size_t a = 0; a < r.m1; ++a) {
    Json row = Json::array();
    for (std::size_t b = 0; b < r.m2; ++b) row.push_back(r(a, b) ? 1 : 0);
    rows.push_back(std::move(row));
  }
  return Json{{"kind", "relation"}, {"m2", r.m2}, {"rows", rows}};
}

AmbientAction ambient_from_json(const Json& j) {
  FiniteGroup g = group_from_json(field(j, "group", "ambient-action"), "ambient-action.group");
  bool faithful = true;
  if (j.contains("faithful")) {
    if (!j["faithful"].is_boolean()) throw InputError("ambient-action.faithful: expected a boolean");
    faithful = j["faithful"].get<bool>();
  }
  if (j.contains("coset")) return AmbientAction(coset_action(Subgroup(g, as_elems(j["coset"], g.order(), "ambient-action.coset"))), faithful);
  std::size_t k = as_size(field(j, "points", "ambient-action"), "ambient-action.points");
  return AmbientAction(GroupAction(g, k, as_table(field(j, "action", "ambient-action"), g.order(), k, k, "ambient-action.action")), faithful);
}

Json ambient_to_json(const AmbientAction& a) {
  return Json{{"kind", "ambient-action"},
              {"group", group_to_json(a.group())},
              {"points", a.points()},
              {"action", rows_of(a.action().table(), a.points())},
              {"faithful", a.action().is_faithful()}};
}

Tower tower_from_json(const Json& j) {
  if (j.contains("line")) {
    if (!j["line"].is_string()) throw InputError("tower.line: expected a string");
    return parse_tower_line(j["line"].get<std::string>());
  }
  return make_tower(as_size(field(j, "N", "tower"), "tower.N"), as_size(field(j, "Nprime", "tower"), "tower.Nprime"),
                    as_size(field(j, "n", "tower"), "tower.n"));
}

Tower parse_tower_line(const std::string& line) {
  std::istringstream in(line);
  std::string word;
  long long a = 0, b = 0, c = 0;
  if (!(in >> word) || word != "tower" || !(in >> a >> b >> c) || a < 1 || b < 1 || c < 1)
    throw InputError("tower line: expected 'tower N N' n' with positive integers");
  std::string rest;
  if (in >> rest) throw InputError("tower line: trailing text '" + rest + "'");
  return make_tower(static_cast<std::size_t>(a), static_cast<std::size_t>(b), static_cast<std::size_t>(c));
}

Instance parse_instance(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("instance: malformed JSON: ") + e.what());
  }
  const auto& k = field(j, "kind", "instance");
  if (!k.is_string()) throw InputError("instance.kind: expected a string");
  const std::string kind = k.get<std::string>();
  try {
    if (kind == "gamma-group") return gamma_group_from_json(j);
    if (kind == "homogeneous-space") return space_from_json(j);
    if (kind == "groupoid") return groupoid_from_json(j);
    if (kind == "relation") return relation_from_json(j);
    if (kind == "ambient-action") return ambient_from_json(j);
    if (kind == "tower") return tower_from_json(j);
  } catch (const Json::exception& e) {
    throw InputError("instance (" + kind + "): " + e.what());
  }
  throw InputError("instance.kind: unknown kind '" + kind + "'");
}

Instance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  // A bare tower line is accepted as well.
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text.compare(first, 5, "tower") == 0) return parse_tower_line(text.substr(first));
  return parse_instance(text);
}

std::string instance_kind(const Instance& inst) {
  static const char* names[] = {"gamma-group", "homogeneous-space", "groupoid", "relation", "ambient-action", "tower"};
  return names[inst.index()];
}

Json code_to_json(const TwistCode& c) {
  Json out = Json::array();
  for (auto [x, v] : c.graph()) out.push_back({x, v});
  return out;
}

TwistCode code_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("code: expected an array of pairs");
  std::vector<std::pair<Elem, Elem>> g;
  for (std::size_t i = 0; i < j.size(); ++i) {
    auto p = as_elems(j[i], std::numeric_limits<Elem>::max(), "code[" + std::to_string(i) + "]");
    if (p.size() != 2) throw InputError("code[" + std::to_string(i) + "]: expected a pair");
    g.emplace_back(p[0], p[1]);
  }
  return TwistCode(std::move(g));
}

}  // namespace fimag
