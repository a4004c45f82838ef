// fimag: command-line front end.
// Exit codes: 0 success, 1 check failure, 2 input error, 3 budget exceeded.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "fimag/acceptance.hpp"
#include "fimag/error.hpp"
#include "fimag/report.hpp"

using namespace fimag;

namespace {

struct Options {
  bool json = false;
  std::uint64_t budget = kDefaultBudget;
  std::uint64_t seed = 2024;
};

template <class T>
T load(const std::string& path, const char* kind) {
  Instance inst = read_instance_file(path);
  if (!std::holds_alternative<T>(inst))
    throw InputError(path + ": expected a " + std::string(kind) + " instance, got " + instance_kind(inst));
  return std::get<T>(std::move(inst));
}

std::string yes(bool b) { return b ? "yes" : "no"; }

std::string list(const Json& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].dump();
  return s + "}";
}

// Prints the report and returns the exit status it implies.
int emit(const Options& o, const Json& j, const std::function<void(const Json&)>& text) {
  if (o.json) std::cout << j.dump(2) << "\n";
  else text(j);
  return j.contains("passed") && !j["passed"].get<bool>() ? 1 : 0;
}

void print_h1(const Json& j) {
  std::cout << "Z1=" << j["z1"] << " H1=" << j["h1"] << "\n";
  for (const auto& c : j["classes"])
    std::cout << "class " << c["class"] << " size=" << c["size"] << " rep=" << c["representative"].dump() << "\n";
  if (!j.contains("factor")) return;
  for (const auto& f : j["factor"])
    std::cout << "factor class " << f["class"] << ": |G0|=" << f["g0"] << " |G1|=" << f["g1"] << " |G2|=" << f["g2"]
              << " index=" << f["index"] << " bound=" << f["bound"]
              << (f["within_bound"].get<bool>() ? " ok" : " EXCEEDED") << "\n";
}

void print_descent(const Json& j) {
  if (j.contains("message")) {
    std::cout << j["message"].get<std::string>() << "\n";
    return;
  }
  std::cout << "orbits=" << j["orbit_count"] << " kernel=" << j["kernel"].size() << " "
            << (j["passed"].get<bool>() ? "PASS" : "FAIL") << "\n";
  std::cout << "base=" << j["base"] << " |Stab|=" << j["stab_order"] << " H1(Stab)=" << j["stab_classes"]
            << " H1(G)=" << j["group_classes"] << "\n";
  for (std::size_t i = 0; i < j["orbits"].size(); ++i)
    std::cout << "orbit " << list(j["orbits"][i]) << " -> class " << j["matching"][i] << "\n";
  if (j.contains("failure")) std::cout << "failure: " << j["failure"].get<std::string>() << "\n";
}

void print_groupoid(const Json& j) {
  std::cout << "sym=" << j["sym"].get<std::string>() << " objects=" << j["objects"] << " morphisms=" << j["morphisms"]
            << " |N|=" << j["n_order"] << " |N-|=" << j["n_minus_order"] << "\n";
  for (const auto& l : j["levels"]) std::cout << "level " << list(l["level"]) << ": classes=" << l["classes"] << "\n";
  if (!j.contains("pipeline")) return;
  const auto& p = j["pipeline"];
  std::cout << "pipeline base=" << p["base"] << " lifts=" << p["lifts"] << " objects=" << p["objects"].dump() << "\n";
  int k = 1;
  for (const auto& s : p["steps"])
    std::cout << "step" << k++ << " " << s["step"].get<std::string>() << ": functorial=" << yes(s["functorial"].get<bool>())
              << " equivariant=" << yes(s["equivariant"].get<bool>()) << " injective=" << yes(s["injective"].get<bool>())
              << " surjective=" << yes(s["surjective"].get<bool>()) << "\n";
  std::cout << "composite " << p["composite"].dump() << "\n" << (j["passed"].get<bool>() ? "PASS" : "FAIL") << "\n";
}

void print_sorts(const Json& j) {
  for (const auto& e : j["objects"]) {
    if (e["galois"].get<bool>()) {
      std::cout << "galois m=" << e["size"] << " Gal=" << e["gal"].get<std::string>() << " |N|=" << e["kernel_order"];
      if (e.contains("conjugacy_orbits")) std::cout << " orbits(Gal^" << j["power"] << ")=" << e["conjugacy_orbits"];
      std::cout << "\n";
    } else {
      std::cout << "irreducible m=" << e["size"] << " |H|=" << e["h_order"] << " not galois\n";
    }
  }
}

void print_kummer(const Json& j) {
  std::cout << j["tower"].get<std::string>() << " |Aut|=" << j["aut_order"] << " ("
            << j["aut"].get<std::string>() << ") ramified=" << j["ramified_order"]
            << " cyclotomic=" << j["cyclotomic_order"] << " decomposition=" << yes(j["decomposition"].get<bool>())
            << " residue=" << (j["residue"]["bijective"].get<bool>() ? "bijective" : "NOT bijective") << "\n";
  if (j.contains("claim3")) {
    const auto& c = j["claim3"];
    if (c["passed"].get<bool>()) std::cout << "iso verified order=" << c["aut_order"] << "\n";
    else std::cout << "iso FAILED aut=" << c["aut_order"] << " hom=" << c["hom_order"] << "\n";
  }
  if (j.contains("pairing")) {
    const auto& p = j["pairing"];
    std::cout << "pairing pairs=" << p["pairs"] << " seed=" << p["seed"] << " "
              << (p["passed"].get<bool>() ? "PASS" : "FAIL") << "\n";
  }
}

mpq_class parse_rational(const std::string& s) {
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0 || q.get_den() == 0) throw InputError("not a rational number: '" + s + "'");
  q.canonicalize();
  return q;
}

int run(int argc, char** argv) {
  Options o;
  CLI::App app{"Finite models of Galois descent, groupoid reduction and Kummer towers"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", o.json, "Emit a JSON report");
  app.add_option("--budget", o.budget, "Enumeration cap for exhaustive searches")->capture_default_str();
  app.add_option("--seed", o.seed, "Seed for randomized checks")->capture_default_str();

  std::string path;
  bool factor = false, pipeline = false, claim3 = false;
  std::size_t power = 1, pairs = 0;
  int status = 0;

  auto* h1c = app.add_subcommand("h1", "Z1 and H1 of a gamma-group file");
  h1c->add_option("file", path)->required();
  h1c->add_flag("--factor", factor, "Factor each class representative through a finite level");
  h1c->callback([&] { status = emit(o, h1_report(load<GammaGroup>(path, "gamma-group"), factor, o.budget), print_h1); });

  auto* dc = app.add_subcommand("descent", "Orbits of rational points against ker H1(Stab) -> H1(G)");
  dc->add_option("file", path)->required();
  dc->callback([&] { status = emit(o, descent_json(load<SpaceInstance>(path, "homogeneous-space"), o.budget), print_descent); });

  auto* gc = app.add_subcommand("groupoid", "Iso classes per level; --pipeline runs the three-step reduction");
  gc->add_option("file", path)->required();
  gc->add_flag("--pipeline", pipeline, "Run the reduction and print the certificate chain");
  gc->callback([&] { status = emit(o, groupoid_report(load<GroupoidFile>(path, "groupoid"), pipeline), print_groupoid); });

  auto* sc = app.add_subcommand("sorts", "Irreducible and Galois objects of an ambient action");
  sc->add_option("file", path)->required();
  sc->add_option("--power", power, "k for the conjugacy sort on Gal^k (0 skips it)")->capture_default_str();
  sc->callback([&] { status = emit(o, sorts_report(load<AmbientAction>(path, "ambient-action"), power, o.budget), print_sorts); });

  auto* kc = app.add_subcommand("kummer", "Automorphisms of the tower N | N', adjoining t^(1/n)");
  std::size_t kn = 1, knp = 1, kr = 1;
  kc->add_option("N", kn)->required();
  kc->add_option("Nprime", knp)->required();
  kc->add_option("n", kr)->required();
  kc->add_flag("--claim3", claim3, "Verify Aut(L'/K_u) = Hom(Γ(L')/Γ(K), μ_n)");
  kc->add_option("--pairs", pairs, "Random monomial pairs for the pairing check")->capture_default_str();
  kc->callback([&] { status = emit(o, kummer_report(make_tower(kn, knp, kr), claim3, pairs, o.seed), print_kummer); });

  auto* cc = app.add_subcommand("code", "Canonical codings");
  cc->require_subcommand(1);
  auto* fv = cc->add_subcommand("fv", "Rectangle decomposition of a relation file");
  fv->add_option("file", path)->required();
  fv->callback([&] {
    status = emit(o, fv_report(load<Relation>(path, "relation")), [](const Json& j) {
      std::cout << "atoms=" << j["atoms"] << "\n";
      for (const auto& r : j["rectangles"]) std::cout << list(r["left"]) << " x " << list(r["atom"]) << "\n";
    });
  });
  std::size_t sn = 1;
  std::vector<std::size_t> nums;
  auto* st = cc->add_subcommand("stab", "Y = H with its stabilizer in (Z/n)^*");
  st->add_option("n", sn)->required();
  st->add_option("members", nums, "Elements of H")->required();
  st->callback([&] {
    status = emit(o, stabilizer_report(sn, nums), [](const Json& j) {
      std::cout << "Y=" << list(j["y"]) << " stabilizer=" << list(j["stabilizer"]) << "\n";
    });
  });
  std::vector<std::string> words;
  auto* ga = cc->add_subcommand("gamma", "Image and ranks of a rational-valued function");
  ga->add_option("values", words, "h(0) h(1) ...");
  ga->callback([&] {
    std::vector<mpq_class> h;
    for (const auto& w : words) h.push_back(parse_rational(w));
    status = emit(o, gamma_code_report(h), [](const Json& j) {
      std::string im;
      for (const auto& q : j["image"]) im += (im.empty() ? "" : ",") + q.get<std::string>();
      std::cout << "image={" << im << "} ranks=" << list(j["ranks"]) << "\n";
    });
  });
  auto* rk = cc->add_subcommand("rank", "Ranks as down-sets of F_p");
  rk->add_option("ranks", nums);
  rk->callback([&] {
    status = emit(o, rank_report(nums), [](const Json& j) {
      std::cout << "p=" << j["p"] << "\n";
      for (const auto& s : j["sets"]) std::cout << list(s) << "\n";
    });
  });
  std::size_t cd = 1, ck = 1;
  auto* cv = cc->add_subcommand("cover", "The cover (b, a_1..a_k) -> (b^a_1..b^a_k) of C_d^k");
  cv->add_option("d", cd)->required();
  cv->add_option("k", ck)->required();
  cv->callback([&] {
    status = emit(o, cover_report(cd, ck), [](const Json& j) {
      std::cout << "d=" << j["d"] << " k=" << j["k"] << " domain=" << j["domain"] << " targets=" << j["targets"]
                << " surjective=" << yes(j["surjective"].get<bool>()) << "\n";
    });
  });

  auto* tc = app.add_subcommand("selftest", "Run the acceptance criteria");
  std::string scale_text;
  std::vector<int> only;
  tc->add_option("scale", scale_text, "small or full")->required();
  tc->add_option("--only", only, "Criterion ids to run");
  tc->callback([&] {
    Scale scale = parse_scale(scale_text);
    double total = 0;
    auto results = run_acceptance(scale, only, [&](const CriterionResult& r) {
      total += r.seconds;
      if (o.json) return;
      std::printf("%s %2d %-28s %8.2fs  %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                  r.detail.c_str());
      std::fflush(stdout);
    });
    Json j = acceptance_to_json(scale, results);
    if (o.json) std::cout << j.dump(2) << "\n";
    else std::printf("total %.2fs\n", total);
    status = j["passed"].get<bool>() ? 0 : 1;
  });

  auto* pc = app.add_subcommand("check", "Validate an instance file and print its kind");
  pc->add_option("file", path)->required();
  pc->callback([&] {
    auto kind = instance_kind(read_instance_file(path));
    if (o.json) std::cout << Json{{"command", "check"}, {"kind", kind}, {"valid", true}}.dump(2) << "\n";
    else std::cout << kind << " ok\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const CheckFailure& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
