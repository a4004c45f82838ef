#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fimag/acceptance.hpp"
#include "fimag/error.hpp"
#include "fimag/report.hpp"

namespace py = pybind11;
using namespace fimag;

namespace {

template <class T>
T as_kind(const std::string& text, const char* kind) {
  Instance inst = parse_instance(text);
  if (!std::holds_alternative<T>(inst))
    throw InputError("expected a " + std::string(kind) + " instance, got " + instance_kind(inst));
  return std::get<T>(std::move(inst));
}

TwistCode code_of(const std::map<Elem, Elem>& m) { return TwistCode({m.begin(), m.end()}); }

std::map<Elem, Elem> map_of(const TwistCode& c) { return {c.graph().begin(), c.graph().end()}; }

std::vector<mpq_class> rationals(const std::vector<std::string>& words) {
  std::vector<mpq_class> out;
  for (const auto& w : words) {
    mpq_class q;
    if (w.empty() || q.set_str(w, 10) != 0 || q.get_den() == 0) throw InputError("not a rational number: '" + w + "'");
    q.canonicalize();
    out.push_back(q);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_fimag, m) {
  m.doc() = "Native core of the fimag package; reports are returned as JSON text.";

  static py::exception<Error> error(m, "Error");
  static py::exception<InputError> input_error(m, "InputError", error.ptr());
  static py::exception<BudgetError> budget_error(m, "BudgetError", error.ptr());
  static py::exception<CheckFailure> check_failure(m, "CheckFailure", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InputError& e) {
      py::set_error(input_error, e.what());
    } catch (const BudgetError& e) {
      py::set_error(budget_error, e.what());
    } catch (const CheckFailure& e) {
      py::set_error(check_failure, e.what());
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  m.attr("DEFAULT_BUDGET") = kDefaultBudget;

  m.def("instance_kind", [](const std::string& text) { return instance_kind(parse_instance(text)); });

  m.def(
      "h1_report",
      [](const std::string& text, bool factor, std::uint64_t budget) {
        return h1_report(as_kind<GammaGroup>(text, "gamma-group"), factor, budget).dump();
      },
      py::arg("text"), py::arg("factor") = false, py::arg("budget") = kDefaultBudget);
  m.def(
      "descent_report",
      [](const std::string& text, std::uint64_t budget) {
        return descent_json(as_kind<SpaceInstance>(text, "homogeneous-space"), budget).dump();
      },
      py::arg("text"), py::arg("budget") = kDefaultBudget);
  m.def(
      "groupoid_report",
      [](const std::string& text, bool pipeline) {
        return groupoid_report(as_kind<GroupoidFile>(text, "groupoid"), pipeline).dump();
      },
      py::arg("text"), py::arg("pipeline") = false);
  m.def(
      "sorts_report",
      [](const std::string& text, std::size_t power, std::uint64_t budget) {
        return sorts_report(as_kind<AmbientAction>(text, "ambient-action"), power, budget).dump();
      },
      py::arg("text"), py::arg("power") = 1, py::arg("budget") = 1'000'000);
  m.def(
      "kummer_report",
      [](std::size_t n, std::size_t nprime, std::size_t ram, bool claim3, std::size_t pairs, std::uint64_t seed) {
        return kummer_report(make_tower(n, nprime, ram), claim3, pairs, seed).dump();
      },
      py::arg("N"), py::arg("Nprime"), py::arg("n"), py::arg("claim3") = true, py::arg("pairs") = 0,
      py::arg("seed") = 2024);

  m.def("embed_pair_twist", [](const std::map<Elem, Elem>& h, std::size_t s2) {
    auto [a, b] = embed_pair_twist(code_of(h), s2);
    return std::pair{map_of(a), map_of(b)};
  });
  m.def("decode_pair_twist", [](const std::map<Elem, Elem>& a, const std::map<Elem, Elem>& b, std::size_t s2) {
    return map_of(decode_pair_twist(code_of(a), code_of(b), s2));
  });
  m.def("embed_twist_by_power", [](const std::map<Elem, Elem>& x, std::size_t d, std::size_t k) {
    return map_of(embed_twist_by_power(code_of(x), CyclicPowerCover(make_cyclic(d), k)));
  });
  m.def("decode_twist_by_power", [](const std::map<Elem, Elem>& y, std::size_t d, std::size_t k) {
    return map_of(decode_twist_by_power(code_of(y), CyclicPowerCover(make_cyclic(d), k)));
  });
  m.def(
      "code_gamma_function",
      [](const std::vector<std::string>& values) {
        auto c = code_gamma_function(rationals(values));
        std::vector<std::string> image;
        for (const auto& q : c.image) image.push_back(q.get_str());
        return std::pair{image, c.ranks};
      },
      "Values are rationals written as 'a/b'; returns (sorted image, ranks).");
  m.def("decode_gamma_function", [](const std::vector<std::string>& image, const std::vector<std::size_t>& ranks) {
    std::vector<std::string> out;
    for (const auto& q : decode_gamma_function(GammaCode{rationals(image), ranks})) out.push_back(q.get_str());
    return out;
  });
  m.def("rank_as_prime_field_map", &rank_as_prime_field_map, py::arg("ranks"), py::arg("p") = py::none());
  m.def("decode_rank_map", &decode_rank_map);
  m.def("least_prime_at_least", &least_prime_at_least);
  m.def("subgroup_stabilizer_code", [](std::size_t n, const std::vector<std::size_t>& h) {
    auto c = subgroup_stabilizer_code(n, h);
    return std::pair{c.y, c.stabilizer};
  });
  m.def("fv_decompose", [](const std::vector<std::vector<int>>& rows, std::size_t m2) {
    Relation r{rows.size(), rows.empty() ? m2 : rows[0].size(), {}};
    for (const auto& row : rows) {
      require(row.size() == r.m2, "fv_decompose: rows have different lengths");
      for (int v : row) {
        require(v == 0 || v == 1, "fv_decompose: entries must be 0 or 1");
        r.cells.push_back(v == 1);
      }
    }
    std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> out;
    for (const auto& p : fv_decompose(r).parts) out.emplace_back(p.left, p.atom);
    return out;
  }, py::arg("rows"), py::arg("m2") = 0);

  m.def(
      "run_acceptance",
      [](const std::string& scale, const std::vector<int>& only) {
        Scale s = parse_scale(scale);
        std::vector<CriterionResult> results;
        {
          py::gil_scoped_release release;
          results = run_acceptance(s, only);
        }
        Json j = acceptance_to_json(s, results);
        for (std::size_t i = 0; i < results.size(); ++i) j["criteria"][i]["seconds"] = results[i].seconds;
        return j.dump();
      },
      py::arg("scale") = "small", py::arg("only") = std::vector<int>{});
}
