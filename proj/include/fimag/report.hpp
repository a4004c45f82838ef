#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fimag/cohomology.hpp"
#include "fimag/io.hpp"

namespace fimag {

// A short structural name: invariant factors for abelian groups ("C4xC2"),
// S3, D_n, Q8 and Dic_n where recognised, otherwise "G<order>".
std::string structure_name(const FiniteGroup& g);

// JSON reports behind the command-line front end. Every report is a pure
// function of its input; "passed" is present whenever a check is made.
Json h1_report(const GammaGroup& m, bool factor, std::uint64_t budget = kDefaultBudget);
Json descent_json(const SpaceInstance& s, std::uint64_t budget = kDefaultBudget);
Json groupoid_report(const GroupoidFile& g, bool pipeline);
Json sorts_report(const AmbientAction& a, std::size_t power = 1, std::uint64_t budget = 1'000'000);
Json kummer_report(const Tower& t, bool claim3, std::size_t pairs, std::uint64_t seed);

Json fv_report(const Relation& r);
Json stabilizer_report(std::size_t n, const std::vector<std::size_t>& h);
Json gamma_code_report(const std::vector<mpq_class>& h);
Json rank_report(const std::vector<std::size_t>& ranks);
Json cover_report(std::size_t d, std::size_t k);

}  // namespace fimag
