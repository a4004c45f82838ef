#include <doctest.h>

#include <sstream>

#include "fimag/error.hpp"
#include "fimag/gamma_group.hpp"
#include "fimag/group.hpp"
#include "fimag/linear.hpp"

using namespace fimag;

namespace {

// Count invertible n x n matrices over Z/p by brute force (prime p only).
std::size_t count_invertible_mod_p(std::size_t n, std::size_t p) {
  std::size_t cells = n * n, total = 1, count = 0;
  for (std::size_t i = 0; i < cells; ++i) total *= p;
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<long> e(cells);
    std::size_t c = code;
    for (auto& x : e) {
      x = static_cast<long>(c % p);
      c /= p;
    }
    long det = n == 1 ? e[0] : e[0] * e[3] - e[1] * e[2];
    if (((det % static_cast<long>(p)) + static_cast<long>(p)) % static_cast<long>(p) != 0) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("make_cyclic") {
  CHECK(make_cyclic(1).order() == 1);
  auto c6 = make_cyclic(6);
  bool has_order_6 = false;
  for (Elem x = 0; x < 6; ++x) has_order_6 |= c6.element_order(x) == 6;
  CHECK(has_order_6);
  auto c4 = make_cyclic(4);
  CHECK(c4.element_order(1) == 4);
  CHECK(c4.element_order(2) == 2);
  CHECK_THROWS_AS(make_cyclic(0), InputError);
  CHECK_FALSE(group_law_violation(c6).has_value());
}

TEST_CASE("make_symmetric") {
  auto s3 = make_symmetric(3);
  CHECK(s3.group.order() == 6);
  CHECK_FALSE(s3.group.is_abelian());
  CHECK(make_symmetric(1).group.order() == 1);
  auto s4 = make_symmetric(4);
  CHECK(s4.group.order() == 24);
  CHECK(s4.natural.is_faithful());
  // orbit-stabilizer: 24 / |orbit of 0| = 24 / 4
  CHECK(s4.natural.orbit(0).size() == 4);
  CHECK(s4.natural.stabilizer(0).order() == 6);
  CHECK_THROWS_AS(make_symmetric(0), InputError);
  CHECK_THROWS_AS(make_symmetric(9), InputError);
  CHECK_THROWS_AS(make_symmetric(8), BudgetError);
  CHECK_FALSE(group_law_violation(s4.group).has_value());
}

TEST_CASE("make_gl orders against enumeration") {
  CHECK(make_gl(2, 2, 1).coeff().order() == count_invertible_mod_p(2, 2));
  CHECK(count_invertible_mod_p(2, 2) == 6);
  CHECK(make_gl(2, 3, 1).coeff().order() == count_invertible_mod_p(2, 3));
  CHECK(count_invertible_mod_p(2, 3) == 48);
  CHECK(make_gl(2, 5, 1).coeff().order() == count_invertible_mod_p(2, 5));
  for (std::size_t q : {2, 3, 4, 5}) {
    auto g = make_gl(1, q, 1).coeff();
    CHECK(g.order() == q - 1);
    bool cyclic = false;
    for (Elem x = 0; x < g.order(); ++x) cyclic |= g.element_order(x) == q - 1;
    CHECK(cyclic);
  }
}

TEST_CASE("make_gl product formula and Frobenius action") {
  for (std::size_t n : {1, 2})
    for (std::size_t q : {2, 3, 4, 5})
      for (std::size_t m : {1, 2, 3}) {
        std::size_t f = 1;
        for (std::size_t i = 0; i < m; ++i) f *= q;
        if (f > 16) {
          CHECK_THROWS_AS(make_gl(n, q, m), InputError);
          continue;
        }
        if (gl_order(n, f) > kMaxGroupOrder) {
          CHECK_THROWS_AS(make_gl(n, q, m), BudgetError);
          continue;
        }
        auto gg = make_gl(n, q, m);
        CAPTURE(n);
        CAPTURE(q);
        CAPTURE(m);
        CHECK(gg.coeff().order() == gl_order(n, f));
        CHECK(gg.gamma().order() == m);
        if (gg.coeff().order() <= 200) {
          CHECK_FALSE(group_law_violation(gg.coeff()).has_value());
          // Re-validate the action through the checking constructor.
          CHECK_NOTHROW(GammaGroup(gg.gamma(), gg.coeff(), gg.action()));
        }
      }
  CHECK_THROWS_AS(make_gl(2, 6, 1), InputError);
  CHECK_THROWS_AS(make_gl(3, 2, 1), InputError);
}

TEST_CASE("finite field arithmetic") {
  for (std::size_t q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16}) {
    FiniteField F(q);
    CAPTURE(q);
    for (Elem a = 1; a < q; ++a) {
      CHECK(F.mul(a, F.inv(a)) == 1);
      CHECK(F.pow(a, q - 1) == 1);
    }
    for (Elem a = 0; a < q; ++a)
      for (Elem b = 0; b < q; ++b)
        for (Elem c = 0; c < q; ++c) CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
  }
  CHECK_THROWS_AS(FiniteField(6), InputError);
}

TEST_CASE("core_of_subgroup") {
  auto s3 = make_symmetric(3);
  auto stab = s3.natural.stabilizer(0);
  CHECK(core_of_subgroup(s3.group, stab).order() == 1);
  auto whole = Subgroup::whole(s3.group);
  CHECK(core_of_subgroup(s3.group, whole) == whole);
  for (const auto& n : normal_subgroups(s3.group)) CHECK(core_of_subgroup(s3.group, n) == n);
}

TEST_CASE("core is the largest normal subgroup inside H") {
  std::vector<FiniteGroup> groups = {make_cyclic(6), make_symmetric(3).group, make_symmetric(4).group,
                                     direct_product(make_cyclic(2), make_cyclic(4))};
  for (const auto& g : groups) {
    auto normals = normal_subgroups(g);
    for (const auto& h : all_subgroups(g)) {
      auto core = core_of_subgroup(g, h);
      CHECK(is_normal(core));
      std::size_t best = 0;
      for (const auto& n : normals) {
        bool inside = true;
        for (Elem x : n.members()) inside &= h.contains(x);
        if (inside) best = std::max(best, n.order());
      }
      CHECK(core.order() == best);
    }
  }
}

TEST_CASE("quotient") {
  auto c6 = make_cyclic(6);
  auto q1 = quotient(c6, Subgroup::trivial(c6));
  CHECK(q1.group.order() == 6);
  CHECK(q1.projection.is_injective());
  CHECK(quotient(c6, Subgroup::whole(c6)).group.order() == 1);
  auto c3 = Subgroup(c6, {0, 2, 4});
  auto q = quotient(c6, c3);
  CHECK(q.group.order() == 2);
  CHECK(q.projection.kernel() == c3);
  CHECK_FALSE(group_law_violation(q.group).has_value());

  auto s4 = make_symmetric(4).group;
  for (const auto& n : normal_subgroups(s4)) {
    auto qq = quotient(s4, n);
    CHECK(qq.group.order() * n.order() == 24);
    CHECK(qq.projection.kernel() == n);
    CHECK_NOTHROW(GroupHom(qq.projection.source(), qq.projection.target(), qq.projection.map()));
  }
  auto s3 = make_symmetric(3);
  try {
    quotient(s3.group, s3.natural.stabilizer(0));
    FAIL("non-normal subgroup accepted");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("not normal") != std::string::npos);
  }
}

TEST_CASE("subgroup validation and generation") {
  auto c6 = make_cyclic(6);
  CHECK_THROWS_AS(Subgroup(c6, {0, 1}), InputError);
  CHECK_THROWS_AS(Subgroup(c6, {2, 4}), InputError);
  std::vector<Elem> gens{2};
  CHECK(generated_subgroup(c6, gens).order() == 3);
  CHECK(all_subgroups(c6).size() == 4);
  CHECK(all_subgroups(make_symmetric(4).group).size() == 30);
  CHECK(generated_subgroup(c6, generating_sequence(c6)).order() == 6);
}

TEST_CASE("homomorphisms and automorphisms") {
  CHECK(homomorphisms(make_cyclic(4), make_cyclic(2)).size() == 2);
  CHECK(homomorphisms(make_cyclic(6), make_cyclic(4)).size() == 2);
  CHECK(automorphism_group(make_cyclic(8)).group.order() == 4);
  CHECK(automorphism_group(direct_product(make_cyclic(2), make_cyclic(2))).group.order() == 6);
  CHECK(automorphism_group(make_symmetric(3).group).group.order() == 6);
  auto aut = automorphism_group(make_cyclic(5));
  CHECK(aut.maps.front().map() == std::vector<Elem>{0, 1, 2, 3, 4});
  CHECK_FALSE(group_law_violation(aut.group).has_value());
}

TEST_CASE("group text format") {
  auto s3 = make_symmetric(3).group;
  std::istringstream in(write_group_text(s3));
  CHECK(read_group_text(in) == s3);
  std::istringstream bad("group 2\n0 1\n1 1\n");
  CHECK_THROWS_AS(read_group_text(bad), InputError);
  std::istringstream short_row("group 2\n0 1\n1\n");
  try {
    read_group_text(short_row);
    FAIL("short row accepted");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("coset action") {
  auto s3 = make_symmetric(3);
  auto h = s3.natural.stabilizer(2);
  auto act = coset_action(h);
  CHECK(act.points() == 3);
  CHECK(act.is_transitive());
  CHECK(act.stabilizer(0) == h);
}
