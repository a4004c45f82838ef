#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "fimag/error.hpp"
#include "fimag/kummer.hpp"

using namespace fimag;

namespace {

// Numerical value at ζ = exp(2πi/N), an oracle independent of the reduction.
std::complex<double> numeric(const CycNumber& x) {
  const double pi = std::acos(-1.0);
  std::complex<double> z = std::polar(1.0, 2 * pi / static_cast<double>(x.conductor())), p = 1, s = 0;
  for (const auto& c : x.coeffs()) {
    s += c.get_d() * p;
    p *= z;
  }
  return s;
}

CycNumber random_cyc(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> d(-4, 4);
  std::vector<mpq_class> p;
  for (std::size_t i = 0; i < euler_phi(n) + 2; ++i) p.emplace_back(d(rng), 1 + std::abs(d(rng)));
  for (auto& q : p) q.canonicalize();
  return CycNumber(n, p);
}

PuiseuxElement random_puiseux(std::size_t n, std::size_t denom, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> e(-6, 6), k(0, 3);
  PuiseuxElement::Terms t;
  for (long i = k(rng); i >= 0; --i) {
    mpq_class q(e(rng), static_cast<long>(denom));
    q.canonicalize();
    t.emplace(q, random_cyc(n, rng));
  }
  return PuiseuxElement(n, denom, t);
}

}  // namespace

TEST_CASE("cyclotomic polynomials") {
  auto p = [](std::initializer_list<long> xs) {
    std::vector<mpq_class> v;
    for (long x : xs) v.emplace_back(x);
    return v;
  };
  CHECK(cyclotomic_polynomial(1) == p({-1, 1}));
  CHECK(cyclotomic_polynomial(2) == p({1, 1}));
  CHECK(cyclotomic_polynomial(4) == p({1, 0, 1}));
  CHECK(cyclotomic_polynomial(6) == p({1, -1, 1}));
  CHECK(cyclotomic_polynomial(12) == p({1, 0, -1, 0, 1}));
  for (std::size_t n = 1; n <= 60; ++n) {
    CHECK(cyclotomic_polynomial(n).size() == euler_phi(n) + 1);
    CHECK(CycNumber::zeta(n).pow(static_cast<long long>(n)).is_one());
    if (n > 1) CHECK_FALSE(CycNumber::zeta(n).is_one());
  }
}

TEST_CASE("cyclotomic arithmetic agrees with complex numbers") {
  std::mt19937_64 rng(11);
  for (std::size_t n : {1, 3, 4, 5, 8, 12, 15}) {
    for (int rep = 0; rep < 20; ++rep) {
      auto a = random_cyc(n, rng), b = random_cyc(n, rng);
      CHECK(std::abs(numeric(a + b) - (numeric(a) + numeric(b))) < 1e-9);
      CHECK(std::abs(numeric(a * b) - numeric(a) * numeric(b)) < 1e-9);
      if (!b.is_zero()) {
        CHECK((a / b) * b == a);
        CHECK(std::abs(numeric(a / b) - numeric(a) / numeric(b)) < 1e-6 * (1 + std::abs(numeric(a / b))));
      }
      for (long long u = 1; u < static_cast<long long>(n); ++u) {
        if (std::gcd(u, static_cast<long long>(n)) != 1) continue;
        CHECK((a * b).galois(u) == a.galois(u) * b.galois(u));
        CHECK((a + b).galois(u) == a.galois(u) + b.galois(u));
      }
      CHECK(std::abs(numeric(a.embed(2 * n)) - numeric(a)) < 1e-9);
    }
  }
  CHECK_THROWS_AS(CycNumber(4).inverse(), InputError);
  CHECK_THROWS_AS(CycNumber(4) + CycNumber(3), InputError);
}

TEST_CASE("roots of unity") {
  CHECK(root_of_unity(4, 2) == CycNumber(4, mpq_class(-1)));
  // μ_2 and μ_10 lie in ℚ(ζ_5) although neither divides 5.
  CHECK(contains_roots_of_unity(5, 2));
  CHECK(contains_roots_of_unity(5, 10));
  CHECK_FALSE(contains_roots_of_unity(4, 8));
  for (std::size_t big = 1; big <= 30; ++big)
    for (std::size_t n = 1; n <= 60; ++n) {
      if (!contains_roots_of_unity(big, n)) continue;
      auto w = root_of_unity(big, n);
      CHECK(w.pow(static_cast<long long>(n)).is_one());
      for (std::size_t d = 1; d < n; ++d) CHECK_FALSE(w.pow(static_cast<long long>(d)).is_one());
    }
  CHECK_THROWS_AS(root_of_unity(4, 3), InputError);
}

TEST_CASE("val and ac") {
  auto x = parse_puiseux("1@3/2 1@2", 1, 2);
  CHECK(val(x) == mpq_class(3, 2));
  CHECK_FALSE(val(PuiseuxElement(1, 2)).has_value());
  CHECK(val(parse_puiseux("5@0", 1, 1)) == mpq_class(0));

  CHECK(ac(parse_puiseux("3@2 1@3", 1, 1)) == CycNumber(1, mpq_class(3)));
  CHECK(ac(parse_puiseux("z@1/2", 4, 2)) == CycNumber::zeta(4));
  CHECK_THROWS_AS(ac(PuiseuxElement(4, 2)), InputError);

  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 200; ++rep) {
    auto a = random_puiseux(12, 6, rng), b = random_puiseux(12, 6, rng);
    if (a.is_zero() || b.is_zero()) continue;
    CHECK(*val(a * b) == *val(a) + *val(b));
    CHECK(ac(a * b) == ac(a) * ac(b));
    auto s = a + b;
    if (*val(a) != *val(b)) CHECK(*val(s) == std::min(*val(a), *val(b)));
    else if (!s.is_zero()) CHECK(*val(s) >= *val(a));
  }
}

TEST_CASE("puiseux syntax") {
  auto x = parse_puiseux("[1,2]@-1/2 -z^3@1 2/3@0", 4, 2);
  CHECK(x.terms().size() == 3);
  CHECK(parse_puiseux(x.str(), 4, 2) == x);
  CHECK(parse_puiseux("0", 4, 2).is_zero());
  CHECK(parse_puiseux("1@1 -1@1", 1, 1).is_zero());
  CHECK(parse_cyc("3*z^2", 4) == CycNumber(4, mpq_class(-3)));
  CHECK_THROWS_AS(parse_puiseux("1@1/3", 1, 2), InputError);
  CHECK_THROWS_AS(parse_puiseux("1", 1, 2), InputError);
  CHECK_THROWS_AS(parse_puiseux("x@1", 1, 2), InputError);
  CHECK_THROWS_AS(parse_puiseux("z^q@1", 4, 2), InputError);
}

TEST_CASE("automorphism groups of towers") {
  auto g = aut_group(make_tower(2, 2, 2));
  CHECK(g.group().order() == 2);
  auto root = parse_puiseux("1@1/2", 2, 2);
  CHECK(g.apply(1, root) == parse_puiseux("-1@1/2", 2, 2));

  auto i = aut_group(make_tower(1, 4, 1));
  CHECK(i.group().order() == 2);
  CHECK(i.apply(1, CycNumber::zeta(4)) == CycNumber::zeta(4, 3));

  auto t = aut_group(make_tower(1, 4, 2));
  CHECK(t.group().order() == 4);
  CHECK(t.ramified().order() == 2);
  CHECK(t.cyclotomic().order() == 2);
  CHECK(t.decomposition_holds());
  // Both parts are normal here; the group is C2 x C2.
  for (Elem s = 0; s < 4; ++s) CHECK(t.group().mul(s, s) == 0);

  for (auto [a, b, c] : {std::tuple{1, 5, 2}, {1, 12, 4}, {3, 12, 6}, {1, 9, 3}, {2, 20, 10}, {5, 15, 30}}) {
    auto h = aut_group(make_tower(a, b, c));
    CHECK(h.group().order() == euler_phi(b) / euler_phi(a) * c);
    CHECK(h.decomposition_holds());
  }
  CHECK_THROWS_AS(make_tower(3, 4, 1), InputError);
  CHECK_THROWS_AS(make_tower(1, 4, 3), InputError);
  CHECK_THROWS_AS(make_tower(1, 61, 1), InputError);
}

TEST_CASE("residue isomorphism") {
  auto triv = residue_iso_check(aut_group(make_tower(4, 4, 2)));
  CHECK(triv.left_order == 1);
  CHECK(triv.right_order == 1);
  CHECK(triv.bijective);

  auto three = residue_iso_check(aut_group(make_tower(1, 3, 1)));
  CHECK(three.left_order == 2);
  CHECK(three.right_order == 2);
  CHECK(three.bijective);

  auto five = residue_iso_check(aut_group(make_tower(1, 5, 2)));
  CHECK(five.left_order == 4);
  CHECK(five.right_order == euler_phi(5));
  CHECK(five.bijective);

  for (std::size_t big = 1; big <= 24; ++big)
    for (std::size_t base = 1; base <= big; ++base) {
      if (big % base) continue;
      auto r = residue_iso_check(aut_group(make_tower(base, big, 1)));
      CHECK(r.bijective);
      CHECK(r.right_order == euler_phi(big) / euler_phi(base));
    }
}

TEST_CASE("kummer pairing") {
  auto g2 = aut_group(make_tower(1, 2, 2));
  auto one = parse_puiseux("7@3", 2, 2);
  CHECK(kummer_pairing(g2, 1, one).is_one());
  CHECK(kummer_pairing(g2, 1, parse_puiseux("1@1/2", 2, 2)) == CycNumber(2, mpq_class(-1)));

  auto g4 = aut_group(make_tower(1, 4, 4));
  Elem s = g4.index_of(TowerAut{1, 1});
  CHECK(g4.root() == CycNumber::zeta(4));
  CHECK(kummer_pairing(g4, s, parse_puiseux("1@2/4", 4, 4)) == CycNumber(4, mpq_class(-1)));

  auto g = aut_group(make_tower(1, 4, 2));
  Elem cyc = g.index_of(TowerAut{3, 0});
  CHECK_THROWS_AS(kummer_pairing(g, cyc, parse_puiseux("1@1/2", 4, 2)), InputError);
  CHECK_THROWS_AS(kummer_pairing(g, 1, parse_puiseux("1@1/2 1@1", 4, 2)), InputError);
  // (1 + i)^2 = 2i is not in ℚ((t)).
  CHECK_THROWS_AS(kummer_pairing(g, 1, parse_puiseux("[1,1]@1/2", 4, 2)), InputError);
}

TEST_CASE("verify_claim3") {
  auto c1 = verify_claim3(aut_group(make_tower(1, 1, 1)));
  CHECK(c1.passed());
  CHECK(c1.aut_order == 1);
  CHECK(c1.hom_order == 1);

  auto c2 = verify_claim3(aut_group(make_tower(1, 2, 2)));
  CHECK(c2.passed());
  CHECK(c2.aut_order == 2);

  auto c6 = verify_claim3(aut_group(make_tower(1, 6, 6)));
  CHECK(c6.passed());
  CHECK(c6.aut_order == 6);
  CHECK(c6.hom_order == 6);

  for (std::size_t n : {1, 2, 3, 4, 6})
    for (std::size_t big = 1; big <= 24; ++big) {
      if (!contains_roots_of_unity(big, n)) continue;
      auto c = verify_claim3(aut_group(make_tower(1, big, n)));
      CHECK(c.passed());
      CHECK(c.aut_order == n);
    }
}

TEST_CASE("pairing on random monomials") {
  for (auto [a, b, c] : {std::tuple{1, 2, 2}, {1, 4, 2}, {1, 4, 4}, {1, 3, 3}, {1, 6, 6}, {4, 4, 2}}) {
    auto g = aut_group(make_tower(a, b, c));
    auto r = check_pairing(g, 100, 2024);
    CHECK(r.pairs == 100);
    CHECK(r.passed());
  }
}
