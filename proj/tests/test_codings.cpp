#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "fimag/codings.hpp"
#include "fimag/error.hpp"

using namespace fimag;

namespace {

// Every partial function {0..f-1} -> {0..s-1}, as codes.
std::vector<TwistCode> all_partial(std::size_t f, std::size_t s) {
  std::vector<TwistCode> out;
  std::vector<std::size_t> v(f, 0);  // 0 = undefined, else value + 1
  while (true) {
    std::vector<std::pair<Elem, Elem>> g;
    for (std::size_t i = 0; i < f; ++i)
      if (v[i]) g.emplace_back(static_cast<Elem>(i), static_cast<Elem>(v[i] - 1));
    out.emplace_back(std::move(g));
    std::size_t i = 0;
    while (i < f && v[i] == s) v[i++] = 0;
    if (i == f) break;
    ++v[i];
  }
  return out;
}

// Atoms of the Boolean algebra of subsets of M2 generated by the given sets,
// by closing under complement and intersection.
std::set<unsigned> oracle_atoms(const std::vector<unsigned>& gens, std::size_t m2) {
  unsigned full = (1u << m2) - 1;
  std::set<unsigned> alg{0, full};
  for (unsigned g : gens) alg.insert(g);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<unsigned> cur(alg.begin(), alg.end());
    for (unsigned a : cur) {
      grew |= alg.insert(full & ~a).second;
      for (unsigned b : cur) grew |= alg.insert(a & b).second;
    }
  }
  std::set<unsigned> atoms;
  for (unsigned a : alg) {
    if (!a) continue;
    bool minimal = true;
    for (unsigned b : alg)
      if (b && b != a && (b & a) == b) minimal = false;
    if (minimal) atoms.insert(a);
  }
  return atoms;
}

unsigned mask_of(const std::vector<std::size_t>& xs) {
  unsigned m = 0;
  for (auto x : xs) m |= 1u << x;
  return m;
}

}  // namespace

TEST_CASE("twist code canonical form") {
  TwistCode a({{2, 0}, {0, 1}});
  TwistCode b({{0, 1}, {2, 0}});
  CHECK(a == b);
  CHECK(a.graph().front().first == 0);
  CHECK(a.at(2) == Elem{0});
  CHECK_FALSE(a.at(1).has_value());
  CHECK_THROWS_AS(TwistCode({{1, 0}, {1, 1}}), InputError);
}

TEST_CASE("embed_pair_twist round trip") {
  auto [e1, e2] = embed_pair_twist(TwistCode{}, 2);
  CHECK(e1.empty());
  CHECK(e2.empty());

  auto [s1, s2] = embed_pair_twist(TwistCode({{1, 3}}), 2);
  CHECK(s1 == TwistCode({{1, 1}}));
  CHECK(s2 == TwistCode({{1, 1}}));

  auto all = all_partial(3, 4);
  CHECK(all.size() == 125);
  std::set<std::pair<TwistCode, TwistCode>> images;
  for (const auto& h : all) {
    auto [p, q] = embed_pair_twist(h, 2);
    CHECK(p.size() == h.size());
    CHECK(decode_pair_twist(p, q, 2) == h);
    images.insert({p, q});
  }
  CHECK(images.size() == 125);
  CHECK_THROWS_AS(decode_pair_twist(TwistCode({{0, 0}}), TwistCode({{1, 0}}), 2), InputError);
}

TEST_CASE("cyclic power cover") {
  CyclicPowerCover c21(make_cyclic(2), 1);
  CHECK(c21.verify_surjective());

  CyclicPowerCover c32(make_cyclic(3), 2);
  CHECK(c32.domain_size() == 27);
  std::set<std::uint64_t> hit;
  for (std::uint64_t u = 0; u < 27; ++u) hit.insert(c32.apply(u));
  CHECK(hit.size() == 9);

  auto u = c32.preimage(c32.encode_target({0, 0}));
  REQUIRE(u);
  CHECK(c32.decode_domain(*u).first == 0);

  // In Z/d written additively, b^a = a·b.
  for (std::size_t d = 1; d <= 6; ++d)
    for (std::size_t k = 1; k <= 3; ++k) {
      CyclicPowerCover c(make_cyclic(d), k);
      CHECK(c.verify_surjective());
      for (std::uint64_t x = 0; x < c.domain_size(); ++x) {
        auto [b, exps] = c.decode_domain(x);
        CHECK(c.encode_domain(b, exps) == x);
        std::vector<Elem> t;
        for (auto a : exps) t.push_back(static_cast<Elem>(a * b % d));
        CHECK(c.apply(x) == c.encode_target(t));
      }
    }
  CHECK_THROWS_AS(CyclicPowerCover(direct_product(make_cyclic(2), make_cyclic(2)), 1), InputError);
}

TEST_CASE("embed_twist_by_power") {
  CyclicPowerCover c(make_cyclic(2), 1);
  CHECK(embed_twist_by_power(TwistCode{}, c).empty());

  auto all = all_partial(2, 2);
  CHECK(all.size() == 9);
  std::set<TwistCode> images;
  for (const auto& x : all) {
    auto y = embed_twist_by_power(x, c);
    CHECK(decode_twist_by_power(y, c) == x);
    images.insert(y);
    if (x.size() == 2) CHECK(y.size() == c.domain_size());
  }
  CHECK(images.size() == 9);

  for (auto [d, k] : {std::pair<std::size_t, std::size_t>{3, 1}, {2, 2}}) {
    CyclicPowerCover cc(make_cyclic(d), k);
    std::set<TwistCode> seen;
    for (const auto& x : all_partial(cc.target_size(), 2)) {
      auto y = embed_twist_by_power(x, cc);
      CHECK(decode_twist_by_power(y, cc) == x);
      seen.insert(y);
    }
    CHECK(seen.size() == all_partial(cc.target_size(), 2).size());
  }
}

TEST_CASE("code_gamma_function") {
  auto cst = code_gamma_function({mpq_class(1, 3), mpq_class(1, 3), mpq_class(1, 3)});
  CHECK(cst.image.size() == 1);
  CHECK(cst.ranks == std::vector<std::size_t>{0, 0, 0});

  auto inc = code_gamma_function({mpq_class(-2), mpq_class(1, 2), mpq_class(7)});
  CHECK(inc.ranks == std::vector<std::size_t>{0, 1, 2});

  std::vector<mpq_class> vals{mpq_class(-1), mpq_class(0), mpq_class(1, 2), mpq_class(3)};
  std::size_t cases = 0;
  for (std::size_t code = 0; code < 256; ++code) {
    std::vector<mpq_class> h;
    for (std::size_t i = 0, c = code; i < 4; ++i, c /= 4) h.push_back(vals[c % 4]);
    auto g = code_gamma_function(h);
    CHECK(decode_gamma_function(g) == h);
    CHECK(std::is_sorted(g.image.begin(), g.image.end()));
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) CHECK((g.ranks[i] <= g.ranks[j]) == (h[i] <= h[j]));
    ++cases;
  }
  CHECK(cases == 256);
}

TEST_CASE("rank_as_prime_field_map") {
  CHECK(least_prime_at_least(1) == 2);
  CHECK(least_prime_at_least(4) == 5);
  CHECK(least_prime_at_least(7) == 7);

  auto flat = rank_as_prime_field_map({0, 0, 0});
  CHECK(flat[0] == flat[1]);
  CHECK(flat[1] == flat[2]);

  auto chain = rank_as_prime_field_map({0, 1, 2}, 5);
  CHECK(chain[0] != chain[1]);
  CHECK(chain[1] != chain[2]);
  CHECK(chain[0] != chain[2]);
  CHECK(decode_rank_map(chain) == std::vector<std::size_t>{0, 1, 2});

  CHECK(decode_rank_map(rank_as_prime_field_map({0})) == std::vector<std::size_t>{0});

  // Every rank table on n <= 4 points.
  for (std::size_t n = 1; n <= 4; ++n) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= n;
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<std::size_t> r;
      for (std::size_t i = 0, c = code; i < n; ++i, c /= n) r.push_back(c % n);
      auto sets = rank_as_prime_field_map(r);
      for (const auto& s : sets) CHECK(s.back() < least_prime_at_least(n));
      CHECK(decode_rank_map(sets) == r);
    }
  }
  CHECK_THROWS_AS(rank_as_prime_field_map({0, 1, 2, 3}, 3), InputError);
  CHECK_THROWS_AS(rank_as_prime_field_map({0, 1}, 4), InputError);
}

TEST_CASE("subgroup_stabilizer_code examples") {
  auto full5 = subgroup_stabilizer_code(5, {1, 2, 3, 4});
  CHECK(full5.y == std::vector<std::size_t>{1, 2, 3, 4});
  CHECK(full5.stabilizer == full5.y);

  auto one8 = subgroup_stabilizer_code(8, {1});
  CHECK(one8.y == std::vector<std::size_t>{1});
  CHECK(one8.stabilizer == std::vector<std::size_t>{1});

  auto pm5 = subgroup_stabilizer_code(5, {1, 4});
  CHECK(pm5.y == std::vector<std::size_t>{1, 4});
  CHECK(pm5.stabilizer == std::vector<std::size_t>{1, 4});

  CHECK_THROWS_AS(subgroup_stabilizer_code(5, {1, 2}), InputError);
  CHECK_THROWS_AS(subgroup_stabilizer_code(8, {1, 2}), InputError);
  CHECK_THROWS_AS(subgroup_stabilizer_code(8, {3}), InputError);
}

TEST_CASE("subgroup_stabilizer_code over all subgroups, n <= 24") {
  for (std::size_t n = 1; n <= 24; ++n) {
    std::vector<std::size_t> units;
    for (std::size_t g = 0; g < n; ++g)
      if (std::gcd(g, n) == 1) units.push_back(g);
    if (n == 1) units = {0};
    // (Z/n)^* needs at most three generators for n <= 24, so closures of
    // triples give every subgroup.
    std::set<std::vector<std::size_t>> subs;
    for (auto a : units)
      for (auto b : units)
        for (auto c : units) {
          std::set<std::size_t> h{1 % n};
          bool grew = true;
          while (grew) {
            grew = false;
            std::vector<std::size_t> cur(h.begin(), h.end());
            for (auto x : cur)
              for (auto g : {a, b, c}) grew |= h.insert(x * g % n).second;
          }
          subs.insert(std::vector<std::size_t>(h.begin(), h.end()));
        }
    std::size_t subgroups = 0;
    for (const auto& h : subs) {
      ++subgroups;
      auto c = subgroup_stabilizer_code(n, h);
      CHECK(c.y == h);
      // Independent stabilizer check.
      std::vector<std::size_t> stab;
      for (auto g : units) {
        std::set<std::size_t> gy;
        for (auto y : h) gy.insert(g * y % n);
        if (std::equal(gy.begin(), gy.end(), h.begin(), h.end())) stab.push_back(g);
      }
      CHECK(stab == h);
    }
    // Small unit groups: every other subset is rejected.
    if (units.size() <= 8)
      for (unsigned mask = 1; mask < (1u << units.size()); ++mask) {
        std::vector<std::size_t> h;
        for (std::size_t i = 0; i < units.size(); ++i)
          if (mask >> i & 1) h.push_back(units[i]);
        if (!subs.count(h)) CHECK_THROWS_AS(subgroup_stabilizer_code(n, h), InputError);
      }
    CHECK(subgroups >= 1);
  }
}

TEST_CASE("fv_decompose examples") {
  Relation empty{3, 4, std::vector<bool>(12, false)};
  CHECK(fv_decompose(empty).parts.empty());

  Relation full{3, 4, std::vector<bool>(12, true)};
  auto df = fv_decompose(full);
  REQUIRE(df.parts.size() == 1);
  CHECK(df.parts[0].atom == std::vector<std::size_t>{0, 1, 2, 3});
  CHECK(df.parts[0].left == std::vector<std::size_t>{0, 1, 2});

  // Sections {0,1}, {1,2}, {0,1}.
  Relation two{3, 4, {1, 1, 0, 0, 0, 1, 1, 0, 1, 1, 0, 0}};
  auto d = fv_decompose(two);
  CHECK(d.parts.size() <= 4);
  CHECK(d.reconstruct(3, 4) == two);
  std::set<unsigned> got;
  for (const auto& p : d.parts) got.insert(mask_of(p.atom));
  auto atoms = oracle_atoms({0b0011, 0b0110}, 4);
  // The atom {3} lies outside every section.
  atoms.erase(0b1000);
  CHECK(got == atoms);
  CHECK(d.parts[0].atom == std::vector<std::size_t>{0});
  CHECK(d.parts[0].left == std::vector<std::size_t>{0, 2});
  CHECK(d.parts[1].atom == std::vector<std::size_t>{1});
  CHECK(d.parts[1].left == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("fv_decompose on all relations up to 3 x 3") {
  std::size_t relations = 0;
  for (std::size_t m1 = 0; m1 <= 3; ++m1)
    for (std::size_t m2 = 0; m2 <= 3; ++m2)
      for (unsigned code = 0; code < (1u << (m1 * m2)); ++code) {
        Relation r{m1, m2, std::vector<bool>(m1 * m2)};
        for (std::size_t i = 0; i < m1 * m2; ++i) r.cells[i] = code >> i & 1;
        ++relations;
        auto d = fv_decompose(r);
        CHECK(d.reconstruct(m1, m2) == r);

        std::vector<unsigned> sections;
        unsigned covered = 0;
        for (std::size_t a = 0; a < m1; ++a) {
          unsigned s = 0;
          for (std::size_t b = 0; b < m2; ++b)
            if (r(a, b)) s |= 1u << b;
          sections.push_back(s);
          covered |= s;
        }
        std::set<unsigned> expect;
        if (m2 > 0)
          for (unsigned a : oracle_atoms(sections, m2))
            if (a & covered) expect.insert(a);
        std::set<unsigned> got;
        std::size_t prev_min = 0;
        for (std::size_t i = 0; i < d.parts.size(); ++i) {
          const auto& p = d.parts[i];
          REQUIRE_FALSE(p.atom.empty());
          got.insert(mask_of(p.atom));
          if (i) CHECK(p.atom.front() > prev_min);
          prev_min = p.atom.front();
          // Left part by the defining formula.
          std::vector<std::size_t> left;
          for (std::size_t a = 0; a < m1; ++a)
            if ((sections[a] & mask_of(p.atom)) == mask_of(p.atom)) left.push_back(a);
          CHECK(p.left == left);
        }
        CHECK(got == expect);

        // Relabeling M1 relabels the left parts and leaves the atoms alone.
        std::vector<std::size_t> perm(m1);
        std::iota(perm.begin(), perm.end(), 0);
        do {
          Relation q{m1, m2, std::vector<bool>(m1 * m2)};
          for (std::size_t a = 0; a < m1; ++a)
            for (std::size_t b = 0; b < m2; ++b) q.cells[perm[a] * m2 + b] = r(a, b);
          auto dq = fv_decompose(q);
          REQUIRE(dq.parts.size() == d.parts.size());
          for (std::size_t i = 0; i < d.parts.size(); ++i) {
            CHECK(dq.parts[i].atom == d.parts[i].atom);
            std::vector<std::size_t> left;
            for (auto a : d.parts[i].left) left.push_back(perm[a]);
            std::sort(left.begin(), left.end());
            CHECK(dq.parts[i].left == left);
          }
        } while (std::next_permutation(perm.begin(), perm.end()));
      }
  CHECK(relations > 512);
}
