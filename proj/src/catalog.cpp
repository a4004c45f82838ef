#include "fimag/catalog.hpp"

#include <algorithm>
#include <functional>

#include "fimag/error.hpp"

namespace fimag {

namespace {

FiniteGroup from_rule(std::size_t n, const std::function<Elem(Elem, Elem)>& mul, std::string name) {
  std::vector<Elem> t(n * n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) t[a * n + b] = mul(a, b);
  return FiniteGroup::from_table(std::move(t), std::move(name));
}

}  // namespace

FiniteGroup make_dihedral(std::size_t n) {
  require(n >= 1 && 2 * n <= kMaxGroupOrder, "make_dihedral: n out of range");
  return from_rule(
      2 * n,
      [n](Elem a, Elem b) {
        std::size_t k1 = a % n, j1 = a / n, k2 = b % n, j2 = b / n;
        std::size_t k = j1 ? (k1 + n - k2) % n : (k1 + k2) % n;
        return static_cast<Elem>(k + n * ((j1 + j2) % 2));
      },
      n == 3 ? "S3" : "D" + std::to_string(n));
}

FiniteGroup make_dicyclic(std::size_t n) {
  require(n >= 2 && 4 * n <= kMaxGroupOrder, "make_dicyclic: n out of range");
  const std::size_t m = 2 * n;
  return from_rule(
      4 * n,
      [n, m](Elem a, Elem b) {
        std::size_t k1 = a % m, j1 = a / m, k2 = b % m, j2 = b / m;
        if (!j1) return static_cast<Elem>((k1 + k2) % m + m * j2);
        std::size_t k = (k1 + m - k2) % m;  // x a^k2 = a^-k2 x
        if (!j2) return static_cast<Elem>(k + m);
        return static_cast<Elem>((k + n) % m);  // x^2 = a^n
      },
      n == 2 ? "Q8" : "Dic" + std::to_string(n));
}

FiniteGroup make_metacyclic(std::size_t m, std::size_t n, std::size_t r) {
  require(m >= 1 && n >= 1 && m * n <= kMaxGroupOrder, "make_metacyclic: order out of range");
  std::vector<std::size_t> rp(n, 1 % m);
  for (std::size_t i = 1; i < n; ++i) rp[i] = rp[i - 1] * r % m;
  require(rp[n - 1] * r % m == 1 % m, "make_metacyclic: r^n is not 1 mod m");
  return from_rule(
      m * n,
      [m, n, rp](Elem a, Elem b) {
        std::size_t x1 = a % m, y1 = a / m, x2 = b % m, y2 = b / m;
        return static_cast<Elem>((x1 + rp[y1] * x2) % m + m * ((y1 + y2) % n));
      },
      "C" + std::to_string(m) + ":C" + std::to_string(n));
}

FiniteGroup make_alternating(std::size_t n) {
  require(n >= 1 && n <= 7, "make_alternating: n must lie in 1..7");
  std::vector<Perm> gens;
  for (std::size_t k = 2; k < n; ++k) {
    Perm p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<Elem>(i);
    p[0] = 1;
    p[1] = static_cast<Elem>(k);
    p[k] = 0;
    gens.push_back(p);
  }
  return permutation_group(gens, n, "A" + std::to_string(n)).group;
}

std::vector<FiniteGroup> small_group_catalog(std::size_t max_order) {
  require(max_order <= 24, "small_group_catalog: max_order above 24");
  auto C = [](std::size_t n) { return make_cyclic(n); };
  std::vector<FiniteGroup> all;
  for (std::size_t n = 1; n <= 24; ++n) all.push_back(C(n));
  for (auto [a, b] : std::vector<std::pair<std::size_t, std::size_t>>{
           {2, 2}, {2, 4}, {2, 6}, {3, 3}, {2, 8}, {4, 4}, {3, 6}, {2, 10}, {2, 12}})
    all.push_back(direct_product(C(a), C(b)));
  all.push_back(direct_product(direct_product(C(2), C(2)), C(2)));
  all.push_back(direct_product(direct_product(C(2), C(2)), C(4)));
  all.push_back(direct_product(direct_product(C(2), C(2)), direct_product(C(2), C(2))));
  all.push_back(direct_product(direct_product(C(2), C(2)), C(6)));
  for (std::size_t n = 3; n <= 12; ++n) all.push_back(make_dihedral(n));
  for (std::size_t n = 2; n <= 6; ++n) all.push_back(make_dicyclic(n));
  all.push_back(make_alternating(4));
  all.push_back(make_symmetric(4).group.renamed("S4"));
  all.push_back(make_metacyclic(5, 4, 2).renamed("F20"));
  all.push_back(make_metacyclic(7, 3, 2));
  all.push_back(direct_product(make_dihedral(3), C(3)));

  std::vector<FiniteGroup> out;
  for (auto& g : all)
    if (g.order() <= max_order) out.push_back(g);
  std::stable_sort(out.begin(), out.end(),
                   [](const FiniteGroup& a, const FiniteGroup& b) { return a.order() < b.order(); });
  return out;
}

std::vector<FiniteGroup> small_abelian_catalog(std::size_t max_order) {
  std::vector<FiniteGroup> out;
  for (auto& g : small_group_catalog(max_order))
    if (g.is_abelian()) out.push_back(g);
  return out;
}

std::vector<GammaGroup> all_actions(const FiniteGroup& gamma, const FiniteGroup& coeff) {
  auto aut = automorphism_group(coeff);
  std::vector<GammaGroup> out;
  for (const auto& rho : homomorphisms(gamma, aut.group)) out.push_back(GammaGroup::from_automorphisms(rho, aut));
  return out;
}

}  // namespace fimag
