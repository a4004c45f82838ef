#include "fimag/codings.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "fimag/error.hpp"

namespace fimag {

TwistCode::TwistCode(std::vector<std::pair<Elem, Elem>> graph) : graph_(std::move(graph)) {
  std::sort(graph_.begin(), graph_.end());
  for (std::size_t i = 1; i < graph_.size(); ++i)
    if (graph_[i].first == graph_[i - 1].first)
      throw InputError("twist code: domain value " + std::to_string(graph_[i].first) + " is repeated");
}

std::optional<Elem> TwistCode::at(Elem x) const {
  auto it = std::lower_bound(graph_.begin(), graph_.end(), std::pair<Elem, Elem>{x, 0});
  if (it == graph_.end() || it->first != x) return std::nullopt;
  return it->second;
}

std::pair<TwistCode, TwistCode> embed_pair_twist(const TwistCode& h, std::size_t s2_size) {
  require(s2_size > 0, "embed_pair_twist: empty second factor");
  std::vector<std::pair<Elem, Elem>> a, b;
  for (auto [x, v] : h.graph()) {
    a.emplace_back(x, static_cast<Elem>(v / s2_size));
    b.emplace_back(x, static_cast<Elem>(v % s2_size));
  }
  return {TwistCode(std::move(a)), TwistCode(std::move(b))};
}

TwistCode decode_pair_twist(const TwistCode& first, const TwistCode& second, std::size_t s2_size) {
  require(first.size() == second.size(), "decode_pair_twist: domains differ");
  std::vector<std::pair<Elem, Elem>> g;
  for (std::size_t i = 0; i < first.size(); ++i) {
    auto [x, s1] = first.graph()[i];
    auto [y, s2] = second.graph()[i];
    require(x == y, "decode_pair_twist: domains differ");
    require(s2 < s2_size, "decode_pair_twist: second value out of range");
    g.emplace_back(x, static_cast<Elem>(s1 * s2_size + s2));
  }
  return TwistCode(std::move(g));
}

CyclicPowerCover::CyclicPowerCover(FiniteGroup b, std::size_t k) : b_(std::move(b)), k_(k) {
  require(k >= 1, "cyclic_power_cover: k must be positive");
  bool cyclic = false;
  for (Elem g = 0; g < b_.order(); ++g)
    if (b_.element_order(g) == b_.order()) {
      gen_ = g;
      cyclic = true;
      break;
    }
  require(cyclic, "cyclic_power_cover: " + b_.name() + " is not cyclic");
  for (std::size_t i = 0; i < k; ++i) {
    require(targets_ <= (std::uint64_t{1} << 40) / d(), "cyclic_power_cover: d^k too large");
    targets_ *= d();
  }
  if (domain_size() <= (std::size_t{1} << 22)) {
    section_.assign(targets_, UINT64_MAX);
    for (std::uint64_t u = domain_size(); u-- > 0;) section_[apply(u)] = u;
  }
}

std::uint64_t CyclicPowerCover::encode_domain(Elem b, const std::vector<std::size_t>& exps) const {
  require(b < d() && exps.size() == k_, "cyclic_power_cover: bad domain point");
  std::uint64_t u = b;
  for (std::size_t a : exps) {
    require(a >= 1 && a <= d(), "cyclic_power_cover: exponent outside [1..d]");
    u = u * d() + (a - 1);
  }
  return u;
}

std::pair<Elem, std::vector<std::size_t>> CyclicPowerCover::decode_domain(std::uint64_t u) const {
  require(u < domain_size(), "cyclic_power_cover: domain index out of range");
  std::vector<std::size_t> exps(k_);
  for (std::size_t i = k_; i-- > 0;) {
    exps[i] = u % d() + 1;
    u /= d();
  }
  return {static_cast<Elem>(u), exps};
}

std::uint64_t CyclicPowerCover::encode_target(const std::vector<Elem>& t) const {
  require(t.size() == k_, "cyclic_power_cover: target has wrong length");
  std::uint64_t u = 0;
  for (Elem x : t) {
    require(x < d(), "cyclic_power_cover: target value out of range");
    u = u * d() + x;
  }
  return u;
}

std::vector<Elem> CyclicPowerCover::decode_target(std::uint64_t t) const {
  require(t < targets_, "cyclic_power_cover: target index out of range");
  std::vector<Elem> out(k_);
  for (std::size_t i = k_; i-- > 0;) {
    out[i] = static_cast<Elem>(t % d());
    t /= d();
  }
  return out;
}

std::uint64_t CyclicPowerCover::apply(std::uint64_t u) const {
  auto [b, exps] = decode_domain(u);
  std::uint64_t t = 0;
  for (std::size_t a : exps) t = t * d() + b_.pow(b, static_cast<long long>(a));
  return t;
}

std::optional<std::uint64_t> CyclicPowerCover::preimage(std::uint64_t t) const {
  require(t < targets_, "cyclic_power_cover: target index out of range");
  if (!section_.empty()) {
    if (section_[t] == UINT64_MAX) return std::nullopt;
    return section_[t];
  }
  for (std::uint64_t u = 0; u < domain_size(); ++u)
    if (apply(u) == t) return u;
  return std::nullopt;
}

bool CyclicPowerCover::verify_surjective() const {
  std::vector<bool> hit(targets_, false);
  std::size_t count = 0;
  for (std::uint64_t u = 0; u < domain_size(); ++u) {
    auto t = apply(u);
    if (!hit[t]) {
      hit[t] = true;
      ++count;
    }
  }
  return count == targets_;
}

TwistCode embed_twist_by_power(const TwistCode& x, const CyclicPowerCover& cover) {
  for (auto [t, v] : x.graph()) require(t < cover.target_size(), "embed_twist_by_power: domain value outside B^k");
  std::vector<std::pair<Elem, Elem>> g;
  for (std::uint64_t u = 0; u < cover.domain_size(); ++u)
    if (auto v = x.at(static_cast<Elem>(cover.apply(u)))) g.emplace_back(static_cast<Elem>(u), *v);
  return TwistCode(std::move(g));
}

TwistCode decode_twist_by_power(const TwistCode& y, const CyclicPowerCover& cover) {
  std::vector<std::pair<Elem, Elem>> g;
  for (std::uint64_t t = 0; t < cover.target_size(); ++t) {
    auto u = cover.preimage(t);
    ensure(u.has_value(), "decode_twist_by_power: cover is not surjective");
    if (auto v = y.at(static_cast<Elem>(*u))) g.emplace_back(static_cast<Elem>(t), *v);
  }
  return TwistCode(std::move(g));
}

GammaCode code_gamma_function(const std::vector<mpq_class>& h) {
  GammaCode c;
  c.image = h;
  std::sort(c.image.begin(), c.image.end());
  c.image.erase(std::unique(c.image.begin(), c.image.end()), c.image.end());
  c.ranks.reserve(h.size());
  for (const auto& v : h)
    c.ranks.push_back(static_cast<std::size_t>(std::lower_bound(c.image.begin(), c.image.end(), v) - c.image.begin()));
  return c;
}

std::vector<mpq_class> decode_gamma_function(const GammaCode& c) {
  std::vector<mpq_class> h;
  h.reserve(c.ranks.size());
  for (std::size_t r : c.ranks) {
    require(r < c.image.size(), "decode_gamma_function: rank outside the image");
    h.push_back(c.image[r]);
  }
  return h;
}

namespace {

bool is_prime(std::size_t p) {
  if (p < 2) return false;
  for (std::size_t q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

}  // namespace

std::size_t least_prime_at_least(std::size_t n) {
  std::size_t p = std::max<std::size_t>(n, 2);
  while (!is_prime(p)) ++p;
  return p;
}

std::vector<std::vector<std::size_t>> rank_as_prime_field_map(const std::vector<std::size_t>& ranks,
                                                               std::optional<std::size_t> p) {
  const std::size_t n = ranks.size();
  std::size_t q = p ? *p : least_prime_at_least(n);
  require(is_prime(q), "rank_as_prime_field_map: " + std::to_string(q) + " is not prime");
  require(q >= n, "rank_as_prime_field_map: p = " + std::to_string(q) + " is smaller than n = " + std::to_string(n));
  std::vector<std::vector<std::size_t>> out;
  out.reserve(n);
  for (std::size_t r : ranks) {
    require(r < n, "rank_as_prime_field_map: rank " + std::to_string(r) + " out of range");
    std::vector<std::size_t> s(r + 1);
    std::iota(s.begin(), s.end(), 0);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<std::size_t> decode_rank_map(const std::vector<std::vector<std::size_t>>& sets) {
  std::vector<std::size_t> ranks;
  for (const auto& s : sets) {
    require(!s.empty(), "decode_rank_map: empty rank set");
    for (std::size_t i = 0; i < s.size(); ++i) require(s[i] == i, "decode_rank_map: not a down-set");
    ranks.push_back(s.size() - 1);
  }
  return ranks;
}

StabilizerCode subgroup_stabilizer_code(std::size_t n, std::vector<std::size_t> h) {
  require(n >= 1, "subgroup_stabilizer_code: n must be positive");
  std::sort(h.begin(), h.end());
  h.erase(std::unique(h.begin(), h.end()), h.end());
  std::vector<std::size_t> units;
  for (std::size_t g = 0; g < n; ++g)
    if (std::gcd(g, n) == 1) units.push_back(g % n);
  if (n == 1) units = {0};
  std::vector<bool> in(n, false);
  for (std::size_t x : h) {
    require(x < n && std::binary_search(units.begin(), units.end(), x),
            "subgroup_stabilizer_code: " + std::to_string(x) + " is not a unit mod " + std::to_string(n));
    in[x] = true;
  }
  require(!h.empty() && in[1 % n], "subgroup_stabilizer_code: H does not contain 1");
  for (std::size_t a : h)
    for (std::size_t b : h)
      require(in[a * b % n], "subgroup_stabilizer_code: H is not closed under multiplication");

  StabilizerCode c;
  c.y = h;
  for (std::size_t g : units) {
    std::vector<std::size_t> gy;
    for (std::size_t y : c.y) gy.push_back(g * y % n);
    std::sort(gy.begin(), gy.end());
    if (gy == c.y) c.stabilizer.push_back(g);
  }
  ensure(c.stabilizer == h, "subgroup_stabilizer_code: stabilizer of Y differs from H");
  return c;
}

Relation RectDecomposition::reconstruct(std::size_t m1, std::size_t m2) const {
  Relation r{m1, m2, std::vector<bool>(m1 * m2, false)};
  for (const auto& p : parts)
    for (std::size_t a : p.left)
      for (std::size_t b : p.atom) r.cells[a * m2 + b] = true;
  return r;
}

RectDecomposition fv_decompose(const Relation& r) {
  require(r.cells.size() == r.m1 * r.m2, "fv_decompose: grid size does not match M1 x M2");
  // b and b' lie in the same atom iff every section contains both or neither,
  // so the column of b is its signature. Columns are visited in M2 order,
  // which orders the atoms by minimum.
  std::map<std::vector<bool>, std::size_t> index;
  RectDecomposition d;
  for (std::size_t b = 0; b < r.m2; ++b) {
    std::vector<bool> column(r.m1);
    for (std::size_t a = 0; a < r.m1; ++a) column[a] = r(a, b);
    if (std::none_of(column.begin(), column.end(), [](bool v) { return v; })) continue;
    auto [it, fresh] = index.emplace(column, d.parts.size());
    if (fresh) {
      Rectangle rect;
      for (std::size_t a = 0; a < r.m1; ++a)
        if (column[a]) rect.left.push_back(a);
      d.parts.push_back(std::move(rect));
    }
    d.parts[it->second].atom.push_back(b);
  }
  ensure(d.reconstruct(r.m1, r.m2) == r, "fv_decompose: reconstruction differs from the relation");
  return d;
}

}  // namespace fimag
