#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "fimag/group.hpp"

namespace fimag {

// A partial function between finite sorts whose values are indices. The
// graph is kept sorted by domain value, which is the canonical form.
class TwistCode {
 public:
  TwistCode() = default;
  // Sorts the graph; rejects a repeated domain value.
  explicit TwistCode(std::vector<std::pair<Elem, Elem>> graph);

  const std::vector<std::pair<Elem, Elem>>& graph() const { return graph_; }
  std::size_t size() const { return graph_.size(); }
  bool empty() const { return graph_.empty(); }
  std::optional<Elem> at(Elem x) const;
  bool operator==(const TwistCode&) const = default;
  auto operator<=>(const TwistCode&) const = default;

 private:
  std::vector<std::pair<Elem, Elem>> graph_;
};

// h: F -> S1 x S2 with the value (s1, s2) stored as s1 * s2_size + s2.
std::pair<TwistCode, TwistCode> embed_pair_twist(const TwistCode& h, std::size_t s2_size);
// Inverse of embed_pair_twist; the two codes must share their domain.
TwistCode decode_pair_twist(const TwistCode& first, const TwistCode& second, std::size_t s2_size);

// (b, a_1..a_k) -> (b^a_1, ..., b^a_k) for a cyclic group B of order d and
// exponents a_i in [1..d]. Domain points are numbered b * d^k + Σ (a_i - 1) d^(k-i),
// targets t_1 * d^(k-1) + ... + t_k.
class CyclicPowerCover {
 public:
  CyclicPowerCover(FiniteGroup b, std::size_t k);

  const FiniteGroup& group() const { return b_; }
  Elem generator() const { return gen_; }
  std::size_t d() const { return b_.order(); }
  std::size_t k() const { return k_; }
  std::size_t domain_size() const { return d() * targets_; }
  std::size_t target_size() const { return targets_; }

  std::uint64_t encode_domain(Elem b, const std::vector<std::size_t>& exps) const;
  std::pair<Elem, std::vector<std::size_t>> decode_domain(std::uint64_t u) const;
  std::uint64_t encode_target(const std::vector<Elem>& t) const;
  std::vector<Elem> decode_target(std::uint64_t t) const;

  std::uint64_t apply(std::uint64_t u) const;
  // Least domain point mapping to t.
  std::optional<std::uint64_t> preimage(std::uint64_t t) const;
  bool verify_surjective() const;

 private:
  FiniteGroup b_;
  Elem gen_ = 0;
  std::size_t k_;
  std::size_t targets_ = 1;
  std::vector<std::uint64_t> section_;  // least preimage per target, when small enough to tabulate
};

// Transport of a partial function on B^k to one on the cover domain: x ∘ h.
TwistCode embed_twist_by_power(const TwistCode& x, const CyclicPowerCover& cover);
TwistCode decode_twist_by_power(const TwistCode& y, const CyclicPowerCover& cover);

struct GammaCode {
  std::vector<mpq_class> image;    // sorted, distinct
  std::vector<std::size_t> ranks;  // ranks[i] = position of h(i) in image
};

GammaCode code_gamma_function(const std::vector<mpq_class>& h);
std::vector<mpq_class> decode_gamma_function(const GammaCode& c);

// Least prime >= n (n >= 1).
std::size_t least_prime_at_least(std::size_t n);

// Rank r is coded as the down-set {0, ..., r} of F_p. p defaults to the least
// prime >= n; an explicit p must be prime and >= n.
std::vector<std::vector<std::size_t>> rank_as_prime_field_map(const std::vector<std::size_t>& ranks,
                                                               std::optional<std::size_t> p = std::nullopt);
std::vector<std::size_t> decode_rank_map(const std::vector<std::vector<std::size_t>>& sets);

struct StabilizerCode {
  std::vector<std::size_t> y;           // Y ⊆ Z/n
  std::vector<std::size_t> stabilizer;  // {g in (Z/n)^* : gY = Y}, by enumeration
};

StabilizerCode subgroup_stabilizer_code(std::size_t n, std::vector<std::size_t> h);

// A relation R ⊆ M1 x M2 as a row-major 0/1 grid, rows indexed by M1.
struct Relation {
  std::size_t m1 = 0, m2 = 0;
  std::vector<bool> cells;

  bool operator()(std::size_t a, std::size_t b) const { return cells[a * m2 + b]; }
  bool operator==(const Relation&) const = default;
};

struct Rectangle {
  std::vector<std::size_t> left;  // ⊆ M1
  std::vector<std::size_t> atom;  // ⊆ M2
  bool operator==(const Rectangle&) const = default;
};

struct RectDecomposition {
  std::vector<Rectangle> parts;
  Relation reconstruct(std::size_t m1, std::size_t m2) const;
};

// Atoms of the Boolean algebra generated by the sections R(a), ordered by
// minimum; atoms with empty left part are dropped.
RectDecomposition fv_decompose(const Relation& r);

}  // namespace fimag
