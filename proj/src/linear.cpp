#include "fimag/linear.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "fimag/error.hpp"

namespace fimag {

namespace {

struct FieldData {
  std::size_t order, p, k;
  std::vector<unsigned> modulus;
};

const std::vector<FieldData>& field_table() {
  static const std::vector<FieldData> fields = {
      {2, 2, 1, {0, 1}},          {3, 3, 1, {0, 1}},       {5, 5, 1, {0, 1}},
      {7, 7, 1, {0, 1}},          {11, 11, 1, {0, 1}},     {13, 13, 1, {0, 1}},
      {4, 2, 2, {1, 1, 1}},       {8, 2, 3, {1, 1, 0, 1}}, {9, 3, 2, {2, 2, 1}},
      {16, 2, 4, {1, 1, 0, 0, 1}},
  };
  return fields;
}

bool is_prime_power(std::size_t q) {
  if (q < 2) return false;
  std::size_t p = 2;
  while (q % p) ++p;
  while (q % p == 0) q /= p;
  return q == 1;
}

}  // namespace

FiniteField::FiniteField(std::size_t order) : p_(0), k_(0), q_(order) {
  const auto& fields = field_table();
  auto it = std::find_if(fields.begin(), fields.end(), [&](const FieldData& s) { return s.order == order; });
  require(it != fields.end(), "FiniteField: unsupported order " + std::to_string(order));
  p_ = it->p;
  k_ = it->k;
  modulus_ = it->modulus;

  auto digits = [&](Elem a) {
    std::vector<unsigned> c(k_);
    for (std::size_t i = 0; i < k_; ++i) {
      c[i] = a % p_;
      a /= static_cast<Elem>(p_);
    }
    return c;
  };
  auto encode = [&](const std::vector<unsigned>& c) {
    Elem v = 0;
    for (std::size_t i = k_; i-- > 0;) v = v * static_cast<Elem>(p_) + c[i];
    return v;
  };
  add_.assign(q_ * q_, 0);
  mul_.assign(q_ * q_, 0);
  for (Elem a = 0; a < q_; ++a)
    for (Elem b = 0; b < q_; ++b) {
      auto ca = digits(a), cb = digits(b);
      std::vector<unsigned> s(k_);
      for (std::size_t i = 0; i < k_; ++i) s[i] = (ca[i] + cb[i]) % p_;
      add_[a * q_ + b] = encode(s);
      std::vector<unsigned> prod(2 * k_ - 1, 0);
      for (std::size_t i = 0; i < k_; ++i)
        for (std::size_t j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p_;
      // Reduce by the monic modulus from the top degree down.
      for (std::size_t d = prod.size(); d-- > k_;) {
        unsigned lead = prod[d];
        if (!lead) continue;
        for (std::size_t i = 0; i <= k_; ++i) {
          std::size_t pos = d - k_ + i;
          prod[pos] = (prod[pos] + p_ * p_ - (lead * modulus_[i]) % p_) % p_;
        }
      }
      prod.resize(k_);
      mul_[a * q_ + b] = encode(prod);
    }
}

Elem FiniteField::neg(Elem a) const {
  for (Elem b = 0; b < q_; ++b)
    if (add(a, b) == 0) return b;
  throw CheckFailure("FiniteField: no additive inverse");
}

Elem FiniteField::inv(Elem a) const {
  require(a != 0, "FiniteField: zero has no inverse");
  for (Elem b = 1; b < q_; ++b)
    if (mul(a, b) == 1) return b;
  throw CheckFailure("FiniteField: no multiplicative inverse");
}

Elem FiniteField::pow(Elem a, std::size_t e) const {
  Elem r = one();
  for (std::size_t i = 0; i < e; ++i) r = mul(r, a);
  return r;
}

std::size_t gl_order(std::size_t n, std::size_t f) {
  std::size_t fn = 1;
  for (std::size_t i = 0; i < n; ++i) fn *= f;
  std::size_t order = 1, fi = 1;
  for (std::size_t i = 0; i < n; ++i) {
    order *= fn - fi;
    fi *= f;
  }
  return order;
}

GammaGroup make_gl(std::size_t n, std::size_t q, std::size_t m) {
  require(is_prime_power(q), "make_gl: q = " + std::to_string(q) + " is not a prime power");
  require(n == 1 || n == 2, "make_gl: dimension must be 1 or 2");
  require(q >= 2 && q <= 5, "make_gl: q must lie in {2,3,4,5}");
  require(m >= 1 && m <= 3, "make_gl: extension degree must lie in {1,2,3}");
  std::size_t f = 1;
  for (std::size_t i = 0; i < m; ++i) f *= q;
  require(f <= 16, "make_gl: q^m = " + std::to_string(f) + " exceeds 16");
  if (gl_order(n, f) > kMaxGroupOrder)
    throw BudgetError("make_gl: |GL_" + std::to_string(n) + "(F" + std::to_string(f) + ")| = " +
                      std::to_string(gl_order(n, f)) + " exceeds the table guard");
  FiniteField F(f);
  std::size_t cells = n * n;
  std::size_t codes = 1;
  for (std::size_t i = 0; i < cells; ++i) codes *= f;

  using Mat = std::array<Elem, 4>;
  auto decode = [&](std::size_t code) {
    Mat e{};
    for (std::size_t i = cells; i-- > 0;) {
      e[i] = static_cast<Elem>(code % f);
      code /= f;
    }
    return e;
  };
  auto encode = [&](const Mat& e) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < cells; ++i) c = c * f + e[i];
    return c;
  };
  auto det = [&](const Mat& e) {
    if (n == 1) return e[0];
    return F.sub(F.mul(e[0], e[3]), F.mul(e[1], e[2]));
  };
  // dot[((x * f + y) * f + z) * f + w] = x*z + y*w
  std::vector<Elem> dot(f * f * f * f);
  for (std::size_t x = 0; x < f; ++x)
    for (std::size_t y = 0; y < f; ++y)
      for (std::size_t z = 0; z < f; ++z)
        for (std::size_t w = 0; w < f; ++w)
          dot[((x * f + y) * f + z) * f + w] = F.add(F.mul(static_cast<Elem>(x), static_cast<Elem>(z)),
                                                     F.mul(static_cast<Elem>(y), static_cast<Elem>(w)));
  auto d2 = [&](Elem x, Elem y, Elem z, Elem w) { return dot[((x * f + y) * f + z) * f + w]; };
  auto matmul = [&](const Mat& a, const Mat& b) {
    if (n == 1) return Mat{F.mul(a[0], b[0]), 0, 0, 0};
    return Mat{d2(a[0], a[1], b[0], b[2]), d2(a[0], a[1], b[1], b[3]), d2(a[2], a[3], b[0], b[2]),
               d2(a[2], a[3], b[1], b[3])};
  };

  Mat id{};
  for (std::size_t i = 0; i < n; ++i) id[i * n + i] = 1;
  std::vector<Mat> mats{id};
  for (std::size_t code = 0; code < codes; ++code) {
    auto e = decode(code);
    if (det(e) != 0 && e != id) mats.push_back(e);
  }
  const Elem unset = static_cast<Elem>(-1);
  std::vector<Elem> index(codes, unset);
  for (std::size_t i = 0; i < mats.size(); ++i) index[encode(mats[i])] = static_cast<Elem>(i);

  std::size_t order = mats.size();
  std::vector<Elem> table(order * order);
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = 0; b < order; ++b) table[a * order + b] = index[encode(matmul(mats[a], mats[b]))];
  std::string name = "GL" + std::to_string(n) + "(F" + std::to_string(f) + ")";
  FiniteGroup gl = FiniteGroup::from_trusted_table(std::move(table), name);

  FiniteGroup gamma = make_cyclic(m);
  std::vector<Elem> action(m * order);
  for (std::size_t k = 0; k < m; ++k) {
    std::size_t e = 1;
    for (std::size_t i = 0; i < k; ++i) e *= q;
    for (std::size_t a = 0; a < order; ++a) {
      Mat img{};
      for (std::size_t c = 0; c < cells; ++c) img[c] = F.pow(mats[a][c], e);
      action[k * order + a] = index[encode(img)];
    }
  }
  return GammaGroup::trusted(gamma, gl, std::move(action));
}

}  // namespace fimag
