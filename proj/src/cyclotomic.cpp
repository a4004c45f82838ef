#include "fimag/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numeric>

#include "fimag/error.hpp"

namespace fimag {

namespace {

void trim(std::vector<mpq_class>& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact quotient of a by a monic b.
std::vector<mpq_class> divide_exact(std::vector<mpq_class> a, const std::vector<mpq_class>& b) {
  trim(a);
  const std::size_t db = b.size() - 1;
  if (a.size() < b.size()) return {};
  std::vector<mpq_class> q(a.size() - db);
  for (std::size_t i = a.size(); i-- > db;) {
    mpq_class c = a[i];
    q[i - db] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  trim(a);
  ensure(a.empty(), "cyclotomic_polynomial: division left a remainder");
  return q;
}

}  // namespace

std::size_t euler_phi(std::size_t n) {
  require(n >= 1, "euler_phi: n must be positive");
  std::size_t r = 0;
  for (std::size_t k = 1; k <= n; ++k)
    if (std::gcd(k, n) == 1) ++r;
  return r;
}

std::vector<mpq_class> cyclotomic_polynomial(std::size_t n) {
  require(n >= 1 && n <= kMaxConductor, "cyclotomic_polynomial: conductor " + std::to_string(n) + " out of range");
  std::vector<mpq_class> p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (std::size_t d = 1; d < n; ++d)
    if (n % d == 0) p = divide_exact(p, CyclotomicField::get(d)->modulus());
  return p;
}

CyclotomicField::CyclotomicField(std::size_t n) : n_(n), poly_(cyclotomic_polynomial(n)) {}

std::shared_ptr<const CyclotomicField> CyclotomicField::get(std::size_t n) {
  require(n >= 1 && n <= kMaxConductor, "cyclotomic field: conductor " + std::to_string(n) + " out of range");
  static std::recursive_mutex mu;
  static std::map<std::size_t, std::shared_ptr<const CyclotomicField>> cache;
  std::lock_guard<std::recursive_mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto f = std::make_shared<const CyclotomicField>(n);
  cache.emplace(n, f);
  return f;
}

std::vector<mpq_class> CyclotomicField::reduce(std::vector<mpq_class> p) const {
  const std::size_t d = degree();
  for (std::size_t i = p.size(); i-- > d;) {
    mpq_class c = p[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= d; ++j) p[i - d + j] -= c * poly_[j];
  }
  p.resize(d, 0);
  return p;
}

CycNumber::CycNumber(std::size_t n) : field_(CyclotomicField::get(n)), c_(field_->degree(), 0) {}

CycNumber::CycNumber(std::size_t n, const mpq_class& r) : CycNumber(n) {
  if (!c_.empty()) c_[0] = r;
}

CycNumber::CycNumber(std::size_t n, std::vector<mpq_class> poly) : field_(CyclotomicField::get(n)) {
  c_ = field_->reduce(std::move(poly));
}

CycNumber CycNumber::zeta(std::size_t n, long long k) {
  long long m = static_cast<long long>(n);
  long long e = ((k % m) + m) % m;
  std::vector<mpq_class> p(static_cast<std::size_t>(e) + 1, 0);
  p[static_cast<std::size_t>(e)] = 1;
  return CycNumber(n, std::move(p));
}

bool CycNumber::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

bool CycNumber::is_one() const {
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != (i == 0 ? 1 : 0)) return false;
  return true;
}

bool CycNumber::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

void CycNumber::same_field(const CycNumber& o) const {
  if (field_->conductor() != o.field_->conductor())
    throw InputError("cyclotomic arithmetic: conductors " + std::to_string(conductor()) + " and " +
                     std::to_string(o.conductor()) + " differ");
}

CycNumber CycNumber::operator+(const CycNumber& o) const {
  same_field(o);
  auto c = c_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c_[i];
  return CycNumber(field_, std::move(c));
}

CycNumber CycNumber::operator-(const CycNumber& o) const {
  same_field(o);
  auto c = c_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.c_[i];
  return CycNumber(field_, std::move(c));
}

CycNumber CycNumber::operator-() const {
  auto c = c_;
  for (auto& x : c) x = -x;
  return CycNumber(field_, std::move(c));
}

CycNumber CycNumber::operator*(const CycNumber& o) const {
  same_field(o);
  std::vector<mpq_class> p(c_.empty() ? 0 : 2 * c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < c_.size(); ++j) p[i + j] += c_[i] * o.c_[j];
  }
  return CycNumber(field_, field_->reduce(std::move(p)));
}

CycNumber CycNumber::inverse() const {
  require(!is_zero(), "cyclotomic arithmetic: inverse of zero");
  // Solve x·y = 1 for y: the matrix of multiplication by x has columns x·ζ^j.
  const std::size_t d = c_.size();
  std::vector<std::vector<mpq_class>> m(d, std::vector<mpq_class>(d + 1, 0));
  for (std::size_t j = 0; j < d; ++j) {
    auto col = (*this * zeta(conductor(), static_cast<long long>(j))).c_;
    for (std::size_t i = 0; i < d; ++i) m[i][j] = col[i];
  }
  m[0][d] = 1;
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t piv = col;
    while (piv < d && m[piv][col] == 0) ++piv;
    ensure(piv < d, "cyclotomic arithmetic: singular multiplication matrix");
    std::swap(m[piv], m[col]);
    mpq_class inv = 1 / m[col][col];
    for (std::size_t k = col; k <= d; ++k) m[col][k] *= inv;
    for (std::size_t r = 0; r < d; ++r) {
      if (r == col || m[r][col] == 0) continue;
      mpq_class f = m[r][col];
      for (std::size_t k = col; k <= d; ++k) m[r][k] -= f * m[col][k];
    }
  }
  std::vector<mpq_class> y(d);
  for (std::size_t i = 0; i < d; ++i) y[i] = m[i][d];
  return CycNumber(field_, std::move(y));
}

CycNumber CycNumber::operator/(const CycNumber& o) const { return *this * o.inverse(); }

CycNumber CycNumber::pow(long long k) const {
  CycNumber base = k < 0 ? inverse() : *this;
  unsigned long long e = k < 0 ? static_cast<unsigned long long>(-k) : static_cast<unsigned long long>(k);
  CycNumber r(conductor(), mpq_class(1));
  while (e) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

bool CycNumber::operator==(const CycNumber& o) const {
  return conductor() == o.conductor() && c_ == o.c_;
}

CycNumber CycNumber::galois(long long u) const {
  const long long n = static_cast<long long>(conductor());
  long long uu = ((u % n) + n) % n;
  require(std::gcd(uu, n) == 1, "cyclotomic galois: " + std::to_string(u) + " is not a unit mod " + std::to_string(n));
  std::vector<mpq_class> p(static_cast<std::size_t>(n), 0);
  for (std::size_t i = 0; i < c_.size(); ++i) p[static_cast<std::size_t>(uu * static_cast<long long>(i) % n)] += c_[i];
  return CycNumber(conductor(), std::move(p));
}

CycNumber CycNumber::embed(std::size_t m) const {
  require(m % conductor() == 0, "cyclotomic embed: " + std::to_string(conductor()) + " does not divide " + std::to_string(m));
  const std::size_t step = m / conductor();
  std::vector<mpq_class> p(c_.empty() ? 1 : (c_.size() - 1) * step + 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) p[i * step] = c_[i];
  return CycNumber(m, std::move(p));
}

std::string CycNumber::str() const {
  std::string out;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    std::string c = c_[i].get_str();
    std::string mono = i == 0 ? "" : (i == 1 ? "z" : "z^" + std::to_string(i));
    std::string term;
    if (mono.empty()) term = c;
    else if (c_[i] == 1) term = mono;
    else if (c_[i] == -1) term = "-" + mono;
    else term = c + "*" + mono;
    if (out.empty()) out = term;
    else if (term[0] == '-') out += " - " + term.substr(1);
    else out += " + " + term;
  }
  return out.empty() ? "0" : out;
}

bool contains_roots_of_unity(std::size_t big_n, std::size_t n) {
  return n >= 1 && (big_n % n == 0 || (big_n % 2 == 1 && (2 * big_n) % n == 0));
}

CycNumber root_of_unity(std::size_t big_n, std::size_t n) {
  require(contains_roots_of_unity(big_n, n),
          "root_of_unity: μ_" + std::to_string(n) + " is not contained in ℚ(ζ_" + std::to_string(big_n) + ")");
  if (big_n % n == 0) return CycNumber::zeta(big_n, static_cast<long long>(big_n / n));
  // N odd: ζ_2N = -ζ_N^((N+1)/2).
  CycNumber z2 = -CycNumber::zeta(big_n, static_cast<long long>((big_n + 1) / 2));
  return z2.pow(static_cast<long long>(2 * big_n / n));
}

}  // namespace fimag
