#include "fimag/puiseux.hpp"

#include <sstream>

#include "fimag/error.hpp"

namespace fimag {

namespace {

bool in_lattice(const mpq_class& q, std::size_t denom) {
  mpz_class d(static_cast<unsigned long>(denom));
  return mpz_divisible_p(d.get_mpz_t(), q.get_den_mpz_t()) != 0;
}

mpq_class parse_rational(const std::string& s, const std::string& what) {
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0 || q.get_den() == 0)
    throw InputError("puiseux syntax: bad " + what + " '" + s + "'");
  q.canonicalize();
  return q;
}

}  // namespace

PuiseuxElement::PuiseuxElement(std::size_t conductor, std::size_t denom) : conductor_(conductor), denom_(denom) {
  require(denom >= 1, "puiseux: denominator must be positive");
  CyclotomicField::get(conductor);
}

PuiseuxElement::PuiseuxElement(std::size_t conductor, std::size_t denom, Terms terms)
    : PuiseuxElement(conductor, denom) {
  for (auto& [q, c] : terms) {
    require(c.conductor() == conductor, "puiseux: coefficient from ℚ(ζ_" + std::to_string(c.conductor()) + ")");
    require(in_lattice(q, denom), "puiseux: exponent " + q.get_str() + " not in (1/" + std::to_string(denom) + ")Z");
    if (!c.is_zero()) terms_.emplace(q, c);
  }
}

PuiseuxElement PuiseuxElement::monomial(const CycNumber& c, const mpq_class& q, std::size_t denom) {
  Terms t;
  t.emplace(q, c);
  return PuiseuxElement(c.conductor(), denom, std::move(t));
}

PuiseuxElement PuiseuxElement::constant(const CycNumber& c, std::size_t denom) {
  return monomial(c, mpq_class(0), denom);
}

void PuiseuxElement::compatible(const PuiseuxElement& o) const {
  require(conductor_ == o.conductor_ && denom_ == o.denom_, "puiseux: elements of different fields");
}

PuiseuxElement PuiseuxElement::operator+(const PuiseuxElement& o) const {
  compatible(o);
  Terms t = terms_;
  for (const auto& [q, c] : o.terms_) {
    auto it = t.find(q);
    if (it == t.end()) t.emplace(q, c);
    else it->second = it->second + c;
  }
  return PuiseuxElement(conductor_, denom_, std::move(t));
}

PuiseuxElement PuiseuxElement::operator-(const PuiseuxElement& o) const {
  compatible(o);
  Terms neg;
  for (const auto& [q, c] : o.terms_) neg.emplace(q, -c);
  return *this + PuiseuxElement(conductor_, denom_, std::move(neg));
}

PuiseuxElement PuiseuxElement::operator*(const PuiseuxElement& o) const {
  compatible(o);
  Terms t;
  for (const auto& [q1, c1] : terms_)
    for (const auto& [q2, c2] : o.terms_) {
      mpq_class q = q1 + q2;
      auto prod = c1 * c2;
      auto it = t.find(q);
      if (it == t.end()) t.emplace(q, prod);
      else it->second = it->second + prod;
    }
  return PuiseuxElement(conductor_, denom_, std::move(t));
}

PuiseuxElement PuiseuxElement::pow(unsigned k) const {
  PuiseuxElement r = constant(CycNumber(conductor_, mpq_class(1)), denom_);
  for (unsigned i = 0; i < k; ++i) r = r * *this;
  return r;
}

bool PuiseuxElement::operator==(const PuiseuxElement& o) const {
  return conductor_ == o.conductor_ && denom_ == o.denom_ && terms_ == o.terms_;
}

std::string PuiseuxElement::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [q, c] : terms_) {
    if (!out.empty()) out += " ";
    std::string cs = c.str();
    if (cs.find(' ') != std::string::npos) {
      cs = "[";
      for (std::size_t i = 0; i < c.coeffs().size(); ++i) cs += (i ? "," : "") + c.coeffs()[i].get_str();
      cs += "]";
    }
    out += cs + "@" + q.get_str();
  }
  return out;
}

std::optional<mpq_class> val(const PuiseuxElement& x) {
  if (x.is_zero()) return std::nullopt;
  return x.terms().begin()->first;
}

CycNumber ac(const PuiseuxElement& x) {
  require(!x.is_zero(), "ac: angular component of zero");
  return x.terms().begin()->second;
}

CycNumber parse_cyc(const std::string& text, std::size_t conductor) {
  if (text.empty()) throw InputError("puiseux syntax: empty coefficient");
  if (text.front() == '[') {
    if (text.back() != ']') throw InputError("puiseux syntax: unterminated coefficient list '" + text + "'");
    std::vector<mpq_class> p;
    std::stringstream ss(text.substr(1, text.size() - 2));
    std::string item;
    while (std::getline(ss, item, ',')) p.push_back(parse_rational(item, "coefficient"));
    return CycNumber(conductor, std::move(p));
  }
  auto zpos = text.find('z');
  if (zpos == std::string::npos) return CycNumber(conductor, parse_rational(text, "coefficient"));
  mpq_class r = 1;
  if (zpos > 0) {
    if (zpos == 1 && text[0] == '-') r = -1;
    else if (text[zpos - 1] == '*') r = parse_rational(text.substr(0, zpos - 1), "coefficient");
    else throw InputError("puiseux syntax: bad coefficient '" + text + "'");
  }
  long long k = 1;
  std::string rest = text.substr(zpos + 1);
  if (!rest.empty()) {
    if (rest[0] != '^') throw InputError("puiseux syntax: bad coefficient '" + text + "'");
    try {
      std::size_t used = 0;
      k = std::stoll(rest.substr(1), &used);
      if (used != rest.size() - 1) throw std::invalid_argument("trailing");
    } catch (const std::logic_error&) {
      throw InputError("puiseux syntax: bad exponent of z in '" + text + "'");
    }
  }
  return CycNumber::zeta(conductor, k) * CycNumber(conductor, r);
}

PuiseuxElement parse_puiseux(const std::string& text, std::size_t conductor, std::size_t denom) {
  PuiseuxElement x(conductor, denom);
  std::stringstream ss(text);
  std::string tok;
  while (ss >> tok) {
    if (tok == "0") continue;
    auto at = tok.find('@');
    if (at == std::string::npos) throw InputError("puiseux syntax: term '" + tok + "' lacks '@'");
    auto c = parse_cyc(tok.substr(0, at), conductor);
    auto q = parse_rational(tok.substr(at + 1), "exponent");
    x = x + PuiseuxElement::monomial(c, q, denom);
  }
  return x;
}

}  // namespace fimag
