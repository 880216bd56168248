#include <algorithm>
#include <cctype>
#include <random>

#include "dlip/constacyclic.hpp"

namespace dlip {

namespace {

void trim_elems(std::vector<Elem>& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

// Coefficient text without the surrounding parentheses.
std::string coeff_text(const Ring& r, Elem c) {
  if (r.family() != Family::ChainFqGamma) return std::to_string(c);
  std::string out;
  for (unsigned j = 0; j < r.t(); ++j) {
    const unsigned d = r.digit(c, j);
    if (d == 0) continue;
    std::string term;
    if (j == 0)
      term = std::to_string(d);
    else
      term = (d == 1 ? "" : std::to_string(d)) + "g" + (j == 1 ? "" : "^" + std::to_string(j));
    out += (out.empty() ? "" : "+") + term;
  }
  return out.empty() ? "0" : out;
}

}  // namespace

Poly::Poly(RingPtr ring, std::vector<Elem> coeffs) : ring_(std::move(ring)), c_(std::move(coeffs)) {
  if (!ring_->is_chain()) throw Error(ErrorKind::NotAChainRing, "polynomials need a chain ring, got " + ring_->name());
  trim_elems(c_);
}

Poly Poly::monomial(RingPtr ring, Elem c, std::size_t degree) {
  std::vector<Elem> v(degree + 1, 0);
  v[degree] = c;
  return Poly(std::move(ring), std::move(v));
}

Poly Poly::x_n_minus(RingPtr ring, std::size_t n, Elem lambda) {
  std::vector<Elem> v(n + 1, 0);
  v[n] = ring->one();
  v[0] = ring->neg(lambda);
  return Poly(std::move(ring), std::move(v));
}

std::string Poly::format() const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    const std::string ct = coeff_text(*ring_, c_[i]);
    const bool compound = ct.find('+') != std::string::npos;
    std::string term;
    if (i == 0) {
      term = compound && c_.size() > 1 ? "(" + ct + ")" : ct;
    } else {
      if (c_[i] != ring_->one()) term = compound ? "(" + ct + ")" : ct;
      term += "x";
      if (i > 1) term += "^" + std::to_string(i);
    }
    out += (out.empty() ? "" : "+") + term;
  }
  return out;
}

Poly operator+(const Poly& a, const Poly& b) {
  require_same_ring(*a.ring(), *b.ring());
  std::vector<Elem> c(std::max(a.coeffs().size(), b.coeffs().size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.ring()->add(a.coeff(i), b.coeff(i));
  return Poly(a.ring(), std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) {
  require_same_ring(*a.ring(), *b.ring());
  std::vector<Elem> c(std::max(a.coeffs().size(), b.coeffs().size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.ring()->sub(a.coeff(i), b.coeff(i));
  return Poly(a.ring(), std::move(c));
}

Poly operator*(const Poly& a, const Poly& b) {
  require_same_ring(*a.ring(), *b.ring());
  if (a.is_zero() || b.is_zero()) return Poly(a.ring(), {});
  const Ring& r = *a.ring();
  std::vector<Elem> c(a.coeffs().size() + b.coeffs().size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) c[i + j] = r.add(c[i + j], r.mul(a.coeffs()[i], b.coeffs()[j]));
  return Poly(a.ring(), std::move(c));
}

Poly scale(Elem c, const Poly& a) {
  std::vector<Elem> v(a.coeffs());
  for (auto& x : v) x = a.ring()->mul(c, x);
  return Poly(a.ring(), std::move(v));
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  require_same_ring(*a.ring(), *b.ring());
  const Ring& r = *a.ring();
  if (b.is_zero() || !r.is_unit(b.lead()))
    throw Error(ErrorKind::NonUnitLeadingCoefficient, "cannot divide by " + b.format());
  const Elem inv = r.inv(b.lead());
  std::vector<Elem> rem(a.coeffs());
  const std::size_t db = b.coeffs().size() - 1;
  if (rem.size() <= db) return {Poly(a.ring(), {}), a};
  std::vector<Elem> quo(rem.size() - db, 0);
  for (std::size_t i = rem.size(); i-- > db;) {
    const Elem f = r.mul(rem[i], inv);
    if (f == 0) continue;
    quo[i - db] = f;
    for (std::size_t j = 0; j <= db; ++j) rem[i - db + j] = r.sub(rem[i - db + j], r.mul(f, b.coeffs()[j]));
  }
  return {Poly(a.ring(), std::move(quo)), Poly(a.ring(), std::move(rem))};
}

Poly reciprocal(const Poly& a) {
  const Ring& r = *a.ring();
  if (a.is_zero() || !r.is_unit(a.coeff(0)))
    throw Error(ErrorKind::NonUnitConstantTerm, "reciprocal of " + a.format() + " needs a unit constant term");
  const Elem inv = r.inv(a.coeff(0));
  std::vector<Elem> c(a.coeffs().rbegin(), a.coeffs().rend());
  for (auto& x : c) x = r.mul(inv, x);
  return Poly(a.ring(), std::move(c));
}

bool is_self_reciprocal(const Poly& a) { return reciprocal(a) == a; }

Poly parse_poly(const RingPtr& ring, const std::string& raw) {
  std::string text;
  for (char ch : raw)
    if (!std::isspace(static_cast<unsigned char>(ch))) text += ch;
  if (text.empty()) throw Error(ErrorKind::ParseError, "empty polynomial");
  const Ring& r = *ring;
  std::vector<Elem> coeffs;
  auto add_term = [&](const std::string& term, bool negate) {
    if (term.empty()) throw Error(ErrorKind::ParseError, "empty term in '" + raw + "'");
    std::size_t xpos = std::string::npos;
    int depth = 0;
    for (std::size_t i = 0; i < term.size(); ++i) {
      if (term[i] == '(') ++depth;
      if (term[i] == ')') --depth;
      if (term[i] == 'x' && depth == 0) xpos = i;
    }
    std::string coef = xpos == std::string::npos ? term : term.substr(0, xpos);
    std::size_t degree = 0;
    if (xpos != std::string::npos) {
      degree = 1;
      const std::string rest = term.substr(xpos + 1);
      if (!rest.empty()) {
        if (rest[0] != '^' || rest.size() < 2) throw Error(ErrorKind::ParseError, "bad exponent in '" + term + "'");
        try {
          degree = std::stoul(rest.substr(1));
        } catch (const std::exception&) {
          throw Error(ErrorKind::ParseError, "bad exponent in '" + term + "'");
        }
      }
    }
    if (!coef.empty() && coef.back() == '*') coef.pop_back();
    if (coef.size() >= 2 && coef.front() == '(' && coef.back() == ')') coef = coef.substr(1, coef.size() - 2);
    Elem c = coef.empty() ? r.one() : r.parse_element(coef);
    if (negate) c = r.neg(c);
    if (coeffs.size() <= degree) coeffs.resize(degree + 1, 0);
    coeffs[degree] = r.add(coeffs[degree], c);
  };
  int depth = 0;
  std::size_t start = 0;
  bool negate = false;
  if (text[0] == '+' || text[0] == '-') {
    negate = text[0] == '-';
    start = 1;
  }
  for (std::size_t i = start; i <= text.size(); ++i) {
    if (i < text.size()) {
      if (text[i] == '(') ++depth;
      if (text[i] == ')') --depth;
    }
    if (i == text.size() || (depth == 0 && (text[i] == '+' || text[i] == '-') && i > start)) {
      add_term(text.substr(start, i - start), negate);
      if (i < text.size()) negate = text[i] == '-';
      start = i + 1;
    }
  }
  return Poly(ring, std::move(coeffs));
}

namespace fq {

namespace {

unsigned inv_mod(unsigned q, unsigned a) {
  unsigned r = 1, b = a % q;
  for (unsigned e = q - 2; e; e >>= 1, b = b * b % q)
    if (e & 1) r = r * b % q;
  return r;
}

}  // namespace

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly add(unsigned q, const Poly& a, const Poly& b) {
  Poly c(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = ((i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0)) % q;
  trim(c);
  return c;
}

Poly sub(unsigned q, const Poly& a, const Poly& b) {
  Poly c(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = ((i < a.size() ? a[i] : 0) + q - (i < b.size() ? b[i] : 0)) % q;
  trim(c);
  return c;
}

Poly mul(unsigned q, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % q;
  trim(c);
  return c;
}

std::pair<Poly, Poly> divmod(unsigned q, const Poly& a, const Poly& b) {
  if (b.empty()) throw Error(ErrorKind::PreconditionFailed, "division by the zero polynomial");
  Poly rem = a;
  trim(rem);
  const std::size_t db = b.size() - 1;
  if (rem.size() <= db) return {{}, rem};
  const unsigned inv = inv_mod(q, b.back());
  Poly quo(rem.size() - db, 0);
  for (std::size_t i = rem.size(); i-- > db;) {
    const unsigned f = rem[i] * inv % q;
    if (f == 0) continue;
    quo[i - db] = f;
    for (std::size_t j = 0; j <= db; ++j) rem[i - db + j] = (rem[i - db + j] + q - f * b[j] % q) % q;
  }
  trim(quo);
  trim(rem);
  return {quo, rem};
}

Poly monic(unsigned q, const Poly& a) {
  if (a.empty()) return a;
  const unsigned inv = inv_mod(q, a.back());
  Poly c = a;
  for (auto& x : c) x = x * inv % q;
  return c;
}

Poly gcd(unsigned q, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = divmod(q, a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(q, a);
}

std::tuple<Poly, Poly, Poly> ext_gcd(unsigned q, const Poly& a, const Poly& b) {
  Poly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  trim(r0);
  trim(r1);
  while (!r1.empty()) {
    auto [quo, rem] = divmod(q, r0, r1);
    Poly s2 = sub(q, s0, mul(q, quo, s1));
    Poly t2 = sub(q, t0, mul(q, quo, t1));
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.empty()) return {r0, s0, t0};
  const Poly c{inv_mod(q, r0.back())};
  return {mul(q, r0, c), mul(q, s0, c), mul(q, t0, c)};
}

Poly powmod(unsigned q, Poly base, std::uint64_t e, const Poly& mod) {
  Poly result{1};
  result = divmod(q, result, mod).second;
  base = divmod(q, base, mod).second;
  while (e) {
    if (e & 1) result = divmod(q, mul(q, result, base), mod).second;
    base = divmod(q, mul(q, base, base), mod).second;
    e >>= 1;
  }
  return result;
}

namespace {

// Splits a product of distinct irreducibles of degree d.
void equal_degree_split(unsigned q, const Poly& g, std::size_t d, std::mt19937_64& rng, std::vector<Poly>& out) {
  const std::size_t deg = g.size() - 1;
  if (deg == d) {
    out.push_back(g);
    return;
  }
  std::uniform_int_distribution<unsigned> coeff(0, q - 1);
  while (true) {
    Poly a(deg);
    for (auto& c : a) c = coeff(rng);
    trim(a);
    if (a.size() < 2) continue;
    Poly b;
    if (q == 2) {
      // Trace a + a^2 + ... + a^{2^{d-1}}.
      Poly power = divmod(q, a, g).second;
      b = power;
      for (std::size_t i = 1; i < d; ++i) {
        power = divmod(q, mul(q, power, power), g).second;
        b = add(q, b, power);
      }
    } else {
      // a^{(q^d - 1)/2} = (a^{1 + q + ... + q^{d-1}})^{(q-1)/2}.
      Poly frob = divmod(q, a, g).second, norm = frob;
      for (std::size_t i = 1; i < d; ++i) {
        frob = powmod(q, frob, q, g);
        norm = divmod(q, mul(q, norm, frob), g).second;
      }
      b = sub(q, powmod(q, norm, (q - 1) / 2, g), Poly{1});
    }
    Poly f = gcd(q, g, b);
    if (f.size() > 1 && f.size() < g.size()) {
      equal_degree_split(q, f, d, rng, out);
      equal_degree_split(q, divmod(q, g, f).first, d, rng, out);
      return;
    }
  }
}

bool factor_less(const Poly& a, const Poly& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
}

}  // namespace

std::vector<Poly> factor_squarefree(unsigned q, const Poly& input, std::uint64_t seed) {
  Poly f = monic(q, input);
  trim(f);
  if (f.size() <= 1) return {};
  std::mt19937_64 rng(seed);
  std::vector<Poly> out;
  const Poly x{0, 1};
  Poly h = divmod(q, x, f).second;
  for (std::size_t d = 1; 2 * d <= f.size() - 1; ++d) {
    h = powmod(q, h, q, f);
    Poly g = gcd(q, f, sub(q, h, x));
    if (g.size() > 1) {
      equal_degree_split(q, g, d, rng, out);
      f = divmod(q, f, g).first;
      h = divmod(q, h, f).second;
    }
  }
  if (f.size() > 1) out.push_back(monic(q, f));
  std::sort(out.begin(), out.end(), factor_less);
  return out;
}

bool is_irreducible(unsigned q, const Poly& f) {
  Poly m = f;
  trim(m);
  if (m.size() < 2) return false;
  if (gcd(q, m, {0, 1}).size() > 1 && m.size() > 2) return false;
  const Poly x{0, 1};
  Poly h = divmod(q, x, m).second;
  for (std::size_t d = 1; 2 * d <= m.size() - 1; ++d) {
    h = powmod(q, h, q, m);
    if (gcd(q, m, sub(q, h, x)).size() > 1) return false;
  }
  return true;
}

}  // namespace fq

std::vector<unsigned> residue(const Poly& a) {
  std::vector<unsigned> c;
  for (Elem e : a.coeffs()) c.push_back(a.ring()->residue(e));
  fq::trim(c);
  return c;
}

Poly lift(const RingPtr& ring, const std::vector<unsigned>& a) {
  std::vector<Elem> c;
  for (unsigned x : a) c.push_back(ring->lift(x));
  return Poly(ring, std::move(c));
}

Poly gcd_residue(const Poly& a, const Poly& b) {
  require_same_ring(*a.ring(), *b.ring());
  return lift(a.ring(), fq::gcd(a.ring()->q(), residue(a), residue(b)));
}

}  // namespace dlip
