#include "dlip/ring.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <sstream>

namespace dlip {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonPrimeModulus: return "NonPrimeModulus";
    case ErrorKind::UnsupportedFamily: return "UnsupportedFamily";
    case ErrorKind::RingMismatch: return "RingMismatch";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::NotLocal: return "NotLocal";
    case ErrorKind::ComponentMismatch: return "ComponentMismatch";
    case ErrorKind::ClosureTooLarge: return "ClosureTooLarge";
    case ErrorKind::NotAPowerOfQ: return "NotAPowerOfQ";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::NotAChainRing: return "NotAChainRing";
    case ErrorKind::NotAParityCheck: return "NotAParityCheck";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::NonUnitLeadingCoefficient: return "NonUnitLeadingCoefficient";
    case ErrorKind::NonUnitConstantTerm: return "NonUnitConstantTerm";
    case ErrorKind::NotCoprimeLength: return "NotCoprimeLength";
    case ErrorKind::NotADivisor: return "NotADivisor";
    case ErrorKind::BrokenChain: return "BrokenChain";
    case ErrorKind::CanonicalizationMismatch: return "CanonicalizationMismatch";
    case ErrorKind::MismatchedConstacyclicity: return "MismatchedConstacyclicity";
    case ErrorKind::SameResidueLambda: return "SameResidueLambda";
    case ErrorKind::NoSquareRootOfMinusOne: return "NoSquareRootOfMinusOne";
    case ErrorKind::UnsupportedRing: return "UnsupportedRing";
    case ErrorKind::ZeroCode: return "ZeroCode";
    case ErrorKind::NegativeParameter: return "NegativeParameter";
    case ErrorKind::TauMismatch: return "TauMismatch";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

void require_same_ring(const Ring& a, const Ring& b) {
  if (!a.same_as(b)) throw Error(ErrorKind::RingMismatch, a.name() + " vs " + b.name());
}

namespace {

std::uint64_t ipow(std::uint64_t base, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= base;
  return r;
}

constexpr std::uint64_t kTableLimit = 1024;
constexpr std::uint64_t kMaxRingSize = std::uint64_t{1} << 32;

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Splits on commas at parenthesis/bracket depth zero.
std::vector<std::string> split_top_level(const std::string& s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
  return out;
}

unsigned parse_unsigned(const std::string& s, const std::string& context) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw Error(ErrorKind::ParseError, "expected a non-negative integer in '" + context + "'");
  return static_cast<unsigned>(std::stoul(s));
}

bool parse_integer(const std::string& s, long long& out) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (std::size_t j = i; j < s.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) return false;
  out = std::stoll(s);
  return true;
}

}  // namespace

std::string RingSpec::to_string() const {
  std::ostringstream os;
  switch (family) {
    case Family::PrimeField: os << "F:" << p; break;
    case Family::ChainZ: os << "Z:" << p << '^' << t; break;
    case Family::ChainFqGamma: os << "Fgamma:" << p << '^' << t; break;
    case Family::LocalU: os << "U:" << k; break;
    case Family::CrtProduct:
      os << "CRT(";
      for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? "," : "") << parts[i].to_string();
      os << ')';
      break;
  }
  return os.str();
}

RingSpec RingSpec::parse(const std::string& raw) {
  const std::string text = trim(raw);
  if (text.rfind("CRT(", 0) == 0) {
    if (text.back() != ')') throw Error(ErrorKind::ParseError, "unterminated CRT(...) in '" + text + "'");
    std::vector<RingSpec> parts;
    for (const auto& piece : split_top_level(text.substr(4, text.size() - 5))) parts.push_back(parse(piece));
    return crt(std::move(parts));
  }
  auto colon = text.find(':');
  if (colon == std::string::npos) throw Error(ErrorKind::ParseError, "ring spec '" + text + "' lacks ':'");
  const std::string tag = text.substr(0, colon);
  const std::string rest = text.substr(colon + 1);
  auto power = [&](unsigned& base, unsigned& exp) {
    auto caret = rest.find('^');
    if (caret == std::string::npos) {
      base = parse_unsigned(rest, text);
      exp = 1;
    } else {
      base = parse_unsigned(rest.substr(0, caret), text);
      exp = parse_unsigned(rest.substr(caret + 1), text);
    }
  };
  unsigned base = 0, exp = 0;
  if (tag == "F") {
    power(base, exp);
    if (exp != 1) throw Error(ErrorKind::NonPrimeModulus, "only prime fields are supported: " + text);
    return prime_field(base);
  }
  if (tag == "Z") {
    power(base, exp);
    return chain_z(base, exp);
  }
  if (tag == "Fgamma" || tag == "Fq_gamma") {
    power(base, exp);
    return chain_gamma(base, exp);
  }
  if (tag == "U") return local_u(parse_unsigned(rest, text));
  throw Error(ErrorKind::UnsupportedFamily, "unknown ring family '" + tag + "'");
}

RingPtr Ring::make(const RingSpec& spec) {
  return RingPtr(new Ring(spec));
}

Ring::Ring(RingSpec spec) : spec_(std::move(spec)) {
  switch (spec_.family) {
    case Family::PrimeField:
      if (!is_prime(spec_.p)) throw Error(ErrorKind::NonPrimeModulus, std::to_string(spec_.p));
      spec_.t = 1;
      modulus_ = spec_.p;
      size_ = spec_.p;
      break;
    case Family::ChainZ:
      if (!is_prime(spec_.p)) throw Error(ErrorKind::NonPrimeModulus, std::to_string(spec_.p));
      if (spec_.t < 1) throw Error(ErrorKind::UnsupportedFamily, "nilpotency index must be >= 1");
      modulus_ = ipow(spec_.p, spec_.t);
      size_ = modulus_;
      break;
    case Family::ChainFqGamma:
      if (!is_prime(spec_.p))
        throw Error(ErrorKind::NonPrimeModulus, "residue field size must be prime: " + std::to_string(spec_.p));
      if (spec_.t < 1) throw Error(ErrorKind::UnsupportedFamily, "nilpotency index must be >= 1");
      size_ = ipow(spec_.p, spec_.t);
      break;
    case Family::LocalU:
      if (spec_.k < 1 || spec_.k > 4) throw Error(ErrorKind::UnsupportedFamily, "LocalU supports 1 <= k <= 4");
      spec_.p = 2;
      spec_.t = spec_.k + 1;
      size_ = std::uint64_t{1} << (1u << spec_.k);
      break;
    case Family::CrtProduct: {
      if (spec_.parts.empty()) throw Error(ErrorKind::UnsupportedFamily, "empty CRT product");
      size_ = 1;
      for (const auto& part : spec_.parts) {
        if (part.family == Family::CrtProduct)
          throw Error(ErrorKind::UnsupportedFamily, "CRT components must be local rings");
        components_.push_back(make(part));
        radix_.push_back(size_);
        size_ *= components_.back()->size();
        if (size_ >= kMaxRingSize) throw Error(ErrorKind::UnsupportedFamily, "ring too large");
      }
      spec_.p = 0;
      spec_.t = 0;
      break;
    }
  }
  if (size_ >= kMaxRingSize) throw Error(ErrorKind::UnsupportedFamily, "ring too large");
  if (spec_.family == Family::CrtProduct) {
    std::vector<Elem> ones;
    for (const auto& c : components_) ones.push_back(c->one());
    one_ = combine(ones);
  } else {
    one_ = size_ == 1 ? 0 : 1;
  }
  build_tables();
}

void Ring::build_tables() {
  if (size_ > kTableLimit) return;
  const auto n = static_cast<std::size_t>(size_);
  add_table_.resize(n * n);
  mul_table_.resize(n * n);
  neg_table_.resize(n);
  for (Elem a = 0; a < n; ++a) {
    neg_table_[a] = static_cast<std::uint16_t>(neg_raw(a));
    for (Elem b = 0; b < n; ++b) {
      add_table_[a * n + b] = static_cast<std::uint16_t>(add_raw(a, b));
      mul_table_[a * n + b] = static_cast<std::uint16_t>(mul_raw(a, b));
    }
  }
}

unsigned Ring::q() const {
  if (!is_local()) throw Error(ErrorKind::NotLocal, name() + " has no single residue field");
  return spec_.p;
}

unsigned Ring::t() const {
  if (!is_local()) throw Error(ErrorKind::NotLocal, name());
  return spec_.t;
}

unsigned Ring::omega() const {
  switch (spec_.family) {
    case Family::PrimeField: return 1;
    case Family::ChainZ:
    case Family::ChainFqGamma: return spec_.t;
    case Family::LocalU: return 1u << spec_.k;
    case Family::CrtProduct: break;
  }
  throw Error(ErrorKind::NotLocal, name());
}

Elem Ring::from_int(long long value) const {
  switch (spec_.family) {
    case Family::PrimeField:
    case Family::ChainZ: {
      auto m = static_cast<long long>(modulus_);
      return static_cast<Elem>(((value % m) + m) % m);
    }
    case Family::ChainFqGamma:
    case Family::LocalU: {
      auto q = static_cast<long long>(spec_.p);
      return static_cast<Elem>(((value % q) + q) % q);
    }
    case Family::CrtProduct: {
      std::vector<Elem> parts;
      for (const auto& c : components_) parts.push_back(c->from_int(value));
      return combine(parts);
    }
  }
  return 0;
}

Elem Ring::add_raw(Elem a, Elem b) const {
  switch (spec_.family) {
    case Family::PrimeField:
    case Family::ChainZ: return static_cast<Elem>((std::uint64_t{a} + b) % modulus_);
    case Family::ChainFqGamma: {
      Elem r = 0, scale = 1;
      for (unsigned i = 0; i < spec_.t; ++i) {
        r += ((a % spec_.p + b % spec_.p) % spec_.p) * scale;
        a /= spec_.p;
        b /= spec_.p;
        scale *= spec_.p;
      }
      return r;
    }
    case Family::LocalU: return a ^ b;
    case Family::CrtProduct: {
      auto x = decompose(a), y = decompose(b);
      for (std::size_t i = 0; i < x.size(); ++i) x[i] = components_[i]->add(x[i], y[i]);
      return combine(x);
    }
  }
  return 0;
}

Elem Ring::neg_raw(Elem a) const {
  switch (spec_.family) {
    case Family::PrimeField:
    case Family::ChainZ: return static_cast<Elem>((modulus_ - a) % modulus_);
    case Family::ChainFqGamma: {
      Elem r = 0, scale = 1;
      for (unsigned i = 0; i < spec_.t; ++i) {
        r += ((spec_.p - a % spec_.p) % spec_.p) * scale;
        a /= spec_.p;
        scale *= spec_.p;
      }
      return r;
    }
    case Family::LocalU: return a;
    case Family::CrtProduct: {
      auto x = decompose(a);
      for (std::size_t i = 0; i < x.size(); ++i) x[i] = components_[i]->neg(x[i]);
      return combine(x);
    }
  }
  return 0;
}

Elem Ring::mul_raw(Elem a, Elem b) const {
  switch (spec_.family) {
    case Family::PrimeField:
    case Family::ChainZ: return static_cast<Elem>((std::uint64_t{a} * b) % modulus_);
    case Family::ChainFqGamma: {
      const unsigned t = spec_.t, q = spec_.p;
      std::vector<unsigned> x(t), y(t), z(t, 0);
      for (unsigned i = 0; i < t; ++i) {
        x[i] = a % q;
        y[i] = b % q;
        a /= q;
        b /= q;
      }
      for (unsigned i = 0; i < t; ++i)
        for (unsigned j = 0; i + j < t; ++j) z[i + j] = (z[i + j] + x[i] * y[j]) % q;
      Elem r = 0;
      for (unsigned i = t; i-- > 0;) r = r * q + z[i];
      return r;
    }
    case Family::LocalU: {
      // u_A * u_B = u_{A cup B} when A, B are disjoint, 0 otherwise.
      Elem r = 0;
      for (Elem x = a; x; x &= x - 1) {
        const unsigned A = static_cast<unsigned>(std::countr_zero(x));
        for (Elem y = b; y; y &= y - 1) {
          const unsigned B = static_cast<unsigned>(std::countr_zero(y));
          if ((A & B) == 0) r ^= Elem{1} << (A | B);
        }
      }
      return r;
    }
    case Family::CrtProduct: {
      auto x = decompose(a), y = decompose(b);
      for (std::size_t i = 0; i < x.size(); ++i) x[i] = components_[i]->mul(x[i], y[i]);
      return combine(x);
    }
  }
  return 0;
}

Elem Ring::add(Elem a, Elem b) const {
  if (!add_table_.empty()) return add_table_[a * size_ + b];
  return add_raw(a, b);
}

Elem Ring::neg(Elem a) const {
  if (!neg_table_.empty()) return neg_table_[a];
  return neg_raw(a);
}

Elem Ring::mul(Elem a, Elem b) const {
  if (!mul_table_.empty()) return mul_table_[a * size_ + b];
  return mul_raw(a, b);
}

Elem Ring::pow(Elem a, std::uint64_t e) const {
  Elem r = one_;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

bool Ring::is_unit(Elem a) const {
  if (spec_.family == Family::CrtProduct) {
    auto parts = decompose(a);
    for (std::size_t i = 0; i < parts.size(); ++i)
      if (!components_[i]->is_unit(parts[i])) return false;
    return true;
  }
  return residue(a) != 0;
}

std::uint64_t Ring::unit_count() const {
  if (spec_.family == Family::CrtProduct) {
    std::uint64_t n = 1;
    for (const auto& c : components_) n *= c->unit_count();
    return n;
  }
  return size_ - size_ / spec_.p;
}

Elem Ring::inv(Elem a) const {
  if (!is_unit(a)) throw Error(ErrorKind::NotAUnit, format(a) + " in " + name());
  // The unit group has order unit_count(), so a^(|U|-1) = a^-1.
  Elem r = pow(a, unit_count() - 1);
  if (mul(r, a) != one_) throw Error(ErrorKind::NotAUnit, "inverse search failed for " + format(a));
  return r;
}

unsigned Ring::residue(Elem a) const {
  switch (spec_.family) {
    case Family::PrimeField:
    case Family::ChainZ:
    case Family::ChainFqGamma: return a % spec_.p;
    case Family::LocalU: return a & 1u;
    case Family::CrtProduct: break;
  }
  throw Error(ErrorKind::NotLocal, "residue map needs a local ring, got " + name());
}

Elem Ring::lift(unsigned x) const {
  if (!is_local()) throw Error(ErrorKind::NotLocal, "residue lift needs a local ring, got " + name());
  return static_cast<Elem>(x % spec_.p);
}

std::vector<Elem> Ring::maximal_ideal_generators() const {
  switch (spec_.family) {
    case Family::PrimeField: return {};
    case Family::ChainZ:
    case Family::ChainFqGamma:
      if (spec_.t == 1) return {};
      return {gamma()};
    case Family::LocalU: {
      std::vector<Elem> gens;
      for (unsigned i = 0; i < spec_.k; ++i) gens.push_back(monomial(1u << i));
      return gens;
    }
    case Family::CrtProduct: break;
  }
  throw Error(ErrorKind::NotLocal, name());
}

void Ring::require_chain(const char* op) const {
  if (!is_chain()) throw Error(ErrorKind::NotAChainRing, std::string(op) + " needs a chain ring, got " + name());
}

Elem Ring::gamma() const {
  require_chain("gamma");
  if (spec_.t == 1) return 0;
  return static_cast<Elem>(spec_.p);  // p for Z/p^t, index of 0 + 1*g for F_q[g]
}

unsigned Ring::valuation(Elem a) const {
  require_chain("valuation");
  if (a == 0) return spec_.t;
  unsigned v = 0;
  while (a % spec_.p == 0) {
    a /= spec_.p;
    ++v;
  }
  return v;
}

std::pair<unsigned, Elem> Ring::split(Elem a) const {
  require_chain("split");
  if (a == 0) return {spec_.t, one_};
  unsigned v = 0;
  // Both Z/p^t and F_q[g] use base-p digits for the gamma-adic expansion, so
  // shifting the index right by v digits leaves a unit.
  while (a % spec_.p == 0) {
    a /= spec_.p;
    ++v;
  }
  return {v, a};
}

unsigned Ring::digit(Elem a, unsigned j) const {
  require_chain("digit");
  for (unsigned i = 0; i < j; ++i) a /= spec_.p;
  return a % spec_.p;
}

Elem Ring::divide(Elem a, Elem b) const {
  if (a == 0) return 0;
  auto [w, ua] = split(a);
  auto [v, ub] = split(b);
  if (w < v) throw Error(ErrorKind::NotAUnit, format(b) + " does not divide " + format(a));
  Elem x = mul(pow(gamma(), w - v), mul(ua, inv(ub)));
  if (mul(b, x) != a) throw Error(ErrorKind::NotAUnit, "division check failed");
  return x;
}

Elem Ring::monomial(unsigned mask) const {
  if (spec_.family != Family::LocalU) throw Error(ErrorKind::UnsupportedRing, "monomials need LocalU");
  if (mask >= (1u << spec_.k)) throw Error(ErrorKind::ParseError, "monomial index out of range");
  return Elem{1} << mask;
}

std::vector<Elem> Ring::decompose(Elem a) const {
  if (spec_.family != Family::CrtProduct) throw Error(ErrorKind::ComponentMismatch, name() + " is not a CRT product");
  std::vector<Elem> parts;
  for (std::size_t i = 0; i < components_.size(); ++i)
    parts.push_back(static_cast<Elem>((a / radix_[i]) % components_[i]->size()));
  return parts;
}

Elem Ring::combine(const std::vector<Elem>& parts) const {
  if (spec_.family != Family::CrtProduct || parts.size() != components_.size())
    throw Error(ErrorKind::ComponentMismatch, "component count does not match " + name());
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] >= components_[i]->size()) throw Error(ErrorKind::ComponentMismatch, "component out of range");
    r += parts[i] * radix_[i];
  }
  return static_cast<Elem>(r);
}

LoewyProfile Ring::loewy_invariants() const {
  if (!is_local()) throw Error(ErrorKind::NotLocal, name());
  const auto n = static_cast<std::size_t>(size_);
  // |ideal generated by gens| via additive closure of R * gens.
  auto ideal_size = [&](const std::vector<Elem>& gens) {
    std::vector<char> in(n, 0);
    std::vector<Elem> members{0};
    in[0] = 1;
    for (Elem g : gens) {
      for (Elem r = 0; r < n; ++r) {
        Elem m = mul(r, g);
        if (in[m]) continue;
        const std::size_t before = members.size();
        for (std::size_t i = 0; i < before; ++i) {
          Elem s = add(members[i], m);
          if (!in[s]) {
            in[s] = 1;
            members.push_back(s);
          }
        }
      }
    }
    return members.size();
  };
  auto log_q = [&](std::uint64_t v) {
    unsigned e = 0;
    while (v > 1) {
      if (v % spec_.p) throw Error(ErrorKind::NotAPowerOfQ, "ideal size is not a power of q");
      v /= spec_.p;
      ++e;
    }
    return e;
  };
  const auto gens = maximal_ideal_generators();
  std::vector<unsigned> exps{omega()};
  std::vector<Elem> power = gens;
  while (true) {
    power.erase(std::remove(power.begin(), power.end(), Elem{0}), power.end());
    std::sort(power.begin(), power.end());
    power.erase(std::unique(power.begin(), power.end()), power.end());
    const unsigned e = log_q(ideal_size(power));
    exps.push_back(e);
    if (e == 0) break;
    std::vector<Elem> next;
    for (Elem x : power)
      for (Elem g : gens) next.push_back(mul(x, g));
    power = std::move(next);
  }
  LoewyProfile profile;
  for (std::size_t i = 0; i + 1 < exps.size(); ++i) profile.mu.push_back(exps[i] - exps[i + 1]);
  return profile;
}

std::string Ring::format(Elem a) const {
  switch (spec_.family) {
    case Family::PrimeField:
    case Family::ChainZ: return std::to_string(a);
    case Family::ChainFqGamma: {
      std::string s = "[";
      for (unsigned i = 0; i < spec_.t; ++i) {
        s += (i ? "," : "") + std::to_string(a % spec_.p);
        a /= spec_.p;
      }
      return s + "]";
    }
    case Family::LocalU: {
      std::string s = "[";
      for (unsigned i = 0; i < (1u << spec_.k); ++i) s += (i ? "," : "") + std::to_string((a >> i) & 1u);
      return s + "]";
    }
    case Family::CrtProduct: {
      auto parts = decompose(a);
      std::string s = "(";
      for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + components_[i]->format(parts[i]);
      return s + ")";
    }
  }
  return {};
}

Elem Ring::parse_element(const std::string& raw) const {
  const std::string text = trim(raw);
  if (text.empty()) throw Error(ErrorKind::ParseError, "empty element");
  long long value = 0;
  if (parse_integer(text, value)) return from_int(value);

  if (text.front() == '(') {
    if (spec_.family != Family::CrtProduct || text.back() != ')')
      throw Error(ErrorKind::ParseError, "tuple element '" + text + "' needs a CRT ring");
    auto pieces = split_top_level(text.substr(1, text.size() - 2));
    if (pieces.size() != components_.size()) throw Error(ErrorKind::ComponentMismatch, "wrong tuple arity: " + text);
    std::vector<Elem> parts;
    for (std::size_t i = 0; i < pieces.size(); ++i) parts.push_back(components_[i]->parse_element(pieces[i]));
    return combine(parts);
  }

  if (text.front() == '[') {
    if (text.back() != ']') throw Error(ErrorKind::ParseError, "unterminated list: " + text);
    auto pieces = split_top_level(text.substr(1, text.size() - 2));
    std::size_t expected = 0;
    if (spec_.family == Family::ChainFqGamma) expected = spec_.t;
    else if (spec_.family == Family::LocalU) expected = std::size_t{1} << spec_.k;
    else expected = 1;
    if (pieces.size() != expected)
      throw Error(ErrorKind::ParseError, "expected " + std::to_string(expected) + " coefficients in " + text);
    std::uint64_t r = 0, scale = 1;
    const unsigned base = spec_.family == Family::ChainZ ? static_cast<unsigned>(modulus_) : spec_.p;
    for (const auto& piece : pieces) {
      long long c = 0;
      if (!parse_integer(piece, c)) throw Error(ErrorKind::ParseError, "bad coefficient '" + piece + "'");
      c = ((c % base) + base) % base;
      r += static_cast<std::uint64_t>(c) * scale;
      scale *= base;
    }
    return static_cast<Elem>(r);
  }

  // Polynomial notation: sums of terms like 3, u1u2, u1*u3, 2g, g^2.
  Elem total = 0;
  std::size_t i = 0;
  bool negate = false;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  while (i < text.size()) {
    skip_ws();
    if (text[i] == '+' || text[i] == '-') {
      negate = text[i] == '-';
      ++i;
      skip_ws();
    }
    Elem term = one_;
    bool any = false;
    while (i < text.size() && text[i] != '+' && text[i] != '-') {
      if (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '*') {
        ++i;
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(text[i]))) {
        std::size_t j = i;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        term = mul(term, from_int(std::stoll(text.substr(i, j - i))));
        i = j;
      } else if (text[i] == 'u' && spec_.family == Family::LocalU) {
        std::size_t j = i + 1;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        const unsigned idx = parse_unsigned(text.substr(i + 1, j - i - 1), text);
        if (idx < 1 || idx > spec_.k) throw Error(ErrorKind::ParseError, "no generator u" + std::to_string(idx));
        term = mul(term, monomial(1u << (idx - 1)));
        i = j;
      } else if (text[i] == 'g' && is_chain()) {
        ++i;
        unsigned e = 1;
        if (i < text.size() && text[i] == '^') {
          std::size_t j = i + 1;
          while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
          e = parse_unsigned(text.substr(i + 1, j - i - 1), text);
          i = j;
        }
        term = mul(term, pow(gamma(), e));
      } else {
        throw Error(ErrorKind::ParseError, "cannot parse element '" + text + "' in " + name());
      }
      any = true;
    }
    if (!any) throw Error(ErrorKind::ParseError, "empty term in '" + text + "'");
    total = add(total, negate ? neg(term) : term);
    negate = false;
  }
  return total;
}

}  // namespace dlip
