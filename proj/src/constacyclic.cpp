#include "dlip/constacyclic.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>

#include "dlip/pairs.hpp"

namespace dlip {

namespace {

Elem gamma_pow(const Ring& r, unsigned j) { return j == 0 ? r.one() : r.pow(r.gamma(), j); }

// Lifts F = g h (mod gamma) with g, h monic and coprime mod gamma.
std::pair<Poly, Poly> hensel(const Poly& f, const fq::Poly& g_bar, const fq::Poly& h_bar) {
  const RingPtr& ring = f.ring();
  const unsigned q = ring->q();
  auto [one, s_bar, t_bar] = fq::ext_gcd(q, g_bar, h_bar);
  if (one != fq::Poly{1}) throw Error(ErrorKind::PreconditionFailed, "factors are not coprime mod gamma");
  Poly g = lift(ring, g_bar), h = lift(ring, h_bar);
  const Poly s = lift(ring, s_bar);
  for (unsigned iter = 0; iter <= ring->t(); ++iter) {
    const Poly e = f - g * h;
    if (e.is_zero()) return {g, h};
    const Poly r = divmod(s * e, h).second;
    const Poly dg = divmod(e - g * r, h).first;
    g = g + dg;
    h = h + r;
  }
  throw Error(ErrorKind::PreconditionFailed, "Hensel lifting did not converge for " + f.format());
}

void require_same_context(const ConstacyclicCode& a, const ConstacyclicCode& b) {
  if (a.ctx == b.ctx) return;
  require_same_ring(*a.ctx->ring(), *b.ctx->ring());
  if (a.ctx->n() != b.ctx->n()) throw Error(ErrorKind::LengthMismatch, "codes have different lengths");
  if (a.ctx->lambda() != b.ctx->lambda())
    throw Error(ErrorKind::MismatchedConstacyclicity, "codes have different shift constants");
}

}  // namespace

std::vector<Poly> factor_unital(const RingPtr& ring, std::size_t n, Elem lambda) {
  if (!ring->is_chain()) throw Error(ErrorKind::NotAChainRing, ring->name() + " is not a chain ring");
  if (n == 0) throw Error(ErrorKind::PreconditionFailed, "length must be positive");
  if (!ring->is_unit(lambda)) throw Error(ErrorKind::NotAUnit, ring->format(lambda) + " is not a unit");
  if (n % ring->q() == 0)
    throw Error(ErrorKind::NotCoprimeLength, "n = " + std::to_string(n) + " is not coprime to " + std::to_string(ring->q()));
  Poly rest = Poly::x_n_minus(ring, n, lambda);
  const auto bars = fq::factor_squarefree(ring->q(), residue(rest), kFactorSeed);
  std::vector<Poly> out;
  for (std::size_t i = 0; i + 1 < bars.size(); ++i) {
    const fq::Poly cofactor = fq::divmod(ring->q(), residue(rest), bars[i]).first;
    auto [g, h] = hensel(rest, bars[i], cofactor);
    out.push_back(g);
    rest = h;
  }
  out.push_back(rest);
  return out;
}

ConstacyclicContext::ConstacyclicContext(RingPtr ring, std::size_t n, Elem lambda)
    : ring_(std::move(ring)), n_(n), lambda_(lambda) {
  factors_ = factor_unital(ring_, n_, lambda_);
  if (factors_.size() > 64) throw Error(ErrorKind::PreconditionFailed, "more than 64 factors");
  modulus_ = Poly::x_n_minus(ring_, n_, lambda_);
}

ContextPtr ConstacyclicContext::get(const RingPtr& ring, std::size_t n, Elem lambda) {
  static std::mutex mutex;
  static std::map<std::tuple<std::string, std::size_t, Elem>, ContextPtr> cache;
  const auto key = std::make_tuple(ring->name(), n, lambda);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto ctx = std::make_shared<const ConstacyclicContext>(ring, n, lambda);
  std::lock_guard lock(mutex);
  return cache.emplace(key, ctx).first->second;
}

Poly ConstacyclicContext::product(FactorMask m) const {
  Poly p = Poly::constant(ring_, ring_->one());
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (m >> i & 1) p = p * factors_[i];
  return p;
}

unsigned ConstacyclicContext::degree(FactorMask m) const {
  unsigned d = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (m >> i & 1) d += static_cast<unsigned>(factors_[i].degree());
  return d;
}

FactorMask ConstacyclicContext::mask_of(const Poly& divisor) const {
  require_same_ring(*ring_, *divisor.ring());
  FactorMask m = 0;
  if (divisor.is_monic())
    for (std::size_t i = 0; i < factors_.size(); ++i)
      if (divmod(divisor, factors_[i]).second.is_zero()) m |= FactorMask{1} << i;
  if (!divisor.is_monic() || product(m) != divisor)
    throw Error(ErrorKind::NotADivisor, divisor.format() + " is not a monic divisor of " + modulus_.format());
  return m;
}

std::string ConstacyclicContext::format_mask(FactorMask m) const {
  std::string out;
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (m >> i & 1) out += (out.empty() ? "(" : "*(") + factors_[i].format() + ")";
  return out.empty() ? "1" : out;
}

unsigned ConstacyclicCode::log_size() const {
  unsigned s = 0;
  for (FactorMask m : tower) s += static_cast<unsigned>(ctx->n()) - ctx->degree(m);
  return s;
}

bool ConstacyclicCode::is_free() const {
  return std::all_of(tower.begin(), tower.end(), [&](FactorMask m) { return m == tower.front(); });
}

unsigned ConstacyclicCode::level(std::size_t i) const {
  unsigned l = 0;
  for (FactorMask m : tower) l += m >> i & 1;
  return l;
}

ConstacyclicCode code_from_masks(const ContextPtr& ctx, std::vector<FactorMask> tower) {
  if (tower.size() != ctx->t())
    throw Error(ErrorKind::BrokenChain, "tower needs " + std::to_string(ctx->t()) + " levels");
  for (std::size_t j = 0; j < tower.size(); ++j) {
    if (tower[j] & ~ctx->all()) throw Error(ErrorKind::NotADivisor, "factor index out of range");
    if (j > 0 && (tower[j] & ~tower[j - 1]))
      throw Error(ErrorKind::BrokenChain, "D" + std::to_string(j) + " does not divide D" + std::to_string(j - 1));
  }
  return ConstacyclicCode{ctx, std::move(tower)};
}

ConstacyclicCode code_from_tower(const ContextPtr& ctx, const std::vector<Poly>& tower) {
  std::vector<FactorMask> masks;
  for (const auto& d : tower) masks.push_back(ctx->mask_of(d));
  return code_from_masks(ctx, std::move(masks));
}

ConstacyclicCode code_from_generators(const ContextPtr& ctx, const std::vector<std::pair<unsigned, Poly>>& gens) {
  const Ring& r = *ctx->ring();
  const unsigned t = ctx->t();
  std::vector<FactorMask> tower(t, 0);
  for (std::size_t i = 0; i < ctx->factor_count(); ++i) {
    unsigned level = t;
    for (const auto& [e, p] : gens) {
      const Poly rem = divmod(p, ctx->factors()[i]).second;
      unsigned v = t;
      for (Elem c : rem.coeffs())
        if (c != 0) v = std::min(v, r.valuation(c));
      level = std::min(level, e + v);
    }
    for (unsigned j = 0; j < level; ++j) tower[j] |= FactorMask{1} << i;
  }
  return ConstacyclicCode{ctx, std::move(tower)};
}

std::vector<ConstacyclicCode> all_towers(const ContextPtr& ctx) {
  const std::size_t m = ctx->factor_count();
  const unsigned t = ctx->t();
  std::vector<unsigned> levels(m, 0);
  std::vector<ConstacyclicCode> out;
  while (true) {
    std::vector<FactorMask> tower(t, 0);
    for (std::size_t i = 0; i < m; ++i)
      for (unsigned j = 0; j < levels[i]; ++j) tower[j] |= FactorMask{1} << i;
    out.push_back(ConstacyclicCode{ctx, std::move(tower)});
    std::size_t i = 0;
    while (i < m && levels[i] == t) levels[i++] = 0;
    if (i == m) break;
    ++levels[i];
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.tower < b.tower; });
  return out;
}

Vector to_vector(const Poly& p, std::size_t n) {
  if (p.degree() >= static_cast<int>(n))
    throw Error(ErrorKind::PreconditionFailed, "degree of " + p.format() + " is not below " + std::to_string(n));
  Vector v(n, 0);
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) v[i] = p.coeffs()[i];
  return v;
}

Poly to_poly(const RingPtr& ring, const Vector& v) { return Poly(ring, v); }

Vector constashift(const Ring& ring, const Vector& v, Elem lambda) {
  if (v.empty()) return v;
  Vector out(v.size());
  out[0] = ring.mul(lambda, v.back());
  std::copy(v.begin(), v.end() - 1, out.begin() + 1);
  return out;
}

bool is_constacyclic(const Code& c, Elem lambda) {
  for (const auto& row : c.generators().row_vectors())
    if (!c.contains(constashift(*c.ring(), row, lambda))) return false;
  return true;
}

Code materialize(const ConstacyclicCode& c, std::uint64_t bound) {
  const auto& ctx = *c.ctx;
  const Ring& r = *ctx.ring();
  std::vector<Vector> rows;
  for (unsigned j = 0; j < ctx.t(); ++j) {
    if (c.tower[j] == ctx.all()) continue;
    const Poly d = c.divisor(j);
    Vector v = to_vector(scale(gamma_pow(r, j), d), ctx.n());
    for (std::size_t i = 0; i + d.degree() < ctx.n(); ++i) {
      rows.push_back(v);
      v = constashift(r, v, ctx.lambda());
    }
  }
  if (rows.empty()) return Code::zero(ctx.ring(), ctx.n(), bound);
  return Code(Matrix::from_rows(ctx.ring(), ctx.n(), rows), bound);
}

ConstacyclicCode tower_from_code(const ContextPtr& ctx, const Code& c) {
  const Ring& r = *ctx->ring();
  require_same_ring(r, *c.ring());
  if (c.length() != ctx->n()) throw Error(ErrorKind::LengthMismatch, "code length differs from n");
  if (!is_constacyclic(c, ctx->lambda()))
    throw Error(ErrorKind::CanonicalizationMismatch, "code is not closed under the constashift");
  const unsigned q = ctx->q();
  const auto codec = c.codec();
  std::vector<fq::Poly> best(ctx->t());
  for (Key key : c.elements()) {
    const Vector v = codec.decode(key);
    unsigned v_min = ctx->t();
    for (Elem x : v)
      if (x != 0) v_min = std::min(v_min, r.valuation(x));
    for (unsigned j = 0; j <= v_min && j < ctx->t(); ++j) {
      fq::Poly w;
      for (Elem x : v) w.push_back(r.digit(x, j));
      fq::trim(w);
      if (!w.empty() && (best[j].empty() || w.size() < best[j].size())) best[j] = w;
    }
  }
  std::vector<FactorMask> tower(ctx->t(), 0);
  for (unsigned j = 0; j < ctx->t(); ++j) {
    if (best[j].empty()) {
      tower[j] = ctx->all();
      continue;
    }
    for (std::size_t i = 0; i < ctx->factor_count(); ++i)
      if (fq::divmod(q, best[j], residue(ctx->factors()[i])).second.empty()) tower[j] |= FactorMask{1} << i;
  }
  ConstacyclicCode out;
  try {
    out = code_from_masks(ctx, tower);
  } catch (const Error& e) {
    throw Error(ErrorKind::CanonicalizationMismatch, e.what());
  }
  if (!materialize(out, c.oracle_bound()).same_elements(c))
    throw Error(ErrorKind::CanonicalizationMismatch, "code is not the ideal of its torsion tower");
  return out;
}

std::vector<Poly> CanonicalTuple::polys() const {
  std::vector<Poly> out;
  for (FactorMask m : f) out.push_back(ctx->product(m));
  return out;
}

std::vector<std::pair<unsigned, Poly>> CanonicalTuple::generators() const {
  std::vector<std::pair<unsigned, Poly>> out;
  for (unsigned j = 0; j + 1 < f.size(); ++j) out.emplace_back(j, ctx->product(ctx->all() & ~f[j + 1]));
  return out;
}

CanonicalTuple canonical_tuple(const ConstacyclicCode& c) {
  const unsigned t = c.ctx->t();
  CanonicalTuple out{c.ctx, std::vector<FactorMask>(t + 1, 0)};
  out.f[0] = c.tower[t - 1];
  for (unsigned j = 0; j < t; ++j) {
    const FactorMask prev = j == 0 ? c.ctx->all() : c.tower[j - 1];
    out.f[j + 1] = prev & ~c.tower[j];
  }
  return out;
}

void verify_canonical(const ConstacyclicCode& c, const CanonicalTuple& tuple, bool oracle) {
  auto fail = [](const std::string& why) { throw Error(ErrorKind::CanonicalizationMismatch, why); };
  if (tuple.f.size() != c.ctx->t() + 1) fail("tuple has the wrong length");
  FactorMask seen = 0;
  for (FactorMask m : tuple.f) {
    if (seen & m) fail("tuple entries are not pairwise coprime");
    seen |= m;
  }
  if (seen != c.ctx->all()) fail("tuple product is not x^n - lambda");
  if (canonical_tuple(c).f != tuple.f) fail("tuple does not match the tower");
  if (!(code_from_generators(c.ctx, tuple.generators()) == c)) fail("tuple generators give a different ideal");
  if (oracle && !(tower_from_code(c.ctx, materialize(c)) == c)) fail("explicit code gives a different tower");
}

SizeExponents constacyclic_size(const CanonicalTuple& tuple) {
  const unsigned t = tuple.ctx->t();
  SizeExponents out;
  out.q = tuple.ctx->q();
  for (unsigned j = 0; j < t; ++j) out.log_code += (t - j) * tuple.ctx->degree(tuple.f[j + 1]);
  for (unsigned j = 1; j <= t; ++j) out.log_dual += j * tuple.ctx->degree(j == t ? tuple.f[0] : tuple.f[j + 1]);
  return out;
}

ConstacyclicCode constacyclic_dual(const ConstacyclicCode& c) {
  const auto& ctx = *c.ctx;
  const unsigned t = ctx.t();
  const auto dual_ctx = ConstacyclicContext::get(ctx.ring(), ctx.n(), ctx.ring()->inv(ctx.lambda()));
  const auto tuple = canonical_tuple(c);
  auto hat_star = [&](FactorMask f) { return reciprocal(ctx.product(ctx.all() & ~f)); };
  std::vector<std::pair<unsigned, Poly>> gens{{0, hat_star(tuple.f[0])}};
  for (unsigned j = 1; j < t; ++j) gens.emplace_back(j, hat_star(tuple.f[t - j + 1]));
  return code_from_generators(dual_ctx, gens);
}

IntersectionReport constacyclic_intersection(const ConstacyclicCode& a, const ConstacyclicCode& b) {
  require_same_context(a, b);
  const auto& ctx = *a.ctx;
  const unsigned t = ctx.t();
  const unsigned n = static_cast<unsigned>(ctx.n());
  std::vector<FactorMask> meet(t);
  for (unsigned j = 0; j < t; ++j) meet[j] = a.tower[j] | b.tower[j];
  IntersectionReport out{ConstacyclicCode{a.ctx, meet}, 0, 0};
  for (unsigned j = 0; j < t; ++j) {
    out.dim_literal += (t - j) * (n - ctx.degree(meet[j]));
    out.dim_exact += n - ctx.degree(meet[j]);
  }
  return out;
}

FreeSumReport free_sum_check(const ContextPtr& ctx, const Poly& f1, const Poly& f2) {
  FreeSumReport out;
  out.f1 = ctx->mask_of(f1);
  out.f2 = ctx->mask_of(f2);
  out.coprime = (out.f1 & out.f2) == 0;
  out.deg_product = ctx->degree(out.f1) + ctx->degree(out.f2);
  out.lcp = out.coprime && out.deg_product == ctx->n();
  return out;
}

MixedLambdaReport mixed_lambda_intersection(const ConstacyclicCode& a, const ConstacyclicCode& b, std::uint64_t bound) {
  const auto& ca = *a.ctx;
  const auto& cb = *b.ctx;
  require_same_ring(*ca.ring(), *cb.ring());
  if (ca.n() != cb.n()) throw Error(ErrorKind::LengthMismatch, "codes have different lengths");
  const Ring& r = *ca.ring();
  if (r.residue(ca.lambda()) == r.residue(cb.lambda()))
    throw Error(ErrorKind::SameResidueLambda, "shift constants have the same residue");
  if (!a.is_free() || !b.is_free()) throw Error(ErrorKind::PreconditionFailed, "both codes must be free");
  const Code c1 = materialize(a, bound), c2 = materialize(b, bound);
  const Code meet = intersect(c1, c2);
  MixedLambdaReport out;
  out.ell = dim(meet).value();
  out.covers = dim(sum(c1, c2)).value() == ca.n() * ca.t();
  out.lcp = is_lcp(c1, c2);
  const bool hypothesis = is_constacyclic(meet, ca.lambda()) && is_constacyclic(meet, cb.lambda());
  if (!hypothesis) {
    out.verdict = MixedVerdict::HypothesisNotMet;
  } else if (out.ell == 0) {
    out.verdict = MixedVerdict::Zero;
  } else if (out.ell == ca.n() * ca.t()) {
    out.verdict = MixedVerdict::Full;
  } else {
    out.verdict = MixedVerdict::Other;
    out.violation = true;
  }
  out.covering_not_lcp = hypothesis && out.covers && !out.lcp;
  return out;
}

LcdReport constacyclic_lcd_check(const ContextPtr& ctx, const Poly& f, std::uint64_t bound) {
  const FactorMask m = ctx->mask_of(f);
  const unsigned q = ctx->q();
  const unsigned lam = ctx->ring()->residue(ctx->lambda());
  LcdReport out;
  out.square_one = lam * lam % q == 1 % q;
  out.predicted = out.square_one ? reciprocal(f) == f : true;
  out.actual = is_lcd(materialize(code_from_masks(ctx, std::vector<FactorMask>(ctx->t(), m)), bound));
  return out;
}

std::string format_generators(const ConstacyclicCode& c) {
  const auto& ctx = *c.ctx;
  const Ring& r = *ctx.ring();
  std::vector<std::string> gens;
  for (unsigned j = 0; j < ctx.t(); ++j) {
    if (c.tower[j] == ctx.all() || (j > 0 && c.tower[j] == c.tower[j - 1])) continue;
    std::string g;
    if (j > 0) {
      if (r.family() == Family::ChainFqGamma)
        g = j == 1 ? "g" : "g^" + std::to_string(j);
      else
        g = std::to_string(gamma_pow(r, j));
    }
    if (c.tower[j] != 0 || g.empty()) g += (g.empty() ? "" : "*") + ctx.format_mask(c.tower[j]);
    gens.push_back(g);
  }
  if (gens.empty()) return "<0>";
  std::string out = "<";
  for (std::size_t i = 0; i < gens.size(); ++i) out += (i ? ", " : "") + gens[i];
  return out + ">";
}

std::string format_tower(const ConstacyclicCode& c) {
  std::string out;
  for (unsigned j = 0; j < c.tower.size(); ++j) {
    if (j) out += ";";
    out += "D" + std::to_string(j) + "=";
    bool first = true;
    for (std::size_t i = 0; i < c.ctx->factor_count(); ++i)
      if (c.tower[j] >> i & 1) {
        out += (first ? "" : ",") + std::to_string(i);
        first = false;
      }
  }
  return out;
}

ConstacyclicCode parse_tower(const ContextPtr& ctx, const std::string& text) {
  auto fail = [&](const std::string& why) { throw Error(ErrorKind::ParseError, "tower '" + text + "': " + why); };
  std::vector<std::optional<FactorMask>> levels(ctx->t());
  std::string normalized = text;
  std::replace_if(normalized.begin(), normalized.end(), ::isspace, ';');
  std::stringstream ss(normalized);
  std::string part;
  bool any = false;
  while (std::getline(ss, part, ';')) {
    if (part.empty()) continue;
    const auto eq = part.find('=');
    if (part[0] != 'D' || eq == std::string::npos) fail("expected Dj=i,k,...");
    unsigned j = 0;
    try {
      j = static_cast<unsigned>(std::stoul(part.substr(1, eq - 1)));
    } catch (const std::exception&) {
      fail("bad level in '" + part + "'");
    }
    if (j >= ctx->t()) fail("level " + std::to_string(j) + " out of range");
    FactorMask m = 0;
    std::stringstream items(part.substr(eq + 1));
    std::string item;
    while (std::getline(items, item, ',')) {
      if (item.empty()) continue;
      std::size_t i = 0;
      try {
        i = std::stoul(item);
      } catch (const std::exception&) {
        fail("bad factor index '" + item + "'");
      }
      if (i >= ctx->factor_count()) fail("factor index " + item + " out of range");
      m |= FactorMask{1} << i;
    }
    levels[j] = m;
    any = true;
  }
  if (!any) fail("no levels");
  if (!levels[0]) fail("D0 is required");
  std::vector<FactorMask> tower(ctx->t());
  for (unsigned j = 0; j < ctx->t(); ++j) tower[j] = levels[j] ? *levels[j] : tower[j - 1];
  return code_from_masks(ctx, std::move(tower));
}

}  // namespace dlip
