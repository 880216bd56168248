#include "dlip/gray.hpp"

#include <algorithm>

#include "dlip/pairs.hpp"

namespace dlip {

unsigned find_alpha(unsigned q) {
  if (q % 4 != 1) throw Error(ErrorKind::NoSquareRootOfMinusOne, "-1 is not a square mod " + std::to_string(q));
  for (unsigned a = 1; a < q; ++a)
    if (std::uint64_t{a} * a % q == q - 1) return a;
  throw Error(ErrorKind::NoSquareRootOfMinusOne, std::to_string(q) + " is not prime");
}

GrayContext::GrayContext(RingPtr ring) : ring_(std::move(ring)) {
  if (ring_->family() != Family::ChainFqGamma || ring_->t() != 2)
    throw Error(ErrorKind::UnsupportedRing, "the Gray map needs Fgamma:q^2, got " + ring_->name());
  q_ = ring_->q();
  alpha_ = find_alpha(q_);
  field_ = Ring::make(RingSpec::prime_field(q_));
}

std::pair<Elem, Elem> GrayContext::map(Elem x) const {
  const unsigned a = ring_->digit(x, 0), b = ring_->digit(x, 1);
  return {static_cast<Elem>(alpha_ * b % q_), static_cast<Elem>((a + b) % q_)};
}

Elem GrayContext::unmap(Elem first, Elem second) const {
  // b = first / alpha = -alpha first, a = second - b.
  const unsigned b = static_cast<unsigned>((q_ - alpha_) * std::uint64_t{first} % q_);
  const unsigned a = (second + q_ - b) % q_;
  return static_cast<Elem>(a + q_ * b);
}

unsigned GrayContext::weight(Elem x) const {
  const unsigned a = ring_->digit(x, 0), b = ring_->digit(x, 1);
  if (a == 0 && b == 0) return 0;
  if (b != 0 && (a + b) % q_ != 0) return 2;
  return 1;
}

Vector gray_map(const GrayContext& g, const Vector& x) {
  Vector y;
  y.reserve(2 * x.size());
  for (Elem e : x) {
    auto [u, v] = g.map(e);
    y.push_back(u);
    y.push_back(v);
  }
  return y;
}

Vector gray_inverse(const GrayContext& g, const Vector& y) {
  if (y.size() % 2) throw Error(ErrorKind::PreconditionFailed, "Gray preimage needs even length");
  Vector x;
  for (std::size_t i = 0; i < y.size(); i += 2) x.push_back(g.unmap(y[i], y[i + 1]));
  return x;
}

unsigned gray_weight(const GrayContext& g, const Vector& x) {
  unsigned w = 0;
  for (Elem e : x) w += g.weight(e);
  return w;
}

unsigned hamming_weight(const Vector& x) {
  return static_cast<unsigned>(std::count_if(x.begin(), x.end(), [](Elem e) { return e != 0; }));
}

Code gray_image_code(const GrayContext& g, const Code& c) {
  require_same_ring(*g.ring(), *c.ring());
  const std::size_t n = c.length();
  const auto codec = c.codec();
  const VectorCodec image_codec(g.field(), 2 * n);
  std::vector<Key> image;
  image.reserve(c.elements().size());
  for (Key k : c.elements()) {
    const Vector x = codec.decode(k);
    const Vector y = gray_map(g, x);
    if (hamming_weight(y) != gray_weight(g, x))
      throw Error(ErrorKind::PreconditionFailed, "Gray map changed a codeword weight");
    image.push_back(image_codec.encode(y));
  }
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  if (image.size() != c.elements().size()) throw Error(ErrorKind::PreconditionFailed, "Gray map is not injective on C");

  const Elem gamma = g.ring()->gamma();
  std::vector<Vector> rows;
  for (const auto& row : c.generators().row_vectors()) {
    rows.push_back(gray_map(g, row));
    rows.push_back(gray_map(g, scale(*g.ring(), gamma, row)));
  }
  Code out(Matrix::from_rows(g.field(), 2 * n, rows), c.oracle_bound());
  if (out.elements() != image) throw Error(ErrorKind::PreconditionFailed, "Gray image is not F_q-linear");
  return out;
}

namespace {

template <class Weight>
unsigned min_weight(const Code& c, Weight weight) {
  if (c.elements().size() <= 1) throw Error(ErrorKind::ZeroCode, "minimum weight of the zero code");
  const auto codec = c.codec();
  unsigned best = ~0u;
  for (Key k : c.elements())
    if (k != 0) best = std::min(best, weight(codec.decode(k)));
  return best;
}

}  // namespace

unsigned min_hamming_weight(const Code& c) { return min_weight(c, hamming_weight); }

unsigned min_gray_weight(const GrayContext& g, const Code& c) {
  require_same_ring(*g.ring(), *c.ring());
  return min_weight(c, [&](const Vector& x) { return gray_weight(g, x); });
}

std::string EaqecParams::format() const {
  return "[[" + std::to_string(n) + "," + std::to_string(k) + "," + (d ? std::to_string(*d) : "-") + ";" +
         std::to_string(c) + "]]_" + std::to_string(q);
}

nlohmann::json EaqecParams::to_json() const {
  return {{"N", n}, {"K", k}, {"D", d ? nlohmann::json(*d) : nlohmann::json(nullptr)}, {"c", c}, {"q", q},
          {"text", format()}};
}

EaqecParams eaqec_from_lip(int k1, std::optional<int> /*d1*/, int k2, std::optional<int> d2, int ell,
                           std::optional<int> d1perp, int n, unsigned q) {
  if (ell < 0 || k1 < ell || k2 < ell)
    throw Error(ErrorKind::NegativeParameter, "need 0 <= ell <= min(k1, k2), got k1=" + std::to_string(k1) +
                                                  " k2=" + std::to_string(k2) + " ell=" + std::to_string(ell));
  EaqecParams p;
  p.n = n;
  p.k = k2 - ell;
  p.c = k1 - ell;
  p.q = q;
  if (d1perp && d2)
    p.d = std::min(*d1perp, *d2);
  else if (d1perp)
    p.d = d1perp;
  else
    p.d = d2;
  return p;
}

nlohmann::json ConstacyclicEaqecReport::to_json() const {
  auto opt = [](const std::optional<unsigned>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
  nlohmann::json j = {{"tau1", tau1},     {"tau2", tau2}, {"k1", k1},           {"k2", k2},
                      {"ell", ell},       {"ell_literal", ell_literal},         {"w2", opt(w2)},
                      {"w1perp", opt(w1perp)}, {"params", params.to_json()}};
  j["tau_mismatch"] = tau_mismatch ? nlohmann::json(*tau_mismatch) : nlohmann::json(nullptr);
  return j;
}

ConstacyclicEaqecReport eaqec_from_constacyclic_pair(const ConstacyclicCode& c1, const ConstacyclicCode& c2,
                                                     std::uint64_t bound) {
  const GrayContext g(c1.ctx->ring());
  const Code code2 = materialize(c2, bound);
  const Code dual1 = materialize(constacyclic_dual(c1), bound);
  std::optional<unsigned> w2, w1perp;
  if (code2.elements().size() > 1) w2 = min_gray_weight(g, code2);
  if (dual1.elements().size() > 1) w1perp = min_gray_weight(g, dual1);
  return eaqec_from_constacyclic_pair(c1, c2, w2, w1perp);
}

ConstacyclicEaqecReport eaqec_from_constacyclic_pair(const ConstacyclicCode& c1, const ConstacyclicCode& c2,
                                                     std::optional<unsigned> w2, std::optional<unsigned> w1perp) {
  const GrayContext g(c1.ctx->ring());
  const auto meet = constacyclic_intersection(c1, c2);
  const auto& ctx = *c1.ctx;
  const int n = static_cast<int>(ctx.n());
  const auto t1 = canonical_tuple(c1), t2 = canonical_tuple(c2);
  auto tau = [&](const CanonicalTuple& f) {
    return 2 * static_cast<int>(ctx.degree(f.f[1]) + ctx.degree(meet.meet.tower[0])) +
           static_cast<int>(ctx.degree(f.f[2]) + ctx.degree(meet.meet.tower[1])) - 3 * n;
  };
  ConstacyclicEaqecReport r;
  r.tau1 = tau(t1);
  r.tau2 = tau(t2);
  r.k1 = c1.log_size();
  r.k2 = c2.log_size();
  r.ell = meet.dim_exact;
  r.ell_literal = meet.dim_literal;
  r.w2 = w2;
  r.w1perp = w1perp;
  auto as_int = [](const std::optional<unsigned>& v) { return v ? std::optional<int>(static_cast<int>(*v)) : std::nullopt; };
  r.params = eaqec_from_lip(static_cast<int>(r.k1), std::nullopt, static_cast<int>(r.k2), as_int(r.w2),
                            static_cast<int>(r.ell), as_int(r.w1perp), 2 * n, g.q());

  const int c_exact = static_cast<int>(r.k1) - static_cast<int>(r.ell);
  const int k_exact = static_cast<int>(r.k2) - static_cast<int>(r.ell);
  if (r.tau1 != c_exact || r.tau2 != k_exact)
    r.tau_mismatch = std::string(to_string(ErrorKind::TauMismatch)) + ": tau = (" + std::to_string(r.tau1) + ", " +
                     std::to_string(r.tau2) + ") but k_i - ell = (" + std::to_string(c_exact) + ", " +
                     std::to_string(k_exact) + ")";
  return r;
}

}  // namespace dlip
