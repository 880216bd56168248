#pragma once

#include <optional>
#include <string>

#include "dlip/constacyclic.hpp"
#include "json.hpp"

namespace dlip {

/// Smallest alpha in 1..q-1 with alpha^2 = -1 mod q; NoSquareRootOfMinusOne
/// unless q = 1 mod 4.
unsigned find_alpha(unsigned q);

/// Gray map data for F_q[gamma] with gamma^2 = 0.
class GrayContext {
 public:
  /// UnsupportedRing unless the ring is Fgamma:q^2.
  explicit GrayContext(RingPtr ring);

  const RingPtr& ring() const { return ring_; }
  /// The prime field F_q that images live in.
  const RingPtr& field() const { return field_; }
  unsigned q() const { return q_; }
  unsigned alpha() const { return alpha_; }

  /// a + gamma b -> (alpha b, a + b).
  std::pair<Elem, Elem> map(Elem x) const;
  Elem unmap(Elem first, Elem second) const;
  /// 0, 1 or 2.
  unsigned weight(Elem x) const;

 private:
  RingPtr ring_, field_;
  unsigned q_, alpha_;
};

/// Coordinatewise image, interleaved: (phi(x_1), phi(x_2), ...), length 2n.
Vector gray_map(const GrayContext& g, const Vector& x);
/// Inverse of gray_map; PreconditionFailed on odd length.
Vector gray_inverse(const GrayContext& g, const Vector& y);
unsigned gray_weight(const GrayContext& g, const Vector& x);
unsigned hamming_weight(const Vector& x);

/// phi(C) as an F_q-linear code. Checks that the image of the element set is
/// the F_q-span of the images of {g, gamma g} over the generators g, and that
/// every codeword keeps its weight; PreconditionFailed otherwise.
Code gray_image_code(const GrayContext& g, const Code& c);

/// Minimum weight over nonzero codewords; ZeroCode for {0}.
unsigned min_hamming_weight(const Code& c);
unsigned min_gray_weight(const GrayContext& g, const Code& c);

struct EaqecParams {
  int n = 0;
  int k = 0;
  /// Unset when neither distance could be computed.
  std::optional<int> d;
  int c = 0;
  unsigned q = 0;

  /// "[[7,3,3;3]]_2", with "-" for an unknown distance.
  std::string format() const;
  nlohmann::json to_json() const;
  friend bool operator==(const EaqecParams&, const EaqecParams&) = default;
};

/// [[n, k2 - ell, min(d1perp, d2); k1 - ell]]_q. NegativeParameter if
/// ell < 0, k1 < ell or k2 < ell. Either distance may be unknown.
EaqecParams eaqec_from_lip(int k1, std::optional<int> d1, int k2, std::optional<int> d2, int ell,
                           std::optional<int> d1perp, int n, unsigned q);

struct ConstacyclicEaqecReport {
  int tau1 = 0, tau2 = 0;
  unsigned k1 = 0, k2 = 0;
  /// Exact intersection dimension, and the value of the displayed sum.
  unsigned ell = 0, ell_literal = 0;
  std::optional<unsigned> w2, w1perp;
  /// Built from k_i - ell and the enumerated Gray distances.
  EaqecParams params;
  /// TauMismatch message when some tau_i differs from k_i - ell.
  std::optional<std::string> tau_mismatch;

  nlohmann::json to_json() const;
};

/// tau_i = 2(deg F_{i,1} + deg L_0) + (deg F_{i,2} + deg L_1) - 3n with F the
/// canonical tuple and L the lcm tower. Distances are enumerated, so the
/// codes must be oracle-feasible.
ConstacyclicEaqecReport eaqec_from_constacyclic_pair(const ConstacyclicCode& c1, const ConstacyclicCode& c2,
                                                     std::uint64_t bound = kDefaultOracleBound);
/// Same, with w2 = wt_G(C2) and w1perp = wt_G(C1^perp) already known (unset
/// for the zero code). Sweeps use this to enumerate each code once.
ConstacyclicEaqecReport eaqec_from_constacyclic_pair(const ConstacyclicCode& c1, const ConstacyclicCode& c2,
                                                     std::optional<unsigned> w2, std::optional<unsigned> w1perp);

}  // namespace dlip
