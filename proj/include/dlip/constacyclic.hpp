#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "dlip/linalg.hpp"

namespace dlip {

/// Polynomial over a chain ring, coefficients in ascending degree with
/// trailing zeros removed.
class Poly {
 public:
  Poly() = default;
  Poly(RingPtr ring, std::vector<Elem> coeffs);
  static Poly constant(RingPtr ring, Elem c) { return Poly(std::move(ring), {c}); }
  static Poly monomial(RingPtr ring, Elem c, std::size_t degree);
  /// x^n - lambda.
  static Poly x_n_minus(RingPtr ring, std::size_t n, Elem lambda);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Elem>& coeffs() const { return c_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  Elem lead() const { return c_.empty() ? 0 : c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == ring_->one(); }

  /// "x^3+2x^2+x+1"; Fgamma coefficients print as "(1+2g)".
  std::string format() const;

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

 private:
  RingPtr ring_;
  std::vector<Elem> c_;
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
Poly scale(Elem c, const Poly& a);
/// Division by a polynomial with unit leading coefficient.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
/// a* = x^deg(a) a(0)^{-1} a(1/x).
Poly reciprocal(const Poly& a);
bool is_self_reciprocal(const Poly& a);
/// Parses "x^3+2x^2+x+1", "(1+2g)x+3", "2*x^2".
Poly parse_poly(const RingPtr& ring, const std::string& text);

/// Polynomials over the prime field F_q as ascending coefficient lists.
namespace fq {
using Poly = std::vector<unsigned>;
void trim(Poly& a);
Poly add(unsigned q, const Poly& a, const Poly& b);
Poly sub(unsigned q, const Poly& a, const Poly& b);
Poly mul(unsigned q, const Poly& a, const Poly& b);
std::pair<Poly, Poly> divmod(unsigned q, const Poly& a, const Poly& b);
Poly monic(unsigned q, const Poly& a);
/// Monic gcd.
Poly gcd(unsigned q, Poly a, Poly b);
/// (g, s, t) with s a + t b = g = gcd(a, b), g monic.
std::tuple<Poly, Poly, Poly> ext_gcd(unsigned q, const Poly& a, const Poly& b);
Poly powmod(unsigned q, Poly base, std::uint64_t e, const Poly& mod);
/// Monic irreducible factors of a squarefree polynomial, sorted by degree
/// and then by coefficients read from the leading term down.
std::vector<Poly> factor_squarefree(unsigned q, const Poly& f, std::uint64_t seed);
bool is_irreducible(unsigned q, const Poly& f);
}  // namespace fq

std::vector<unsigned> residue(const Poly& a);
Poly lift(const RingPtr& ring, const std::vector<unsigned>& a);
/// Lift of the monic gcd of the residue images.
Poly gcd_residue(const Poly& a, const Poly& b);

inline constexpr std::uint64_t kFactorSeed = 0x5eed;

/// Bitset of factor indices.
using FactorMask = std::uint64_t;

/// Factorization data for R[x]/(x^n - lambda). Obtained through `get`, which
/// caches one instance per (ring, n, lambda).
class ConstacyclicContext {
 public:
  static std::shared_ptr<const ConstacyclicContext> get(const RingPtr& ring, std::size_t n, Elem lambda);

  const RingPtr& ring() const { return ring_; }
  std::size_t n() const { return n_; }
  Elem lambda() const { return lambda_; }
  unsigned t() const { return ring_->t(); }
  unsigned q() const { return ring_->q(); }
  const Poly& modulus() const { return modulus_; }
  /// Monic basic-irreducible factors of x^n - lambda, pairwise coprime.
  const std::vector<Poly>& factors() const { return factors_; }
  std::size_t factor_count() const { return factors_.size(); }
  FactorMask all() const { return factors_.size() == 64 ? ~FactorMask{0} : (FactorMask{1} << factors_.size()) - 1; }

  Poly product(FactorMask m) const;
  unsigned degree(FactorMask m) const;
  /// Factor support of a monic divisor of x^n - lambda; NotADivisor otherwise.
  FactorMask mask_of(const Poly& divisor) const;
  /// "(x+1)*(x^3+x^2+2x+1)", "1" for the empty product.
  std::string format_mask(FactorMask m) const;

  ConstacyclicContext(RingPtr ring, std::size_t n, Elem lambda);

 private:
  RingPtr ring_;
  std::size_t n_;
  Elem lambda_;
  Poly modulus_;
  std::vector<Poly> factors_;
};
using ContextPtr = std::shared_ptr<const ConstacyclicContext>;

/// The factors of x^n - lambda over a chain ring (gcd(n, q) = 1).
std::vector<Poly> factor_unital(const RingPtr& ring, std::size_t n, Elem lambda);

/// Ideal <gamma^j D_j : 0 <= j < t> with D_{j+1} | D_j | x^n - lambda, stored
/// as factor masks. The zero code has every D_j = x^n - lambda.
struct ConstacyclicCode {
  ContextPtr ctx;
  std::vector<FactorMask> tower;

  Poly divisor(unsigned j) const { return ctx->product(tower[j]); }
  /// log_q |C| = sum_j (n - deg D_j).
  unsigned log_size() const;
  bool is_free() const;
  /// Level of factor i: the number of j with factor i in D_j.
  unsigned level(std::size_t i) const;

  friend bool operator==(const ConstacyclicCode& a, const ConstacyclicCode& b) {
    return a.ctx == b.ctx && a.tower == b.tower;
  }
};

ConstacyclicCode code_from_masks(const ContextPtr& ctx, std::vector<FactorMask> tower);
ConstacyclicCode code_from_tower(const ContextPtr& ctx, const std::vector<Poly>& tower);
/// Ideal generated by gamma^{e} P for each (e, P); P need not divide
/// x^n - lambda.
ConstacyclicCode code_from_generators(const ContextPtr& ctx, const std::vector<std::pair<unsigned, Poly>>& gens);
/// Every tower for the context, ordered by tower masks.
std::vector<ConstacyclicCode> all_towers(const ContextPtr& ctx);

/// Psi^{-1} on polynomials of degree < n, and back.
Vector to_vector(const Poly& p, std::size_t n);
Poly to_poly(const RingPtr& ring, const Vector& v);
/// (lambda c_{n-1}, c_0, ..., c_{n-2}).
Vector constashift(const Ring& ring, const Vector& v, Elem lambda);
bool is_constacyclic(const Code& c, Elem lambda);

/// The length-n code spanned by all constashifts of the tower generators.
Code materialize(const ConstacyclicCode& c, std::uint64_t bound = kDefaultOracleBound);
/// Recovers the tower from an explicit constacyclic code via its residue
/// torsion tower; CanonicalizationMismatch if the code is not the ideal of
/// the recovered tower.
ConstacyclicCode tower_from_code(const ContextPtr& ctx, const Code& c);

/// (F_0, ..., F_t) as factor masks: F_{j+1} = D_{j-1} / D_j with
/// D_{-1} = x^n - lambda, F_0 = D_{t-1}.
struct CanonicalTuple {
  ContextPtr ctx;
  std::vector<FactorMask> f;
  std::vector<Poly> polys() const;
  /// Generators gamma^j (x^n - lambda) / F_{j+1}.
  std::vector<std::pair<unsigned, Poly>> generators() const;
};
CanonicalTuple canonical_tuple(const ConstacyclicCode& c);
/// Checks the tuple invariants and that its generators rebuild the code;
/// with `oracle` also compares against the torsion tower of the explicit
/// code. Throws CanonicalizationMismatch.
void verify_canonical(const ConstacyclicCode& c, const CanonicalTuple& tuple, bool oracle);

struct SizeExponents {
  unsigned q = 0;
  unsigned log_code = 0;  // sum (t - j) deg F_{j+1}
  unsigned log_dual = 0;  // sum_{j=1..t} j deg F_{j+1}, F_{t+1} = F_0
};
SizeExponents constacyclic_size(const CanonicalTuple& tuple);

/// The dual as a lambda^{-1}-constacyclic code, from reciprocals of the
/// complementary products.
ConstacyclicCode constacyclic_dual(const ConstacyclicCode& c);

struct IntersectionReport {
  ConstacyclicCode meet;       // lcm tower
  unsigned dim_literal = 0;    // sum (t - j)(n - deg lcm_j)
  unsigned dim_exact = 0;      // sum (n - deg lcm_j)
};
IntersectionReport constacyclic_intersection(const ConstacyclicCode& a, const ConstacyclicCode& b);

struct FreeSumReport {
  FactorMask f1 = 0, f2 = 0;
  bool coprime = false;  // lcm(F1, F2) = F1 F2, i.e. C1 + C2 = R^n
  bool lcp = false;      // additionally deg(F1 F2) = n
  unsigned deg_product = 0;
};
FreeSumReport free_sum_check(const ContextPtr& ctx, const Poly& f1, const Poly& f2);

/// Other: both shifts preserve the intersection, yet it is neither {0} nor R^n.
enum class MixedVerdict { Zero, Full, Other, HypothesisNotMet };
struct MixedLambdaReport {
  MixedVerdict verdict = MixedVerdict::HypothesisNotMet;
  unsigned ell = 0;
  bool covers = false;
  bool lcp = false;
  /// Verdict Other: the intersection is closed under both shifts but is
  /// neither {0} nor R^n.
  bool violation = false;
  /// Hypothesis met and C1 + C2 = R^n, yet the pair is not an LCP. Happens
  /// exactly when C1 = C2 = R^n.
  bool covering_not_lcp = false;
};
MixedLambdaReport mixed_lambda_intersection(const ConstacyclicCode& a, const ConstacyclicCode& b,
                                            std::uint64_t bound = kDefaultOracleBound);

struct LcdReport {
  bool square_one = false;  // pi(lambda)^2 = 1
  bool predicted = false;   // F = F* when square_one, else true
  bool actual = false;      // hull of the explicit code is {0}
  bool consistent() const { return predicted == actual; }
};
LcdReport constacyclic_lcd_check(const ContextPtr& ctx, const Poly& f, std::uint64_t bound = kDefaultOracleBound);

/// "<fg, 2*(x+1)>" with each generator in factored form; "<0>" for the zero code.
std::string format_generators(const ConstacyclicCode& c);
/// "D0=1,2;D1=2".
std::string format_tower(const ConstacyclicCode& c);
/// Parses "D0=1,2;D1=2" (';' or whitespace between levels); missing levels repeat the previous one, an empty
/// list is the unit polynomial.
ConstacyclicCode parse_tower(const ContextPtr& ctx, const std::string& text);

}  // namespace dlip
