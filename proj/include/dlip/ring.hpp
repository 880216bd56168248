#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dlip/errors.hpp"

namespace dlip {

/// Ring elements are indices into the ring's canonical enumeration.
///
/// The index is a mixed-radix encoding of the canonical coefficients, so the
/// enumeration order 0, 1, ..., |R|-1 is lexicographic in those coefficients
/// (least significant coefficient first):
///   - PrimeField(p), ChainZ(p, t): the integer residue itself.
///   - ChainFqGamma(q, t): a_0 + a_1 q + ... + a_{t-1} q^{t-1} for a_0 + a_1 g + ...
///   - LocalU(k): bit A is the coefficient of the monomial u_A, A a subset
///     of {1..k} written as a bitmask.
///   - CrtProduct: e_1 + |R_1| e_2 + |R_1||R_2| e_3 + ...
using Elem = std::uint32_t;

enum class Family { PrimeField, ChainZ, ChainFqGamma, LocalU, CrtProduct };

struct RingSpec {
  Family family = Family::PrimeField;
  unsigned p = 2;  // residue characteristic (= residue field size)
  unsigned t = 1;  // nilpotency index (ChainZ, ChainFqGamma)
  unsigned k = 0;  // number of generators u_i (LocalU)
  std::vector<RingSpec> parts;  // CrtProduct components

  static RingSpec prime_field(unsigned p) { return {Family::PrimeField, p, 1, 0, {}}; }
  static RingSpec chain_z(unsigned p, unsigned t) { return {Family::ChainZ, p, t, 0, {}}; }
  static RingSpec chain_gamma(unsigned q, unsigned t) { return {Family::ChainFqGamma, q, t, 0, {}}; }
  static RingSpec local_u(unsigned k) { return {Family::LocalU, 2, k + 1, k, {}}; }
  static RingSpec crt(std::vector<RingSpec> parts) {
    return {Family::CrtProduct, 0, 0, 0, std::move(parts)};
  }

  /// Text encoding: "F:5", "Z:2^2", "Fgamma:5^2", "U:3", "CRT(Z:2^2,F:3)".
  std::string to_string() const;
  static RingSpec parse(const std::string& text);

  friend bool operator==(const RingSpec&, const RingSpec&) = default;
};

struct LoewyProfile {
  std::vector<unsigned> mu;
  friend bool operator==(const LoewyProfile&, const LoewyProfile&) = default;
};

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

/// Immutable finite commutative ring from one of the supported families.
class Ring : public std::enable_shared_from_this<Ring> {
 public:
  static RingPtr make(const RingSpec& spec);
  static RingPtr parse(const std::string& text) { return make(RingSpec::parse(text)); }

  const RingSpec& spec() const { return spec_; }
  std::string name() const { return spec_.to_string(); }
  Family family() const { return spec_.family; }

  std::uint64_t size() const { return size_; }
  bool is_local() const { return spec_.family != Family::CrtProduct; }
  bool is_chain() const {
    return spec_.family == Family::PrimeField || spec_.family == Family::ChainZ ||
           spec_.family == Family::ChainFqGamma;
  }
  /// Residue field size (local rings only).
  unsigned q() const;
  /// Nilpotency index of the maximal ideal (local rings only).
  unsigned t() const;
  /// |R| = q^omega (local rings only).
  unsigned omega() const;

  Elem zero() const { return 0; }
  Elem one() const { return one_; }
  Elem from_int(long long value) const;

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem pow(Elem a, std::uint64_t e) const;

  bool is_unit(Elem a) const;
  Elem inv(Elem a) const;
  std::uint64_t unit_count() const;

  /// Quotient map onto F_q and its canonical section.
  unsigned residue(Elem a) const;
  Elem lift(unsigned x) const;

  /// Generators of the maximal ideal: {gamma} for chain rings (empty for a
  /// field), {u_1, ..., u_k} for LocalU.
  std::vector<Elem> maximal_ideal_generators() const;

  // Chain-ring structure. These throw NotAChainRing for other families.
  Elem gamma() const;
  /// Largest v with a in gamma^v R; t for a = 0.
  unsigned valuation(Elem a) const;
  /// a = gamma^v * unit; returns (v, unit). For a = 0 returns (t, 1).
  std::pair<unsigned, Elem> split(Elem a) const;
  /// Coefficient of gamma^j in the gamma-adic expansion of a, as a residue.
  unsigned digit(Elem a, unsigned j) const;
  /// Some x with b * x = a, assuming valuation(a) >= valuation(b).
  Elem divide(Elem a, Elem b) const;

  /// u_A for LocalU (mask is a subset of {1..k} as bits 0..k-1).
  Elem monomial(unsigned mask) const;

  LoewyProfile loewy_invariants() const;

  // CRT structure.
  const std::vector<RingPtr>& components() const { return components_; }
  std::vector<Elem> decompose(Elem a) const;
  Elem combine(const std::vector<Elem>& parts) const;

  std::string format(Elem a) const;
  Elem parse_element(const std::string& text) const;

  bool same_as(const Ring& other) const { return this == &other || spec_ == other.spec_; }

 private:
  explicit Ring(RingSpec spec);
  void build_tables();
  void require_chain(const char* op) const;

  Elem add_raw(Elem a, Elem b) const;
  Elem mul_raw(Elem a, Elem b) const;
  Elem neg_raw(Elem a) const;

  RingSpec spec_;
  std::uint64_t size_ = 0;
  Elem one_ = 1;
  std::uint64_t modulus_ = 0;  // p^t for ChainZ, p for PrimeField
  std::vector<RingPtr> components_;
  std::vector<std::uint64_t> radix_;  // CRT mixed radix
  std::vector<std::uint16_t> add_table_, mul_table_;
  std::vector<std::uint16_t> neg_table_;
};

bool is_prime(std::uint64_t n);

void require_same_ring(const Ring& a, const Ring& b);

}  // namespace dlip
