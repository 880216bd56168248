#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "dlip/ring.hpp"

namespace dlip {

using Vector = std::vector<Elem>;
/// A vector of R^n packed as sum_j v_j |R|^j.
using Key = std::uint64_t;

inline constexpr std::uint64_t kDefaultOracleBound = std::uint64_t{1} << 22;

Vector add(const Ring& ring, const Vector& a, const Vector& b);
Vector scale(const Ring& ring, Elem c, const Vector& v);
/// Standard bilinear form sum_j v_j w_j.
Elem inner(const Ring& ring, const Vector& v, const Vector& w);
bool is_zero(const Vector& v);

/// Packs vectors of R^n into 64-bit keys.
class VectorCodec {
 public:
  VectorCodec(RingPtr ring, std::size_t n);
  Key encode(const Vector& v) const;
  Vector decode(Key key) const;
  Key add(Key a, Key b) const;
  Key scale(Elem c, Key a) const;
  /// |R|^n; throws ClosureTooLarge when it does not fit a key.
  std::uint64_t ambient_size() const;
  std::size_t length() const { return n_; }

 private:
  RingPtr ring_;
  std::size_t n_;
  std::uint64_t base_;
  bool fits_;
};

class Matrix {
 public:
  Matrix(RingPtr ring, std::size_t rows, std::size_t cols);
  static Matrix from_rows(RingPtr ring, std::size_t cols, const std::vector<Vector>& rows);
  static Matrix identity(RingPtr ring, std::size_t n);

  const RingPtr& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Elem at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, Elem v) { data_[i * cols_ + j] = v; }
  Vector row(std::size_t i) const;
  std::vector<Vector> row_vectors() const;

  Matrix transpose() const;
  Matrix operator*(const Matrix& rhs) const;
  /// Vertical concatenation (this on top).
  Matrix stack(const Matrix& below) const;

  std::string format() const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.ring_->same_as(*b.ring_) && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  RingPtr ring_;
  std::size_t rows_, cols_;
  std::vector<Elem> data_;
};

/// Code dimension. Over a local ring: a single (q, log_q|C|) pair. Over a
/// CRT product: one (q_j, dim C_j) pair per component; equality is
/// componentwise and `derived()` gives the weighted real value.
struct Dimension {
  std::vector<std::pair<unsigned, unsigned>> parts;

  static Dimension local(unsigned q, unsigned d) { return Dimension{{{q, d}}}; }
  bool is_local() const { return parts.size() == 1; }
  /// Exact value for local rings; throws NotLocal otherwise.
  unsigned value() const;
  double derived() const;
  std::string format() const;

  friend bool operator==(const Dimension&, const Dimension&) = default;
};

/// An R-submodule of R^n given by spanning rows (not necessarily a basis).
/// Codes are immutable; the explicit element set is computed on first use
/// and shared between copies.
class Code {
 public:
  explicit Code(Matrix generators, std::uint64_t oracle_bound = kDefaultOracleBound);
  static Code full(RingPtr ring, std::size_t n, std::uint64_t oracle_bound = kDefaultOracleBound);
  static Code zero(RingPtr ring, std::size_t n, std::uint64_t oracle_bound = kDefaultOracleBound);
  /// Builds a code from a sorted element set that is known to be a submodule.
  static Code from_elements(RingPtr ring, std::size_t n, std::vector<Key> elements,
                            std::uint64_t oracle_bound = kDefaultOracleBound);

  const RingPtr& ring() const { return gens_.ring(); }
  std::size_t length() const { return gens_.cols(); }
  const Matrix& generators() const { return gens_; }
  std::uint64_t oracle_bound() const { return bound_; }
  VectorCodec codec() const { return VectorCodec(ring(), length()); }

  /// Sorted element keys from closure of the generators (oracle path).
  const std::vector<Key>& elements() const;
  /// |C| without enumerating when a structural fast path exists.
  std::uint64_t size() const;
  bool contains(const Vector& v) const;
  bool same_elements(const Code& other) const { return elements() == other.elements(); }

 private:
  struct Cache {
    std::once_flag once;
    std::vector<Key> elements;
  };
  Matrix gens_;
  std::uint64_t bound_;
  std::shared_ptr<Cache> cache_;
};

/// Worklist closure of the rows under addition and scalar multiplication.
std::vector<Key> span_closure(const Matrix& gens, std::uint64_t bound = kDefaultOracleBound);

Dimension dim(const Code& c);
/// log_q |C| from the explicit element set; NotAPowerOfQ if it is not exact.
Dimension dim_oracle(const Code& c);

/// log_q of the row-span cardinality (local rings only). Uses the chain-ring
/// standard form or the F_2-linearization for LocalU.
unsigned rank_q(const Matrix& a);
unsigned rank_q_oracle(const Matrix& a, std::uint64_t bound = kDefaultOracleBound);
/// log_q of the column-span cardinality, i.e. rank_q of the transpose.
unsigned col_rank_q(const Matrix& a);

Code dual(const Code& c);
Code dual_oracle(const Code& c);
Code intersect(const Code& c, const Code& d);
Code sum(const Code& c, const Code& d);
Code hull(const Code& c);
Code kernel_in_code(const Matrix& a, const Code& c);

/// Minimal number of generators.
unsigned rank_R(const Code& c);
bool is_free(const Code& c);
/// A minimal generating set extracted from the code's spanning rows.
Matrix basis_rows(const Code& c);

bool is_modular_independent(const Ring& ring, const std::vector<Vector>& vectors,
                            std::uint64_t bound = kDefaultOracleBound);
bool is_R_independent(const Ring& ring, const std::vector<Vector>& vectors,
                      std::uint64_t bound = kDefaultOracleBound);

/// Row echelon form over a chain ring. Each kept row has pivot gamma^v in
/// its pivot column, zeros in earlier pivot columns, and every entry of
/// valuation >= v. profile[v] counts pivots of valuation v and
/// |C| = q^{sum (t - v) profile[v]}.
struct StandardForm {
  Matrix rows;
  std::vector<std::size_t> pivot_cols;
  std::vector<unsigned> pivot_valuations;
  std::vector<unsigned> profile;
  unsigned log_size = 0;
};
StandardForm standard_form(const Matrix& g);

/// P * A * Q = diag(gamma^{v_1}, ..., gamma^{v_k}, 0, ...) over a chain ring;
/// only Q is kept since it is what the kernel construction needs.
struct SmithForm {
  std::vector<unsigned> valuations;
  Matrix column_transform;
};
SmithForm smith_form(const Matrix& a);

/// Invertibility of a square matrix over a local ring (residue matrix has
/// full rank).
bool is_invertible(const Matrix& a);

/// Every submodule of R^n, in a deterministic order (small envelopes only).
std::vector<Code> all_submodules(const RingPtr& ring, std::size_t n, std::uint64_t bound = kDefaultOracleBound);

// CRT support.
Matrix project(const Matrix& a, std::size_t component);
Code project(const Code& c, std::size_t component);
/// The Chinese product of component codes (all of equal length).
Code crt_code(const RingPtr& ring, const std::vector<Code>& parts);

}  // namespace dlip
