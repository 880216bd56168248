#include <algorithm>
#include <map>
#include <optional>
#include <unordered_set>

#include "dlip/linalg.hpp"

namespace dlip {

namespace detail {
Matrix structural_dual(const Matrix& g);
}

namespace {

// Additive generators of R as an abelian group.
std::vector<Elem> additive_generators(const Ring& ring) {
  switch (ring.family()) {
    case Family::PrimeField:
    case Family::ChainZ:
      return {ring.one()};
    case Family::ChainFqGamma: {
      std::vector<Elem> out;
      for (unsigned j = 0; j < ring.t(); ++j) out.push_back(ring.pow(ring.gamma(), j));
      return out;
    }
    case Family::LocalU: {
      std::vector<Elem> out;
      for (unsigned a = 0; a < (1u << ring.spec().k); ++a) out.push_back(ring.monomial(a));
      return out;
    }
    case Family::CrtProduct: {
      std::vector<Elem> out;
      const auto& comps = ring.components();
      for (std::size_t j = 0; j < comps.size(); ++j)
        for (Elem a : additive_generators(*comps[j])) {
          std::vector<Elem> parts(comps.size(), 0);
          parts[j] = a;
          out.push_back(ring.combine(parts));
        }
      return out;
    }
  }
  return {};
}

// Additive subgroup of R^n grown by coset addition. Membership uses a dense
// bitmap when the ambient space is small enough, a hash set otherwise.
class ClosureBuilder {
 public:
  ClosureBuilder(RingPtr ring, std::size_t n, std::uint64_t bound)
      : ring_(std::move(ring)), codec_(ring_, n), bound_(bound), additive_(additive_generators(*ring_)) {
    bool dense = false;
    try {
      dense = codec_.ambient_size() <= (std::uint64_t{1} << 28);
    } catch (const Error&) {
      dense = false;
    }
    if (dense) bitmap_.assign((codec_.ambient_size() + 63) / 64, 0);
    insert(0);
  }

  bool contains(Key k) const {
    if (!bitmap_.empty()) return (bitmap_[k / 64] >> (k % 64)) & 1u;
    return hashed_.count(k) != 0;
  }

  // Adds the submodule generated by v.
  void add_module_generator(const Vector& v) {
    for (Elem a : additive_) add_group_generator(codec_.encode(scale(*ring_, a, v)));
  }

  void add_group_generator(Key g) {
    if (contains(g)) return;
    const std::size_t base = elements_.size();
    Key shift = g;
    while (!contains(shift)) {
      for (std::size_t i = 0; i < base; ++i) insert(codec_.add(elements_[i], shift));
      shift = codec_.add(shift, g);
    }
  }

  std::size_t size() const { return elements_.size(); }

  std::vector<Key> sorted() const {
    std::vector<Key> out = elements_;
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  void insert(Key k) {
    if (contains(k)) return;
    if (elements_.size() >= bound_)
      throw Error(ErrorKind::ClosureTooLarge, "closure exceeds the bound of " + std::to_string(bound_) + " elements");
    if (!bitmap_.empty())
      bitmap_[k / 64] |= std::uint64_t{1} << (k % 64);
    else
      hashed_.insert(k);
    elements_.push_back(k);
  }

  RingPtr ring_;
  VectorCodec codec_;
  std::uint64_t bound_;
  std::vector<Elem> additive_;
  std::vector<std::uint64_t> bitmap_;
  std::unordered_set<Key> hashed_;
  std::vector<Key> elements_;
};

std::uint64_t checked_pow(std::uint64_t base, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (r > ~std::uint64_t{0} / base) throw Error(ErrorKind::ClosureTooLarge, "code size overflows 64 bits");
    r *= base;
  }
  return r;
}

unsigned exact_log(std::uint64_t size, unsigned q) {
  unsigned d = 0;
  std::uint64_t s = 1;
  while (s < size) {
    s *= q;
    ++d;
  }
  if (s != size)
    throw Error(ErrorKind::NotAPowerOfQ, std::to_string(size) + " is not a power of " + std::to_string(q));
  return d;
}

// Rows m_i * g for every maximal-ideal generator m_i and spanning row g.
Matrix ideal_times(const Matrix& g) {
  const Ring& ring = *g.ring();
  std::vector<Vector> rows;
  for (Elem m : ring.maximal_ideal_generators())
    for (std::size_t i = 0; i < g.rows(); ++i) rows.push_back(scale(ring, m, g.row(i)));
  return Matrix::from_rows(g.ring(), g.cols(), rows);
}

void require_compatible(const Code& c, const Code& d) {
  require_same_ring(*c.ring(), *d.ring());
  if (c.length() != d.length())
    throw Error(ErrorKind::LengthMismatch,
                "code lengths " + std::to_string(c.length()) + " and " + std::to_string(d.length()) + " differ");
}

bool closure_feasible(const Code& c) {
  try {
    return c.size() <= c.oracle_bound();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ClosureTooLarge) return false;
    throw;
  }
}

// {alpha in R^s : sum alpha_i v_i = 0}.
Code relation_module(const Ring& ring, const std::vector<Vector>& vectors, std::uint64_t bound) {
  RingPtr rp = ring.shared_from_this();
  if (vectors.empty()) return Code::zero(rp, 1, bound);
  const std::size_t n = vectors.front().size();
  for (const auto& v : vectors)
    if (v.size() != n) throw Error(ErrorKind::LengthMismatch, "vectors have different lengths");
  Matrix m = Matrix::from_rows(rp, n, vectors);
  return dual(Code(m.transpose(), bound));
}

}  // namespace

Code::Code(Matrix generators, std::uint64_t oracle_bound)
    : gens_(std::move(generators)), bound_(oracle_bound), cache_(std::make_shared<Cache>()) {
  if (gens_.cols() == 0) throw Error(ErrorKind::PreconditionFailed, "code length must be at least 1");
}

Code Code::full(RingPtr ring, std::size_t n, std::uint64_t oracle_bound) {
  return Code(Matrix::identity(std::move(ring), n), oracle_bound);
}

Code Code::zero(RingPtr ring, std::size_t n, std::uint64_t oracle_bound) {
  return Code(Matrix(std::move(ring), 0, n), oracle_bound);
}

Code Code::from_elements(RingPtr ring, std::size_t n, std::vector<Key> elements, std::uint64_t oracle_bound) {
  ClosureBuilder builder(ring, n, oracle_bound);
  VectorCodec codec(ring, n);
  std::vector<Vector> gens;
  for (Key k : elements) {
    if (builder.size() == elements.size()) break;
    if (builder.contains(k)) continue;
    gens.push_back(codec.decode(k));
    builder.add_module_generator(gens.back());
  }
  if (builder.size() != elements.size())
    throw Error(ErrorKind::PreconditionFailed, "element set is not a submodule");
  Code c(Matrix::from_rows(ring, n, gens), oracle_bound);
  std::call_once(c.cache_->once, [&] { c.cache_->elements = std::move(elements); });
  return c;
}

const std::vector<Key>& Code::elements() const {
  std::call_once(cache_->once, [this] { cache_->elements = span_closure(gens_, bound_); });
  return cache_->elements;
}

std::uint64_t Code::size() const {
  const Ring& r = *ring();
  if (r.is_local()) return checked_pow(r.q(), rank_q(gens_));
  std::uint64_t total = 1;
  for (std::size_t j = 0; j < r.components().size(); ++j) {
    const std::uint64_t part = project(*this, j).size();
    if (total > ~std::uint64_t{0} / part) throw Error(ErrorKind::ClosureTooLarge, "code size overflows 64 bits");
    total *= part;
  }
  return total;
}

bool Code::contains(const Vector& v) const {
  if (v.size() != length()) throw Error(ErrorKind::LengthMismatch, "vector length differs from code length");
  const auto& els = elements();
  return std::binary_search(els.begin(), els.end(), codec().encode(v));
}

std::vector<Key> span_closure(const Matrix& gens, std::uint64_t bound) {
  ClosureBuilder builder(gens.ring(), gens.cols(), bound);
  for (std::size_t i = 0; i < gens.rows(); ++i) builder.add_module_generator(gens.row(i));
  return builder.sorted();
}

Dimension dim(const Code& c) {
  const Ring& r = *c.ring();
  if (r.is_local()) return Dimension::local(r.q(), rank_q(c.generators()));
  Dimension d;
  for (std::size_t j = 0; j < r.components().size(); ++j)
    d.parts.push_back({r.components()[j]->q(), dim(project(c, j)).value()});
  return d;
}

Dimension dim_oracle(const Code& c) {
  const Ring& r = *c.ring();
  if (r.is_local()) return Dimension::local(r.q(), exact_log(c.elements().size(), r.q()));
  Dimension d;
  for (std::size_t j = 0; j < r.components().size(); ++j)
    d.parts.push_back({r.components()[j]->q(), dim_oracle(project(c, j)).value()});
  return d;
}

unsigned rank_q_oracle(const Matrix& a, std::uint64_t bound) {
  const Ring& r = *a.ring();
  if (!r.is_local()) throw Error(ErrorKind::NotLocal, "rank_q needs a local ring, got " + r.name());
  return exact_log(span_closure(a, bound).size(), r.q());
}

Code dual(const Code& c) {
  const Ring& r = *c.ring();
  if (r.is_local()) return Code(detail::structural_dual(c.generators()), c.oracle_bound());
  std::vector<Code> parts;
  for (std::size_t j = 0; j < r.components().size(); ++j) parts.push_back(dual(project(c, j)));
  return crt_code(c.ring(), parts);
}

Code dual_oracle(const Code& c) {
  const VectorCodec codec = c.codec();
  const std::uint64_t total = codec.ambient_size();
  if (total > c.oracle_bound())
    throw Error(ErrorKind::ClosureTooLarge, "ambient space of " + std::to_string(total) + " vectors exceeds the bound");
  const Ring& r = *c.ring();
  const auto gens = c.generators().row_vectors();
  std::vector<Key> out;
  for (Key k = 0; k < total; ++k) {
    const Vector v = codec.decode(k);
    bool ok = true;
    for (const auto& g : gens)
      if (inner(r, v, g) != 0) {
        ok = false;
        break;
      }
    if (ok) out.push_back(k);
  }
  return Code::from_elements(c.ring(), c.length(), std::move(out), c.oracle_bound());
}

Code intersect(const Code& c, const Code& d) {
  require_compatible(c, d);
  if (closure_feasible(c) && closure_feasible(d)) {
    std::vector<Key> out;
    std::set_intersection(c.elements().begin(), c.elements().end(), d.elements().begin(), d.elements().end(),
                          std::back_inserter(out));
    return Code::from_elements(c.ring(), c.length(), std::move(out), c.oracle_bound());
  }
  // Frobenius rings: C cap D = (C^perp + D^perp)^perp.
  return dual(sum(dual(c), dual(d)));
}

Code sum(const Code& c, const Code& d) {
  require_compatible(c, d);
  return Code(c.generators().stack(d.generators()), c.oracle_bound());
}

Code hull(const Code& c) { return intersect(c, dual(c)); }

Code kernel_in_code(const Matrix& a, const Code& c) {
  require_same_ring(*a.ring(), *c.ring());
  if (a.cols() != c.length())
    throw Error(ErrorKind::LengthMismatch, "matrix has " + std::to_string(a.cols()) + " columns, code length is " +
                                               std::to_string(c.length()));
  if (!closure_feasible(c)) return intersect(c, dual(Code(a, c.oracle_bound())));
  const Ring& r = *c.ring();
  const VectorCodec codec = c.codec();
  const auto rows = a.row_vectors();
  std::vector<Key> out;
  for (Key k : c.elements()) {
    const Vector v = codec.decode(k);
    if (std::all_of(rows.begin(), rows.end(), [&](const Vector& row) { return inner(r, row, v) == 0; }))
      out.push_back(k);
  }
  return Code::from_elements(c.ring(), c.length(), std::move(out), c.oracle_bound());
}

unsigned rank_R(const Code& c) {
  const Ring& r = *c.ring();
  if (!r.is_local()) {
    unsigned best = 0;
    for (std::size_t j = 0; j < r.components().size(); ++j) best = std::max(best, rank_R(project(c, j)));
    return best;
  }
  // Nakayama: minimal generators = dim_{F_q} C / mC.
  const Matrix& g = c.generators();
  return rank_q(g) - rank_q(ideal_times(g));
}

bool is_free(const Code& c) {
  const Ring& r = *c.ring();
  if (!r.is_local()) {
    std::optional<unsigned> common;
    for (std::size_t j = 0; j < r.components().size(); ++j) {
      const Code part = project(c, j);
      if (!is_free(part)) return false;
      const unsigned k = rank_R(part);
      if (common && *common != k) return false;
      common = k;
    }
    return true;
  }
  return rank_q(c.generators()) == rank_R(c) * r.omega();
}

Matrix basis_rows(const Code& c) {
  const RingPtr& rp = c.ring();
  const Ring& r = *rp;
  const Matrix& g = c.generators();
  if (!r.is_local()) {
    std::vector<Matrix> parts;
    std::size_t rows = 0;
    for (std::size_t j = 0; j < r.components().size(); ++j) {
      parts.push_back(basis_rows(project(c, j)));
      rows = std::max(rows, parts.back().rows());
    }
    Matrix out(rp, rows, g.cols());
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t col = 0; col < g.cols(); ++col) {
        std::vector<Elem> comp(parts.size(), 0);
        for (std::size_t j = 0; j < parts.size(); ++j)
          if (i < parts[j].rows()) comp[j] = parts[j].at(i, col);
        out.set(i, col, r.combine(comp));
      }
    return out;
  }
  Matrix acc = ideal_times(g);
  unsigned acc_rank = rank_q(acc);
  std::vector<Vector> kept;
  for (std::size_t i = 0; i < g.rows(); ++i) {
    Matrix trial = acc.stack(Matrix::from_rows(rp, g.cols(), {g.row(i)}));
    const unsigned tr = rank_q(trial);
    if (tr > acc_rank) {
      acc = std::move(trial);
      acc_rank = tr;
      kept.push_back(g.row(i));
    }
  }
  return Matrix::from_rows(rp, g.cols(), kept);
}

bool is_modular_independent(const Ring& ring, const std::vector<Vector>& vectors, std::uint64_t bound) {
  if (!ring.is_local()) throw Error(ErrorKind::NotLocal, "modular independence needs a local ring");
  // Every relation must have all coefficients in m; m R^s is a submodule, so
  // checking a generating set of the relation module suffices.
  const Code rel = relation_module(ring, vectors, bound);
  const Matrix& g = rel.generators();
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j)
      if (ring.is_unit(g.at(i, j))) return false;
  return true;
}

bool is_R_independent(const Ring& ring, const std::vector<Vector>& vectors, std::uint64_t bound) {
  if (!ring.is_local()) throw Error(ErrorKind::NotLocal, "independence test needs a local ring");
  if (vectors.empty()) return true;
  const Code rel = relation_module(ring, vectors, bound);
  const VectorCodec codec = rel.codec();
  for (Key k : rel.elements()) {
    const Vector alpha = codec.decode(k);
    bool some_zero = false;
    for (std::size_t i = 0; i < alpha.size() && !some_zero; ++i)
      some_zero = is_zero(scale(ring, alpha[i], vectors[i]));
    if (!some_zero) return false;
  }
  return true;
}

std::vector<Code> all_submodules(const RingPtr& ring, std::size_t n, std::uint64_t bound) {
  const VectorCodec codec(ring, n);
  const std::uint64_t total = codec.ambient_size();
  if (total > bound)
    throw Error(ErrorKind::ClosureTooLarge, "ambient space of " + std::to_string(total) + " vectors exceeds the bound");

  struct Entry {
    std::vector<Key> elements;
    std::vector<Vector> gens;
  };
  std::map<std::vector<Key>, std::size_t> seen;
  std::vector<Entry> found;
  auto record = [&](std::vector<Key> els, std::vector<Vector> gens) {
    if (seen.count(els)) return;
    seen.emplace(els, found.size());
    found.push_back({std::move(els), std::move(gens)});
  };

  for (Key k = 0; k < total; ++k) {
    const Vector v = codec.decode(k);
    record(span_closure(Matrix::from_rows(ring, n, {v}), bound), {v});
  }
  const std::size_t cyclic = found.size();

  // Every submodule is a sum of cyclic ones; grow sums breadth first.
  for (std::size_t i = 0; i < found.size(); ++i)
    for (std::size_t j = 0; j < cyclic; ++j) {
      if (std::includes(found[i].elements.begin(), found[i].elements.end(), found[j].elements.begin(),
                        found[j].elements.end()))
        continue;
      std::vector<Vector> gens = found[i].gens;
      gens.push_back(found[j].gens.front());
      record(span_closure(Matrix::from_rows(ring, n, gens), bound), gens);
    }

  std::sort(found.begin(), found.end(), [](const Entry& a, const Entry& b) {
    if (a.elements.size() != b.elements.size()) return a.elements.size() < b.elements.size();
    return a.elements < b.elements;
  });
  std::vector<Code> out;
  out.reserve(found.size());
  for (auto& e : found) {
    out.push_back(Code::from_elements(ring, n, std::move(e.elements), bound));
  }
  return out;
}

Matrix project(const Matrix& a, std::size_t component) {
  const Ring& r = *a.ring();
  if (r.is_local()) {
    if (component != 0) throw Error(ErrorKind::ComponentMismatch, "local ring has a single component");
    return a;
  }
  if (component >= r.components().size())
    throw Error(ErrorKind::ComponentMismatch, "component index " + std::to_string(component) + " out of range");
  Matrix out(r.components()[component], a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.set(i, j, r.decompose(a.at(i, j))[component]);
  return out;
}

Code project(const Code& c, std::size_t component) {
  return Code(project(c.generators(), component), c.oracle_bound());
}

Code crt_code(const RingPtr& ring, const std::vector<Code>& parts) {
  const Ring& r = *ring;
  if (r.is_local() || parts.size() != r.components().size())
    throw Error(ErrorKind::ComponentMismatch, "need one code per CRT component");
  const std::size_t n = parts.front().length();
  std::vector<Vector> rows;
  for (std::size_t j = 0; j < parts.size(); ++j) {
    require_same_ring(*parts[j].ring(), *r.components()[j]);
    if (parts[j].length() != n) throw Error(ErrorKind::LengthMismatch, "component codes differ in length");
    const Matrix& g = parts[j].generators();
    for (std::size_t i = 0; i < g.rows(); ++i) {
      Vector row(n);
      for (std::size_t col = 0; col < n; ++col) {
        std::vector<Elem> comp(parts.size(), 0);
        comp[j] = g.at(i, col);
        row[col] = r.combine(comp);
      }
      rows.push_back(std::move(row));
    }
  }
  return Code(Matrix::from_rows(ring, n, rows), parts.front().oracle_bound());
}

}  // namespace dlip
