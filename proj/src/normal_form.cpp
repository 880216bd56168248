// Structural fast paths: chain-ring echelon and Smith forms, the F_2
// linearization used for LocalU rings, and residue-rank invertibility.

#include <algorithm>

#include "dlip/linalg.hpp"

namespace dlip {

namespace {

void row_axpy(const Ring& ring, Matrix& m, std::size_t dst, Elem factor, std::size_t src) {
  // row_dst -= factor * row_src
  for (std::size_t j = 0; j < m.cols(); ++j)
    m.set(dst, j, ring.sub(m.at(dst, j), ring.mul(factor, m.at(src, j))));
}

void col_axpy(const Ring& ring, Matrix& m, std::size_t dst, Elem factor, std::size_t src) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    m.set(i, dst, ring.sub(m.at(i, dst), ring.mul(factor, m.at(i, src))));
}

void swap_rows(Matrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Elem x = m.at(a, j);
    m.set(a, j, m.at(b, j));
    m.set(b, j, x);
  }
}

void swap_cols(Matrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Elem x = m.at(i, a);
    m.set(i, a, m.at(i, b));
    m.set(i, b, x);
  }
}

void scale_row(const Ring& ring, Matrix& m, std::size_t r, Elem c) {
  for (std::size_t j = 0; j < m.cols(); ++j) m.set(r, j, ring.mul(c, m.at(r, j)));
}

// Dense F_2 bit rows.
using BitRow = std::vector<std::uint64_t>;

bool get_bit(const BitRow& r, std::size_t i) { return (r[i / 64] >> (i % 64)) & 1u; }
void flip_bit(BitRow& r, std::size_t i) { r[i / 64] ^= std::uint64_t{1} << (i % 64); }

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> f2_rref(std::vector<BitRow>& rows, std::size_t width) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < width && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && !get_bit(rows[p], c)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != r && get_bit(rows[i], c))
        for (std::size_t w = 0; w < rows[i].size(); ++w) rows[i][w] ^= rows[r][w];
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

// Coordinates of the LocalU linearization: bit j * M + B is the coefficient
// of u_B in entry j, M = 2^k.
std::size_t monomial_count(const Ring& ring) { return std::size_t{1} << ring.spec().k; }

BitRow linearize(const Ring& ring, const Vector& v) {
  const std::size_t M = monomial_count(ring);
  BitRow bits((v.size() * M + 63) / 64, 0);
  for (std::size_t j = 0; j < v.size(); ++j)
    for (std::size_t B = 0; B < M; ++B)
      if ((v[j] >> B) & 1u) flip_bit(bits, j * M + B);
  return bits;
}

unsigned local_u_rank(const Matrix& a) {
  const Ring& ring = *a.ring();
  const std::size_t M = monomial_count(ring);
  std::vector<BitRow> rows;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const Vector g = a.row(i);
    for (std::size_t A = 0; A < M; ++A) rows.push_back(linearize(ring, scale(ring, ring.monomial(static_cast<unsigned>(A)), g)));
  }
  return static_cast<unsigned>(f2_rref(rows, a.cols() * M).size());
}

// {v : [v, g] = 0 for every row g} as an F_2 kernel.
Matrix local_u_dual(const Matrix& a) {
  const RingPtr& rp = a.ring();
  const Ring& ring = *rp;
  const std::size_t M = monomial_count(ring), n = a.cols(), N = n * M;
  // Constraint (g, B): sum_{j,A} x_{j,A} * coeff_B(u_A g_j) = 0.
  std::vector<BitRow> rows;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::vector<BitRow> block(M, BitRow((N + 63) / 64, 0));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t A = 0; A < M; ++A) {
        const Elem prod = ring.mul(ring.monomial(static_cast<unsigned>(A)), a.at(i, j));
        for (std::size_t B = 0; B < M; ++B)
          if ((prod >> B) & 1u) flip_bit(block[B], j * M + A);
      }
    for (auto& r : block) rows.push_back(std::move(r));
  }
  auto pivots = f2_rref(rows, N);
  std::vector<char> is_pivot(N, 0);
  for (auto c : pivots) is_pivot[c] = 1;
  std::vector<Vector> basis;
  for (std::size_t free_col = 0; free_col < N; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<char> x(N, 0);
    x[free_col] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r)
      if (get_bit(rows[r], free_col)) x[pivots[r]] = 1;
    Vector v(n, 0);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t A = 0; A < M; ++A)
        if (x[j * M + A]) v[j] ^= Elem{1} << A;
    basis.push_back(std::move(v));
  }
  return Matrix::from_rows(rp, n, basis);
}

unsigned residue_rank(const Matrix& a) {
  const Ring& ring = *a.ring();
  const unsigned q = ring.q();
  std::vector<std::vector<unsigned>> m(a.rows(), std::vector<unsigned>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = ring.residue(a.at(i, j));
  auto inv_mod = [q](unsigned x) {
    unsigned r = 1;
    for (unsigned e = q - 2, b = x; e; e >>= 1, b = b * b % q)
      if (e & 1) r = r * b % q;
    return r;
  };
  unsigned rank = 0;
  for (std::size_t c = 0; c < a.cols() && rank < a.rows(); ++c) {
    std::size_t p = rank;
    while (p < a.rows() && m[p][c] == 0) ++p;
    if (p == a.rows()) continue;
    std::swap(m[p], m[rank]);
    const unsigned iv = inv_mod(m[rank][c]);
    for (auto& x : m[rank]) x = x * iv % q;
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (i != rank && m[i][c]) {
        const unsigned f = m[i][c];
        for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = (m[i][j] + (q - f) * m[rank][j]) % q;
      }
    ++rank;
  }
  return rank;
}

}  // namespace

StandardForm standard_form(const Matrix& g) {
  const Ring& ring = *g.ring();
  if (!ring.is_chain()) throw Error(ErrorKind::NotAChainRing, "standard form needs a chain ring, got " + ring.name());
  const unsigned t = ring.t();
  Matrix work = g;
  std::vector<char> row_done(work.rows(), 0), col_used(work.cols(), 0);
  std::vector<Vector> out_rows;
  StandardForm sf{Matrix(g.ring(), 0, g.cols()), {}, {}, std::vector<unsigned>(t, 0), 0};
  while (true) {
    // Smallest valuation among remaining rows and unused columns; ties go to
    // the leftmost column, then the lowest row.
    unsigned best = t;
    std::size_t br = 0, bc = 0;
    for (std::size_t c = 0; c < work.cols(); ++c) {
      if (col_used[c]) continue;
      for (std::size_t r = 0; r < work.rows(); ++r) {
        if (row_done[r]) continue;
        const unsigned v = ring.valuation(work.at(r, c));
        if (v < best) {
          best = v;
          br = r;
          bc = c;
        }
      }
    }
    if (best == t) break;
    auto [v, unit] = ring.split(work.at(br, bc));
    scale_row(ring, work, br, ring.inv(unit));
    const Elem pivot = work.at(br, bc);
    for (std::size_t r = 0; r < work.rows(); ++r) {
      if (row_done[r] || r == br || work.at(r, bc) == 0) continue;
      row_axpy(ring, work, r, ring.divide(work.at(r, bc), pivot), br);
    }
    row_done[br] = 1;
    col_used[bc] = 1;
    out_rows.push_back(work.row(br));
    sf.pivot_cols.push_back(bc);
    sf.pivot_valuations.push_back(v);
    sf.profile[v] += 1;
    sf.log_size += t - v;
  }
  sf.rows = Matrix::from_rows(g.ring(), g.cols(), out_rows);
  return sf;
}

SmithForm smith_form(const Matrix& a) {
  const Ring& ring = *a.ring();
  if (!ring.is_chain()) throw Error(ErrorKind::NotAChainRing, "Smith form needs a chain ring, got " + ring.name());
  const unsigned t = ring.t();
  Matrix work = a;
  Matrix q = Matrix::identity(a.ring(), a.cols());
  SmithForm sf{{}, q};
  const std::size_t limit = std::min(work.rows(), work.cols());
  for (std::size_t s = 0; s < limit; ++s) {
    unsigned best = t;
    std::size_t br = s, bc = s;
    for (std::size_t c = s; c < work.cols(); ++c)
      for (std::size_t r = s; r < work.rows(); ++r) {
        const unsigned v = ring.valuation(work.at(r, c));
        if (v < best) {
          best = v;
          br = r;
          bc = c;
        }
      }
    if (best == t) break;
    swap_rows(work, s, br);
    swap_cols(work, s, bc);
    swap_cols(q, s, bc);
    auto [v, unit] = ring.split(work.at(s, s));
    scale_row(ring, work, s, ring.inv(unit));
    const Elem pivot = work.at(s, s);
    for (std::size_t r = s + 1; r < work.rows(); ++r)
      if (work.at(r, s) != 0) row_axpy(ring, work, r, ring.divide(work.at(r, s), pivot), s);
    for (std::size_t c = s + 1; c < work.cols(); ++c)
      if (work.at(s, c) != 0) {
        const Elem f = ring.divide(work.at(s, c), pivot);
        col_axpy(ring, work, c, f, s);
        col_axpy(ring, q, c, f, s);
      }
    sf.valuations.push_back(v);
  }
  sf.column_transform = std::move(q);
  return sf;
}

unsigned rank_q(const Matrix& a) {
  const Ring& ring = *a.ring();
  if (ring.is_chain()) return standard_form(a).log_size;
  if (ring.family() == Family::LocalU) return local_u_rank(a);
  throw Error(ErrorKind::NotLocal, "rank_q needs a local ring, got " + ring.name());
}

unsigned col_rank_q(const Matrix& a) { return rank_q(a.transpose()); }

bool is_invertible(const Matrix& a) {
  if (a.rows() != a.cols()) return false;
  const Ring& ring = *a.ring();
  if (!ring.is_local()) {
    for (std::size_t j = 0; j < ring.components().size(); ++j)
      if (!is_invertible(project(a, j))) return false;
    return true;
  }
  return residue_rank(a) == a.rows();
}

namespace detail {

// Generators of {v : G v^T = 0} without enumeration.
Matrix structural_dual(const Matrix& g) {
  const RingPtr& rp = g.ring();
  const Ring& ring = *rp;
  if (ring.family() == Family::LocalU) return local_u_dual(g);
  if (!ring.is_chain()) throw Error(ErrorKind::NotLocal, "structural dual needs a local ring");
  const std::size_t n = g.cols();
  if (g.rows() == 0) return Matrix::identity(rp, n);
  const SmithForm sf = smith_form(g);
  const unsigned t = ring.t();
  // x = Q y with gamma^{v_i} y_i = 0 for the pivot positions, y_i free after.
  std::vector<Vector> rows;
  auto column = [&](std::size_t i) {
    Vector v(n);
    for (std::size_t r = 0; r < n; ++r) v[r] = sf.column_transform.at(r, i);
    return v;
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (i < sf.valuations.size()) {
      const unsigned v = sf.valuations[i];
      if (v == 0) continue;
      rows.push_back(scale(ring, ring.pow(ring.gamma(), t - v), column(i)));
    } else {
      rows.push_back(column(i));
    }
  }
  return Matrix::from_rows(rp, n, rows);
}

}  // namespace detail

}  // namespace dlip
