#include <cmath>
#include <sstream>

#include "dlip/linalg.hpp"

namespace dlip {

Vector add(const Ring& ring, const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::LengthMismatch, "vector lengths differ");
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = ring.add(a[i], b[i]);
  return r;
}

Vector scale(const Ring& ring, Elem c, const Vector& v) {
  Vector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = ring.mul(c, v[i]);
  return r;
}

Elem inner(const Ring& ring, const Vector& v, const Vector& w) {
  if (v.size() != w.size()) throw Error(ErrorKind::LengthMismatch, "vector lengths differ");
  Elem s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) s = ring.add(s, ring.mul(v[i], w[i]));
  return s;
}

bool is_zero(const Vector& v) {
  for (Elem e : v)
    if (e != 0) return false;
  return true;
}

VectorCodec::VectorCodec(RingPtr ring, std::size_t n) : ring_(std::move(ring)), n_(n), base_(ring_->size()) {
  fits_ = true;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n_; ++i) {
    if (total > (~std::uint64_t{0} >> 1) / base_) {
      fits_ = false;
      break;
    }
    total *= base_;
  }
}

std::uint64_t VectorCodec::ambient_size() const {
  if (!fits_)
    throw Error(ErrorKind::ClosureTooLarge, ring_->name() + "^" + std::to_string(n_) + " does not fit a 64-bit key");
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n_; ++i) total *= base_;
  return total;
}

Key VectorCodec::encode(const Vector& v) const {
  if (!fits_) ambient_size();
  Key k = 0;
  for (std::size_t i = n_; i-- > 0;) k = k * base_ + v[i];
  return k;
}

Vector VectorCodec::decode(Key key) const {
  Vector v(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    v[i] = static_cast<Elem>(key % base_);
    key /= base_;
  }
  return v;
}

Key VectorCodec::add(Key a, Key b) const {
  Key r = 0, scale = 1;
  for (std::size_t i = 0; i < n_; ++i) {
    r += ring_->add(static_cast<Elem>(a % base_), static_cast<Elem>(b % base_)) * scale;
    a /= base_;
    b /= base_;
    scale *= base_;
  }
  return r;
}

Key VectorCodec::scale(Elem c, Key a) const {
  Key r = 0, s = 1;
  for (std::size_t i = 0; i < n_; ++i) {
    r += ring_->mul(c, static_cast<Elem>(a % base_)) * s;
    a /= base_;
    s *= base_;
  }
  return r;
}

Matrix::Matrix(RingPtr ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix Matrix::from_rows(RingPtr ring, std::size_t cols, const std::vector<Vector>& rows) {
  Matrix m(std::move(ring), rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols)
      throw Error(ErrorKind::LengthMismatch, "row " + std::to_string(i) + " has length " +
                                                 std::to_string(rows[i].size()) + ", expected " +
                                                 std::to_string(cols));
    for (std::size_t j = 0; j < cols; ++j) {
      if (rows[i][j] >= m.ring_->size()) throw Error(ErrorKind::RingMismatch, "entry outside the ring");
      m.set(i, j, rows[i][j]);
    }
  }
  return m;
}

Matrix Matrix::identity(RingPtr ring, std::size_t n) {
  Matrix m(std::move(ring), n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, m.ring_->one());
  return m;
}

Vector Matrix::row(std::size_t i) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

std::vector<Vector> Matrix::row_vectors() const {
  std::vector<Vector> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.set(j, i, at(i, j));
  return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  require_same_ring(*ring_, *rhs.ring_);
  if (cols_ != rhs.rows_) throw Error(ErrorKind::LengthMismatch, "matrix shapes do not compose");
  Matrix out(ring_, rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < rhs.cols_; ++j) {
      Elem s = 0;
      for (std::size_t k = 0; k < cols_; ++k) s = ring_->add(s, ring_->mul(at(i, k), rhs.at(k, j)));
      out.set(i, j, s);
    }
  return out;
}

Matrix Matrix::stack(const Matrix& below) const {
  require_same_ring(*ring_, *below.ring_);
  if (cols_ != below.cols_) throw Error(ErrorKind::LengthMismatch, "cannot stack matrices of different widths");
  Matrix out(ring_, rows_ + below.rows_, cols_);
  std::copy(data_.begin(), data_.end(), out.data_.begin());
  std::copy(below.data_.begin(), below.data_.end(), out.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
  return out;
}

std::string Matrix::format() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << ring_->format(at(i, j));
    os << '\n';
  }
  return os.str();
}

unsigned Dimension::value() const {
  if (!is_local()) throw Error(ErrorKind::NotLocal, "dimension over a CRT product has several components");
  return parts.front().second;
}

double Dimension::derived() const {
  double log_q_total = 0.0, weighted = 0.0;
  for (auto [q, d] : parts) {
    log_q_total += std::log(static_cast<double>(q));
    weighted += d * std::log(static_cast<double>(q));
  }
  return log_q_total == 0.0 ? 0.0 : weighted / log_q_total;
}

std::string Dimension::format() const {
  if (is_local()) return std::to_string(parts.front().second);
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? "," : "") << '(' << parts[i].first << ',' << parts[i].second << ')';
  os << "] ~ " << derived();
  return os.str();
}

}  // namespace dlip
