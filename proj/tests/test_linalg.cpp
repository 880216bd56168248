#include "doctest.h"

#include "dlip/linalg.hpp"

#include <random>

using namespace dlip;

namespace {

Matrix rows_of(const RingPtr& r, std::size_t n, const std::vector<std::vector<std::string>>& text) {
  std::vector<Vector> rows;
  for (const auto& row : text) {
    Vector v;
    for (const auto& e : row) v.push_back(r->parse_element(e));
    rows.push_back(v);
  }
  return Matrix::from_rows(r, n, rows);
}

Matrix random_matrix(const RingPtr& r, std::size_t rows, std::size_t n, std::mt19937& rng) {
  std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(r->size() - 1));
  Matrix m(r, rows, n);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      // Bias toward non-units so torsion shows up.
      Elem e = pick(rng);
      if (rng() % 2 && !r->maximal_ideal_generators().empty())
        e = r->mul(e, r->maximal_ideal_generators()[rng() % r->maximal_ideal_generators().size()]);
      m.set(i, j, e);
    }
  return m;
}

// Reference: the number of vectors x in R^n with A x^T = 0, by brute force.
std::uint64_t kernel_count(const Matrix& a) {
  const Ring& r = *a.ring();
  VectorCodec codec(a.ring(), a.cols());
  std::uint64_t count = 0;
  for (Key k = 0; k < codec.ambient_size(); ++k) {
    const Vector x = codec.decode(k);
    bool ok = true;
    for (std::size_t i = 0; i < a.rows() && ok; ++i) ok = inner(r, a.row(i), x) == 0;
    count += ok;
  }
  return count;
}

// Shifts of a polynomial (coefficients low to high) in R[x]/(x^n - lambda).
std::vector<Vector> shifts(const Ring& r, Vector p, Elem lambda) {
  std::vector<Vector> out;
  for (std::size_t s = 0; s < p.size(); ++s) {
    out.push_back(p);
    Vector next(p.size());
    next[0] = r.mul(lambda, p.back());
    for (std::size_t j = 1; j < p.size(); ++j) next[j] = p[j - 1];
    p = next;
  }
  return out;
}

Vector poly_mul_mod(const Ring& r, const Vector& a, const Vector& b, std::size_t n, Elem lambda) {
  Vector out(n, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      std::size_t e = i + j;
      Elem c = r.mul(a[i], b[j]);
      while (e >= n) {
        e -= n;
        c = r.mul(c, lambda);
      }
      out[e] = r.add(out[e], c);
    }
  return out;
}

}  // namespace

TEST_CASE("span closure examples") {
  auto z4 = Ring::parse("Z:2^2");
  CHECK(span_closure(rows_of(z4, 1, {{"2"}})) == std::vector<Key>{0, 2});
  CHECK(span_closure(rows_of(z4, 2, {{"1", "2"}})).size() == 4);
  auto u3 = Ring::parse("U:3");
  CHECK(span_closure(rows_of(u3, 1, {{"u2"}, {"u3"}})).size() == 64);
}

TEST_CASE("closure bound is enforced") {
  auto z4 = Ring::parse("Z:2^2");
  try {
    span_closure(Matrix::identity(z4, 8), 1000);
    FAIL("expected ClosureTooLarge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ClosureTooLarge);
  }
}

TEST_CASE("dimension examples") {
  auto z4 = Ring::parse("Z:2^2");
  for (std::size_t n = 1; n <= 4; ++n) CHECK(dim(Code::full(z4, n)).value() == 2 * n);
  auto u3 = Ring::parse("U:3");
  CHECK(dim(Code(rows_of(u3, 1, {{"u2"}, {"u3"}}))).value() == 6);
  CHECK(dim(Code(rows_of(z4, 2, {{"1", "2"}}))).value() == 2);
  CHECK(dim_oracle(Code(rows_of(u3, 1, {{"u2"}, {"u3"}}))).value() == 6);
}

TEST_CASE("rank_q examples") {
  auto z4 = Ring::parse("Z:2^2");
  CHECK(rank_q(Matrix(z4, 2, 3)) == 0);
  CHECK(rank_q(Matrix::identity(z4, 3)) == 6);
  auto u3 = Ring::parse("U:3");
  CHECK(rank_q(rows_of(u3, 2, {{"u1u2u3", "0"}})) == 1);
  CHECK(rank_q_oracle(rows_of(u3, 2, {{"u1u2u3", "0"}})) == 1);
  CHECK_THROWS_AS(rank_q(Matrix::identity(Ring::parse("CRT(Z:2^2,F:3)"), 2)), Error);
}

TEST_CASE("dual examples") {
  auto z4 = Ring::parse("Z:2^2");
  CHECK(dual(Code::full(z4, 3)).size() == 1);
  Code two(rows_of(z4, 1, {{"2"}}));
  CHECK(dual(two).same_elements(two));
  CHECK(dual_oracle(two).same_elements(two));

  for (unsigned k = 1; k <= 3; ++k) {
    auto r = Ring::make(RingSpec::local_u(k));
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
      std::vector<Vector> gens;
      unsigned s = 0;
      for (unsigned i = 0; i < k; ++i)
        if (mask >> i & 1u) {
          gens.push_back({r->monomial(1u << i)});
          ++s;
        }
      Code c(Matrix::from_rows(r, 1, gens));
      Code d = dual(c);
      Code expected(Matrix::from_rows(r, 1, {{r->monomial(mask)}}));
      CHECK(d.same_elements(expected));
      CHECK(d.size() == (std::uint64_t{1} << (1u << (k - s))));
      CHECK(dual_oracle(c).same_elements(expected));
    }
  }
}

TEST_CASE("intersection, sum and hull examples") {
  auto u3 = Ring::parse("U:3");
  Code c1(rows_of(u3, 1, {{"u2"}, {"u3"}}));
  Code c2(rows_of(u3, 1, {{"u1"}, {"u3"}}));
  Code meet = intersect(c1, c2);
  CHECK(dim(meet).value() == 5);
  CHECK(meet.same_elements(Code(rows_of(u3, 1, {{"u3"}, {"u1u2"}}))));
  CHECK(intersect(c1, c1).same_elements(c1));
  CHECK(sum(c1, c1).same_elements(c1));

  auto z4 = Ring::parse("Z:2^2");
  Code two(rows_of(z4, 1, {{"2"}}));
  Code h = hull(two);
  CHECK(h.same_elements(two));
  CHECK(dim(h).value() == 1);

  CHECK_THROWS_AS(intersect(c1, Code::full(z4, 1)), Error);
  CHECK_THROWS_AS(sum(Code::full(z4, 1), Code::full(z4, 2)), Error);
}

TEST_CASE("kernel_in_code examples") {
  auto z4 = Ring::parse("Z:2^2");
  CHECK(kernel_in_code(Matrix::identity(z4, 2), Code::full(z4, 2)).size() == 1);
  Code c(rows_of(z4, 2, {{"1", "2"}}));
  CHECK(kernel_in_code(Matrix(z4, 1, 2), c).same_elements(c));
  Code k = kernel_in_code(rows_of(z4, 2, {{"2", "0"}}), Code::full(z4, 2));
  CHECK(dim(k).value() == 3);
}

TEST_CASE("rank and freeness examples") {
  auto z4 = Ring::parse("Z:2^2");
  Code c(rows_of(z4, 2, {{"1", "2"}}));
  CHECK(rank_R(c) == 1);
  CHECK(is_free(c));
  Code two(rows_of(z4, 1, {{"2"}}));
  CHECK(rank_R(two) == 1);
  CHECK_FALSE(is_free(two));
  auto u3 = Ring::parse("U:3");
  Code c1(rows_of(u3, 1, {{"u2"}, {"u3"}}));
  CHECK(rank_R(c1) == 2);
  CHECK_FALSE(is_free(c1));
  CHECK(basis_rows(c1).rows() == 2);

  Code redundant(rows_of(z4, 2, {{"1", "2"}, {"2", "0"}, {"3", "2"}, {"0", "2"}}));
  Matrix b = basis_rows(redundant);
  CHECK(b.rows() == rank_R(redundant));
  CHECK(Code(b).same_elements(redundant));
}

TEST_CASE("independence examples") {
  for (unsigned k = 2; k <= 3; ++k) {
    auto r = Ring::make(RingSpec::local_u(k));
    std::vector<Vector> vs;
    for (unsigned i = 0; i < k; ++i) vs.push_back({r->monomial(1u << i)});
    for (std::size_t s = 2; s <= k; ++s) {
      std::vector<Vector> sub(vs.begin(), vs.begin() + static_cast<std::ptrdiff_t>(s));
      CHECK(is_modular_independent(*r, sub));
      CHECK_FALSE(is_R_independent(*r, sub));
    }
  }
  auto z4 = Ring::parse("Z:2^2");
  CHECK(is_modular_independent(*z4, {{1, 0}}));
  CHECK(is_R_independent(*z4, {{1, 0}}));
  CHECK_FALSE(is_modular_independent(*z4, {{2}, {2}}));
}

TEST_CASE("modular independence agrees with exhaustive coefficient search") {
  std::mt19937 rng(11);
  auto r = Ring::parse("Z:2^2");
  for (int trial = 0; trial < 60; ++trial) {
    Matrix m = random_matrix(r, 1 + rng() % 3, 2, rng);
    auto vs = m.row_vectors();
    bool expect = true;
    VectorCodec coeffs(r, vs.size());
    for (Key k = 0; k < coeffs.ambient_size(); ++k) {
      const Vector a = coeffs.decode(k);
      Vector total(2, 0);
      for (std::size_t i = 0; i < vs.size(); ++i) total = add(*r, total, scale(*r, a[i], vs[i]));
      bool has_unit = false;
      for (Elem x : a) has_unit |= r->is_unit(x);
      if (is_zero(total) && has_unit) expect = false;
    }
    CHECK(is_modular_independent(*r, vs) == expect);
  }
}

TEST_CASE("standard form examples") {
  auto z4 = Ring::parse("Z:2^2");
  auto sf = standard_form(rows_of(z4, 2, {{"2", "0"}, {"0", "2"}}));
  CHECK(sf.profile == std::vector<unsigned>{0, 2});
  CHECK(sf.rows == rows_of(z4, 2, {{"2", "0"}, {"0", "2"}}));

  // (2,0) = 2*(1,2), so the span has only 4 elements.
  sf = standard_form(rows_of(z4, 2, {{"1", "2"}, {"2", "0"}}));
  CHECK(sf.profile == std::vector<unsigned>{1, 0});
  CHECK(sf.log_size == 2);
  CHECK(span_closure(rows_of(z4, 2, {{"1", "2"}, {"2", "0"}})).size() == 4);
  sf = standard_form(rows_of(z4, 2, {{"1", "2"}, {"0", "2"}}));
  CHECK(sf.profile == std::vector<unsigned>{1, 1});
  CHECK(span_closure(rows_of(z4, 2, {{"1", "2"}, {"0", "2"}})).size() == 8);

  // Shifts of fg and 2f in Z4[x]/(x^7 + 1), f = x^3+x^2+2x+1, g = x^3+2x^2+x+1.
  const Vector f{1, 2, 1, 1}, g{1, 1, 2, 1};
  const Elem lambda = z4->from_int(-1);
  const Vector fg = poly_mul_mod(*z4, f, g, 7, lambda);
  Vector two_f = poly_mul_mod(*z4, {2}, f, 7, lambda);
  auto rows = shifts(*z4, fg, lambda);
  for (auto& v : shifts(*z4, two_f, lambda)) rows.push_back(v);
  Matrix gm = Matrix::from_rows(z4, 7, rows);
  sf = standard_form(gm);
  CHECK(sf.profile == std::vector<unsigned>{1, 3});
  CHECK(span_closure(gm).size() == 32);
  CHECK(sf.log_size == 5);

  CHECK_THROWS_AS(standard_form(Matrix::identity(Ring::parse("U:2"), 2)), Error);
}

TEST_CASE("standard form preserves the row span and has echelon shape") {
  std::mt19937 rng(3);
  for (const auto& r : {Ring::parse("Z:2^3"), Ring::parse("Fgamma:3^2"), Ring::parse("Z:3^2"), Ring::parse("F:5")}) {
    for (int trial = 0; trial < 40; ++trial) {
      Matrix m = random_matrix(r, 1 + rng() % 4, 3, rng);
      auto sf = standard_form(m);
      CHECK(span_closure(sf.rows) == span_closure(m));
      for (std::size_t i = 0; i < sf.rows.rows(); ++i) {
        const unsigned v = sf.pivot_valuations[i];
        CHECK(r->valuation(sf.rows.at(i, sf.pivot_cols[i])) == v);
        for (std::size_t j = 0; j < 3; ++j) CHECK(r->valuation(sf.rows.at(i, j)) >= v);
      }
      CHECK(rank_q(m) == rank_q_oracle(m));
    }
  }
}

TEST_CASE("rank_q fast path agrees with closure on LocalU") {
  std::mt19937 rng(5);
  for (const auto& [r, n] : {std::pair{Ring::parse("U:2"), 2}, {Ring::parse("U:3"), 1}, {Ring::parse("U:1"), 3}}) {
    for (int trial = 0; trial < 40; ++trial) {
      Matrix m = random_matrix(r, 1 + rng() % 3, static_cast<std::size_t>(n), rng);
      CHECK(rank_q(m) == rank_q_oracle(m));
    }
  }
}

TEST_CASE("exhaustive duality over all submodules of small spaces") {
  for (const auto& [spec, n] : {std::pair{"Z:2^2", 1}, {"Z:2^2", 2}, {"Fgamma:5^2", 1}, {"Fgamma:5^2", 2},
                                 {"U:2", 1}, {"U:2", 2}}) {
    auto r = Ring::parse(spec);
    CAPTURE(spec);
    CAPTURE(n);
    auto subs = all_submodules(r, static_cast<std::size_t>(n));
    CHECK(subs.front().size() == 1);
    CHECK(subs.back().size() == VectorCodec(r, static_cast<std::size_t>(n)).ambient_size());
    for (const auto& c : subs) {
      Code d = dual(c);
      CHECK(d.same_elements(dual_oracle(c)));
      CHECK(dim(c).value() + dim(d).value() == n * r->omega());
      CHECK(dual(d).same_elements(c));
      CHECK(dim(c) == dim_oracle(c));
      CHECK(kernel_count(c.generators()) == d.elements().size());
    }
  }
}

TEST_CASE("submodule counts match independent enumeration") {
  // Z4 has 3 ideals; Z4^2 has 15 submodules.
  CHECK(all_submodules(Ring::parse("Z:2^2"), 1).size() == 3);
  CHECK(all_submodules(Ring::parse("Z:2^2"), 2).size() == 15);
  // F_5^2: 0, the 6 lines, and the whole plane.
  CHECK(all_submodules(Ring::parse("F:5"), 2).size() == 8);
}

TEST_CASE("randomized duality, modularity and kernel formula") {
  std::mt19937 rng(7);
  const std::vector<std::pair<const char*, std::size_t>> envs{
      {"Z:2^3", 3}, {"Fgamma:3^2", 3}, {"Z:3^2", 2}, {"U:3", 1}, {"U:2", 2}, {"Z:5^2", 2}, {"Fgamma:3^3", 2}};
  int codes = 0;
  for (const auto& [spec, n] : envs) {
    auto r = Ring::parse(spec);
    for (int trial = 0; trial < 30; ++trial, ++codes) {
      Code c(random_matrix(r, rng() % 4, n, rng));
      Code d(random_matrix(r, rng() % 4, n, rng));
      Code cd = dual(c);
      CHECK(dim(c).value() + dim(cd).value() == n * r->omega());
      CHECK(dual(cd).same_elements(c));
      CHECK(cd.same_elements(dual_oracle(c)));
      CHECK(dim(sum(c, d)).value() + dim(intersect(c, d)).value() == dim(c).value() + dim(d).value());
      Matrix a = random_matrix(r, 1 + rng() % 3, n, rng);
      CHECK(dim(kernel_in_code(a, Code::full(r, n))).value() == n * r->omega() - rank_q(a));
      const unsigned k = rank_R(c);
      CHECK(basis_rows(c).rows() == k);
      CHECK(is_free(c) == (c.size() == [&] {
              std::uint64_t s = 1;
              for (unsigned i = 0; i < k; ++i) s *= r->size();
              return s;
            }()));
    }
  }
  CHECK(codes >= 200);
}

TEST_CASE("intersection via the dual route matches the element route") {
  std::mt19937 rng(13);
  auto r = Ring::parse("Z:2^2");
  for (int trial = 0; trial < 30; ++trial) {
    Code c(random_matrix(r, rng() % 4, 4, rng));
    Code d(random_matrix(r, rng() % 4, 4, rng));
    CHECK(dual(sum(dual(c), dual(d))).same_elements(intersect(c, d)));
  }
}

TEST_CASE("CRT codes") {
  auto z12 = Ring::parse("CRT(Z:2^2,F:3)");
  Matrix g = Matrix::from_rows(z12, 2, {{z12->from_int(2), z12->from_int(4)}, {z12->from_int(3), 0}});
  Code c(g);
  CHECK(c.size() == c.elements().size());
  CHECK(c.size() == project(c, 0).size() * project(c, 1).size());
  CHECK(rank_R(c) == std::max(rank_R(project(c, 0)), rank_R(project(c, 1))));
  Dimension d = dim(c);
  CHECK(d == dim_oracle(c));
  CHECK_FALSE(d.is_local());
  CHECK_THROWS_AS(d.value(), Error);
  CHECK(dual(c).same_elements(dual_oracle(c)));
  Code rebuilt = crt_code(z12, {project(c, 0), project(c, 1)});
  CHECK(rebuilt.same_elements(c));

  // Free components of different rank give a non-free code.
  Code mixed = crt_code(z12, {Code::full(z12->components()[0], 2),
                              Code(Matrix::from_rows(z12->components()[1], 2, {{1, 0}}))});
  CHECK_FALSE(is_free(mixed));
  CHECK(rank_R(mixed) == 2);
  Code even = crt_code(z12, {Code(Matrix::from_rows(z12->components()[0], 2, {{1, 1}})),
                             Code(Matrix::from_rows(z12->components()[1], 2, {{1, 0}}))});
  CHECK(is_free(even));
  CHECK(Code(basis_rows(even)).same_elements(even));
}

TEST_CASE("invertibility") {
  auto z4 = Ring::parse("Z:2^2");
  CHECK(is_invertible(Matrix::identity(z4, 3)));
  CHECK_FALSE(is_invertible(rows_of(z4, 2, {{"1", "2"}, {"2", "0"}})));
  CHECK(is_invertible(rows_of(z4, 2, {{"1", "2"}, {"3", "1"}})));
  auto u2 = Ring::parse("U:2");
  CHECK(is_invertible(rows_of(u2, 2, {{"1+u1", "u2"}, {"u1", "1"}})));
}
