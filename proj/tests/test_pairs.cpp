#include "doctest.h"

#include "dlip/pairs.hpp"

#include <cmath>
#include <random>

using namespace dlip;

namespace {

Code code_of(const RingPtr& r, std::size_t n, const std::vector<std::vector<std::string>>& text) {
  std::vector<Vector> rows;
  for (const auto& row : text) {
    Vector v;
    for (const auto& e : row) v.push_back(r->parse_element(e));
    rows.push_back(v);
  }
  return Code(Matrix::from_rows(r, n, rows));
}

Matrix h_of(const Code& c) { return dual(c).generators(); }

Matrix random_free_basis(const RingPtr& r, std::size_t k, std::size_t n, std::mt19937& rng) {
  // Rows of a random invertible matrix: a unit-triangular matrix times a
  // random permutation of the columns.
  std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(r->size() - 1));
  Matrix m(r, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.set(i, j, i == j ? r->one() : (j > i ? pick(rng) : 0));
  Matrix l(r, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) l.set(i, j, i == j ? r->one() : (j < i ? pick(rng) : 0));
  Matrix full = l * m;
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < k; ++i) rows.push_back(full.row(i));
  return Matrix::from_rows(r, n, rows);
}

}  // namespace

TEST_CASE("ell examples") {
  auto u3 = Ring::parse("U:3");
  Code c1 = code_of(u3, 1, {{"u2"}, {"u3"}});
  Code c2 = code_of(u3, 1, {{"u1"}, {"u3"}});
  CHECK(dlip_ell(c1, c2).value() == 5);
  CHECK(dlip_ell(c1, c1) == dim(c1));
}

TEST_CASE("rank criterion on the U:3 pair") {
  auto u3 = Ring::parse("U:3");
  Code c1 = code_of(u3, 1, {{"u2"}, {"u3"}});
  Code c2 = code_of(u3, 1, {{"u1"}, {"u3"}});
  Matrix h1 = code_of(u3, 1, {{"u2u3"}}).generators();
  Matrix h2 = code_of(u3, 1, {{"u1u3"}}).generators();
  CHECK((h2 * c1.generators().transpose()) == Matrix::from_rows(u3, 2, {{u3->monomial(7), 0}}));
  auto rep = check_rank_criterion(c1.generators(), h1, c2.generators(), h2, 5);
  CHECK(rep.rank_h2g1 == 1);
  CHECK(rep.rank_h1g2 == 1);
  CHECK(rep.rank_g1 == 6);
  CHECK(rep.holds());
  CHECK(rep.column_form_holds());
  CHECK_FALSE(check_rank_criterion(c1.generators(), h1, c2.generators(), h2, 4).holds());
}

TEST_CASE("rank criterion for the full space") {
  auto z4 = Ring::parse("Z:2^2");
  Matrix g = Matrix::identity(z4, 2);
  Matrix h(z4, 0, 2);
  CHECK(check_rank_criterion(g, h, g, h, 4).holds());
}

TEST_CASE("parity checks are validated") {
  auto z4 = Ring::parse("Z:2^2");
  Matrix g = Matrix::from_rows(z4, 2, {{1, 0}});
  try {
    check_rank_criterion(g, Matrix::from_rows(z4, 2, {{1, 1}}), g, Matrix::from_rows(z4, 2, {{0, 1}}), 2);
    FAIL("expected NotAParityCheck");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotAParityCheck);
  }
  // H G^T = 0 but H is too small.
  CHECK_THROWS_AS(require_parity_check(g, Matrix::from_rows(z4, 2, {{0, 2}})), Error);
}

TEST_CASE("rank criterion on random free Z4 pairs") {
  std::mt19937 rng(17);
  auto z4 = Ring::parse("Z:2^2");
  for (int trial = 0; trial < 50; ++trial) {
    Code c(random_free_basis(z4, 1 + rng() % 3, 4, rng));
    Code d(random_free_basis(z4, 1 + rng() % 3, 4, rng));
    const unsigned ell = dlip_ell(c, d).value();
    CHECK(check_rank_criterion(c.generators(), h_of(c), d.generators(), h_of(d), ell).holds());
  }
}

TEST_CASE("stacked rank identity examples") {
  auto u3 = Ring::parse("U:3");
  auto s = stacked_rank_identity(code_of(u3, 1, {{"u2"}, {"u3"}}).generators(),
                                 code_of(u3, 1, {{"u1"}, {"u3"}}).generators());
  CHECK(s.lhs == 7);
  CHECK(s.holds());
  auto z4 = Ring::parse("Z:2^2");
  s = stacked_rank_identity(Matrix::from_rows(z4, 2, {{1, 0}}), Matrix::from_rows(z4, 2, {{0, 1}}));
  CHECK(s.lhs == 4);
  CHECK(s.rhs == 4);
  Matrix g = Matrix::from_rows(z4, 2, {{1, 2}});
  s = stacked_rank_identity(g, g);
  CHECK(s.lhs == rank_q(g));
  CHECK(s.holds());
}

TEST_CASE("dual pair dimension examples") {
  auto u3 = Ring::parse("U:3");
  Code c1 = code_of(u3, 1, {{"u2"}, {"u3"}});
  Code c2 = code_of(u3, 1, {{"u1"}, {"u3"}});
  CHECK(dual_pair_dim(c1, c2).value() == 1);
  CHECK(dual_pair_dim_oracle(c1, c2).value() == 1);
  auto z4 = Ring::parse("Z:2^2");
  CHECK(dual_pair_dim(Code::full(z4, 3), Code::full(z4, 3)).value() == 0);
  Code c = code_of(z4, 2, {{"1", "2"}});
  CHECK(dual_pair_dim(c, c) == dim(dual(c)));
}

TEST_CASE("hull dimension from the Gram matrix") {
  auto z4 = Ring::parse("Z:2^2");
  Code two = code_of(z4, 1, {{"2"}});
  auto h = hull_dim_via_gram(two.generators(), h_of(two));
  CHECK(h.from_g == 1);
  CHECK(h.consistent());

  auto f5g = Ring::parse("Fgamma:5^2");
  Code lcd = code_of(f5g, 2, {{"1", "0"}});
  h = hull_dim_via_gram(lcd.generators(), h_of(lcd));
  CHECK(h.from_g == 0);
  CHECK(h.consistent());

  Code full = Code::full(z4, 1);
  CHECK(rank_q(full.generators()) == 2);
  CHECK(rank_q(full.generators() * full.generators().transpose()) == 2);
  CHECK(hull_dim_via_gram(full.generators(), Matrix(z4, 0, 1)).from_g == 0);
}

TEST_CASE("LCD and LCP examples") {
  auto z4 = Ring::parse("Z:2^2");
  CHECK(is_lcp(code_of(z4, 2, {{"1", "0"}}), code_of(z4, 2, {{"0", "1"}})));
  CHECK_FALSE(is_lcd(code_of(z4, 1, {{"2"}})));
  CHECK(is_lcp(Code::full(z4, 2), Code::zero(z4, 2)));
  CHECK(is_lcd(Code::full(z4, 2)));
}

TEST_CASE("LCP equivalence examples") {
  auto z4 = Ring::parse("Z:2^2");
  auto report = [](const Code& a, const Code& b) {
    return lcp_equivalence_report(a.generators(), h_of(a), b.generators(), h_of(b));
  };
  auto r = report(code_of(z4, 2, {{"1", "0"}}), code_of(z4, 2, {{"0", "1"}}));
  CHECK(r.preconditions_met);
  CHECK(r.lcp);
  CHECK(r.generators_invertible);
  CHECK(r.parity_checks_invertible);
  CHECK(r.rank_condition);

  // The sum is <(1,1),(0,2)>, not all of Z4^2; all four statements are false.
  r = report(code_of(z4, 2, {{"1", "1"}}), code_of(z4, 2, {{"1", "3"}}));
  CHECK_FALSE(r.preconditions_met);
  CHECK(r.agree());
  CHECK_FALSE(r.lcp);
  CHECK_FALSE(r.generators_invertible);

  auto f5g = Ring::parse("Fgamma:5^2");
  r = report(code_of(f5g, 2, {{"1", "2"}}), code_of(f5g, 2, {{"2", "1"}}));
  CHECK(r.preconditions_met);
  CHECK(r.agree());
  CHECK(r.lcp);

  try {
    report(code_of(z4, 1, {{"2"}}), Code::full(z4, 1));
    FAIL("expected PreconditionFailed");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PreconditionFailed);
  }
}

TEST_CASE("LCP equivalence on random free covering pairs") {
  std::mt19937 rng(23);
  for (const auto& r : {Ring::parse("Z:2^2"), Ring::parse("Fgamma:3^2"), Ring::parse("U:2")}) {
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t n = 3;
      const std::size_t k = 1 + rng() % 2;
      Matrix basis = random_free_basis(r, n, n, rng);
      // Either split an invertible basis (an LCP) or perturb the second block.
      std::vector<Vector> top, bottom;
      for (std::size_t i = 0; i < n; ++i) (i < k ? top : bottom).push_back(basis.row(i));
      if (trial % 2) bottom.front() = add(*r, bottom.front(), top.front());
      if (trial % 3 == 0) bottom.front() = top.front();
      Code c(Matrix::from_rows(r, n, top)), d(Matrix::from_rows(r, n, bottom));
      if (!is_free(c) || !is_free(d)) continue;
      auto rep = lcp_equivalence_report(c.generators(), h_of(c), d.generators(), h_of(d));
      if (rep.preconditions_met) CHECK(rep.agree());
    }
  }
}

TEST_CASE("non-free covering pairs intersect") {
  auto z4 = Ring::parse("Z:2^2");
  auto v = nonfree_cover_check(code_of(z4, 1, {{"2"}}), Code::full(z4, 1));
  CHECK_FALSE(v.both_nonfree);
  CHECK(v.consistent);
  v = nonfree_cover_check(code_of(z4, 2, {{"1", "0"}, {"0", "2"}}), code_of(z4, 2, {{"0", "1"}, {"2", "0"}}));
  CHECK(v.both_nonfree);
  CHECK(v.ell == 2);
  CHECK(v.consistent);
  CHECK_THROWS_AS(nonfree_cover_check(code_of(z4, 2, {{"2", "0"}}), code_of(z4, 2, {{"0", "2"}})), Error);
}

TEST_CASE("covering pair sweep finds no counterexample") {
  for (const auto& [spec, n] : {std::pair{"Z:2^2", 2}, {"Fgamma:5^2", 1}, {"Fgamma:5^2", 2}}) {
    auto r = Ring::parse(spec);
    auto subs = all_submodules(r, static_cast<std::size_t>(n));
    std::vector<bool> free(subs.size());
    std::vector<unsigned> dims(subs.size());
    for (std::size_t i = 0; i < subs.size(); ++i) {
      free[i] = is_free(subs[i]);
      dims[i] = dim(subs[i]).value();
    }
    int covering = 0, bad = 0;
    const unsigned full = static_cast<unsigned>(n) * r->omega();
    for (std::size_t i = 0; i < subs.size(); ++i)
      for (std::size_t j = i; j < subs.size(); ++j) {
        // dim(C+D) = dim C + dim D - ell, so covering needs dim C + dim D >= n omega.
        if (dims[i] + dims[j] < full) continue;
        const unsigned ell = dlip_ell(subs[i], subs[j]).value();
        if (dims[i] + dims[j] - ell != full) continue;
        ++covering;
        if (ell == 0 && !(free[i] && free[j])) ++bad;
        if (!free[i] && !free[j] && ell == 0) ++bad;
      }
    CAPTURE(spec);
    CHECK(covering > 0);
    CHECK(bad == 0);
  }
}

TEST_CASE("CRT pair ell") {
  auto z12 = Ring::parse("CRT(Z:2^2,F:3)");
  auto z4 = z12->components()[0];
  auto f3 = z12->components()[1];
  // ell = (1, 1)
  Dimension d = crt_pair_ell(z12, {{Code(Matrix::from_rows(z4, 2, {{1, 0}})), Code(Matrix::from_rows(z4, 2, {{1, 0}, {0, 2}}))},
                                   {Code(Matrix::from_rows(f3, 2, {{1, 1}})), Code::full(f3, 2)}});
  // First component: <(1,0)> cap <(1,0),(0,2)> = <(1,0)>, dim 2.
  CHECK(d.parts == std::vector<std::pair<unsigned, unsigned>>{{2, 2}, {3, 1}});
  CHECK(d.derived() == doctest::Approx((2 * std::log(2.0) + std::log(3.0)) / std::log(6.0)));

  d = crt_pair_ell(z12, {{Code(Matrix::from_rows(z4, 2, {{2, 0}})), Code(Matrix::from_rows(z4, 2, {{1, 0}}))},
                         {Code(Matrix::from_rows(f3, 2, {{1, 1}})), Code::full(f3, 2)}});
  CHECK(d.parts == std::vector<std::pair<unsigned, unsigned>>{{2, 1}, {3, 1}});
  CHECK(d.derived() == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(crt_pair_ell(z12, {{Code::full(z4, 2), Code::full(z4, 3)}, {Code::full(f3, 2), Code::full(f3, 2)}}),
                  Error);
}

TEST_CASE("pair identities hold exhaustively on small spaces") {
  for (const auto& [spec, n] : {std::pair{"Z:2^2", 1}, {"Z:2^2", 2}, {"U:2", 1}}) {
    auto r = Ring::parse(spec);
    auto subs = all_submodules(r, static_cast<std::size_t>(n));
    CAPTURE(spec);
    for (const auto& c : subs)
      for (const auto& d : subs) {
        const unsigned ell = dlip_ell(c, d).value();
        CHECK(ell <= std::min(dim(c).value(), dim(d).value()));
        CHECK(ell == dlip_ell(d, c).value());
        CHECK(stacked_rank_identity(c.generators(), d.generators()).holds());
        CHECK(dual_pair_dim(c, d) == dual_pair_dim_oracle(c, d));
        const auto rep = check_rank_criterion(c.generators(), h_of(c), d.generators(), h_of(d), ell);
        CHECK(rep.column_form_holds());
        if (r->is_chain() || (is_free(c) && is_free(d))) CHECK(rep.holds());
      }
    for (const auto& c : subs) {
      CHECK(dlip_ell(c, c) == dim(c));
      CHECK(is_lcd(c) == (dlip_ell(c, dual(c)).value() == 0));
      CHECK(dim(hull(c)) == dlip_ell(c, dual(c)));
      CHECK(hull_dim_via_gram(c.generators(), h_of(c)).consistent());
    }
  }
}

TEST_CASE("pair identities on random codes") {
  std::mt19937 rng(29);
  for (const auto& [spec, n] : {std::pair{"Z:2^3", 3}, {"Fgamma:3^2", 3}, {"U:3", 1}, {"U:2", 2}}) {
    auto r = Ring::parse(spec);
    std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(r->size() - 1));
    for (int trial = 0; trial < 30; ++trial) {
      auto random_code = [&] {
        Matrix m(r, rng() % 3, static_cast<std::size_t>(n));
        for (std::size_t i = 0; i < m.rows(); ++i)
          for (std::size_t j = 0; j < m.cols(); ++j) m.set(i, j, pick(rng));
        return Code(m);
      };
      Code c = random_code(), d = random_code();
      const unsigned ell = dlip_ell(c, d).value();
      CHECK(stacked_rank_identity(c.generators(), d.generators()).holds());
      CHECK(dual_pair_dim(c, d) == dual_pair_dim_oracle(c, d));
      const auto rep = check_rank_criterion(c.generators(), h_of(c), d.generators(), h_of(d), ell);
      CHECK(rep.column_form_holds());
      if (r->is_chain() || (is_free(c) && is_free(d))) CHECK(rep.holds());
      CHECK(hull_dim_via_gram(c.generators(), h_of(c)).consistent());
    }
  }
}

TEST_CASE("pair analysis serializes") {
  auto u3 = Ring::parse("U:3");
  auto a = analyze_pair(code_of(u3, 1, {{"u2"}, {"u3"}}), code_of(u3, 1, {{"u1"}, {"u3"}}));
  auto j = a.to_json();
  CHECK(j["ell"] == 5);
  CHECK(j["ranks"]["H2G1T"] == 1);
  CHECK(j["rank_criterion"]["holds"] == true);
  CHECK(a.to_text().find("ell: 5") != std::string::npos);

  auto z12 = Ring::parse("CRT(Z:2^2,F:3)");
  auto b = analyze_pair(Code::full(z12, 2), Code::zero(z12, 2));
  CHECK(b.is_lcp);
  CHECK_FALSE(b.criterion.has_value());
  CHECK(b.to_json()["ell"]["components"].size() == 2);
}
