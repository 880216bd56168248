#include <random>

#include "doctest.h"
#include "dlip/gray.hpp"
#include "dlip/pairs.hpp"

using namespace dlip;

namespace {

RingPtr f5g() { return Ring::parse("Fgamma:5^2"); }

Elem elem(unsigned a, unsigned b) { return static_cast<Elem>(a + 5 * b); }

std::vector<Vector> all_vectors(std::size_t n, Elem size) {
  std::vector<Vector> out{{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Vector> next;
    for (const auto& v : out)
      for (Elem e = 0; e < size; ++e) {
        next.push_back(v);
        next.back().push_back(e);
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace

TEST_CASE("find_alpha") {
  CHECK(find_alpha(5) == 2);
  CHECK(find_alpha(13) == 5);
  CHECK(find_alpha(17) == 4);
  CHECK_THROWS_AS(find_alpha(7), Error);
  CHECK_THROWS_AS(find_alpha(3), Error);
  CHECK_THROWS_AS(GrayContext(Ring::parse("Z:2^2")), Error);
  CHECK_THROWS_AS(GrayContext(Ring::parse("Fgamma:5^3")), Error);
  CHECK_THROWS_AS(GrayContext(Ring::parse("Fgamma:7^2")), Error);
}

TEST_CASE("Gray map on elements") {
  GrayContext g(f5g());
  CHECK(g.alpha() == 2);
  CHECK(g.map(0) == std::pair<Elem, Elem>{0, 0});
  CHECK(g.map(elem(1, 3)) == std::pair<Elem, Elem>{1, 4});
  CHECK(g.weight(0) == 0);
  CHECK(g.weight(elem(0, 1)) == 2);
  CHECK(g.weight(elem(1, 4)) == 1);
  CHECK(g.map(elem(1, 4)) == std::pair<Elem, Elem>{3, 0});
  for (Elem x = 0; x < 25; ++x) {
    auto [u, v] = g.map(x);
    CHECK(g.unmap(u, v) == x);
  }
}

TEST_CASE("weight preservation, linearity and bijectivity on (F5[g])^n") {
  GrayContext g(f5g());
  for (std::size_t n = 1; n <= 2; ++n) {
    const auto vectors = all_vectors(n, 25);
    const VectorCodec image_codec(g.field(), 2 * n);
    std::vector<Key> images;
    for (const auto& x : vectors) {
      const Vector y = gray_map(g, x);
      CHECK(hamming_weight(y) == gray_weight(g, x));
      CHECK(gray_inverse(g, y) == x);
      images.push_back(image_codec.encode(y));
    }
    std::sort(images.begin(), images.end());
    CHECK(std::unique(images.begin(), images.end()) == images.end());
    std::mt19937 rng(5);
    for (int trial = 0; trial < 2000; ++trial) {
      const auto& x = vectors[rng() % vectors.size()];
      const auto& y = vectors[rng() % vectors.size()];
      const Elem c = rng() % 5;
      const Vector lhs = gray_map(g, add(*g.ring(), x, scale(*g.ring(), c, y)));
      const Vector rhs = add(*g.field(), gray_map(g, x), scale(*g.field(), c, gray_map(g, y)));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("Gray images and minimum weights") {
  auto r = f5g();
  GrayContext g(r);
  const Code zero = Code::zero(r, 3);
  CHECK(gray_image_code(g, zero).elements().size() == 1);
  CHECK_THROWS_AS(min_gray_weight(g, zero), Error);
  const Elem gam = r->gamma();
  const Code c(Matrix::from_rows(r, 3, {{gam, gam, gam}}));
  const Code img = gray_image_code(g, c);
  CHECK(img.elements().size() == 5);
  CHECK(min_hamming_weight(img) == 6);
  CHECK(min_gray_weight(g, c) == 6);
  auto f5 = Ring::parse("F:5");
  CHECK(min_hamming_weight(Code(Matrix::from_rows(f5, 6, {{1, 1, 1, 1, 1, 1}}))) == 6);
  CHECK(min_hamming_weight(Code::full(f5, 4)) == 1);
}

TEST_CASE("dimension and intersection transfer on constacyclic codes") {
  auto r = f5g();
  GrayContext g(r);
  for (std::size_t n : {2u, 3u}) {
    auto ctx = ConstacyclicContext::get(r, n, 1);
    const auto towers = all_towers(ctx);
    std::vector<Code> codes, images;
    for (const auto& c : towers) {
      codes.push_back(materialize(c));
      images.push_back(gray_image_code(g, codes.back()));
      CHECK(dim(images.back()) == dim(codes.back()));
    }
    for (std::size_t a = 0; a < codes.size(); ++a)
      for (std::size_t b = 0; b < codes.size(); ++b)
        CHECK(dim(intersect(images[a], images[b])).value() == dlip_ell(codes[a], codes[b]).value());
  }
}

TEST_CASE("eaqec_from_lip") {
  CHECK(eaqec_from_lip(4, 3, 4, 3, 1, 4, 7, 2).format() == "[[7,3,3;3]]_2");
  const auto same = eaqec_from_lip(4, 3, 4, 3, 4, 4, 7, 2);
  CHECK(same.k == 0);
  CHECK(same.c == 0);
  CHECK(eaqec_from_lip(4, 3, 4, std::nullopt, 0, std::nullopt, 7, 2).format() == "[[7,4,-;4]]_2");
  CHECK_THROWS_AS(eaqec_from_lip(2, 3, 4, 3, 3, 4, 7, 2), Error);
  CHECK_THROWS_AS(eaqec_from_lip(4, 3, 2, 3, 3, 4, 7, 2), Error);
  CHECK_THROWS_AS(eaqec_from_lip(4, 3, 4, 3, -1, 4, 7, 2), Error);
  std::mt19937 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + rng() % 30, k1 = rng() % n, k2 = rng() % n, ell = rng() % (std::min(k1, k2) + 1);
    const int d2 = 1 + rng() % n, d1p = 1 + rng() % n;
    const auto p = eaqec_from_lip(k1, 1, k2, d2, ell, d1p, n, 5);
    CHECK(p.n == n);
    CHECK(p.k == k2 - ell);
    CHECK(p.c == k1 - ell);
    CHECK(*p.d == std::min(d1p, d2));
  }
  CHECK(eaqec_from_lip(4, 3, 4, 3, 1, 4, 7, 2).to_json()["text"] == "[[7,3,3;3]]_2");
}

TEST_CASE("EAQEC from a constacyclic pair") {
  auto r = f5g();
  GrayContext g(r);
  auto ctx = ConstacyclicContext::get(r, 3, 1);
  REQUIRE(ctx->factor_count() == 2);  // x - 1, x^2 + x + 1
  const auto full = code_from_masks(ctx, {0, 0});
  const auto same = eaqec_from_constacyclic_pair(full, full);
  CHECK(same.ell == 6);
  CHECK(same.params.k == 0);
  CHECK(same.params.c == 0);
  CHECK(same.tau1 == -3);
  CHECK(same.tau_mismatch.has_value());

  // C1 = <x - 1>, C2 = <gamma (x^2 + x + 1)>: lcm tower has L_0 = x^3 - 1, so
  // the tau formula agrees with k_i - ell.
  const auto c1 = code_from_masks(ctx, {1, 1});
  const auto c2 = code_from_masks(ctx, {3, 2});
  const auto rep = eaqec_from_constacyclic_pair(c1, c2);
  const Code m1 = materialize(c1), m2 = materialize(c2);
  const Code img1 = gray_image_code(g, m1), img2 = gray_image_code(g, m2);
  const unsigned ell = dim(intersect(img1, img2)).value();
  CHECK(rep.ell == ell);
  CHECK(rep.k1 == dim(img1).value());
  CHECK(rep.k2 == dim(img2).value());
  CHECK(!rep.tau_mismatch);
  CHECK(rep.tau1 == static_cast<int>(rep.k1 - ell));
  CHECK(*rep.w2 == min_hamming_weight(img2));
  CHECK(*rep.w1perp == min_hamming_weight(gray_image_code(g, dual_oracle(m1))));
  CHECK(rep.params.n == 6);
  CHECK(rep.to_json()["params"]["text"] == rep.params.format());
}
