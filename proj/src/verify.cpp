#include "dlip/verify.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdio>
#include <map>
#include <random>

#include "dlip/constacyclic.hpp"
#include "dlip/gray.hpp"
#include "dlip/pairs.hpp"

namespace dlip {

namespace {

struct Tally {
  std::uint64_t checks = 0, failures = 0;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
      ++failures;
      if (notes.size() < 3) notes.push_back(what);
    }
  }
};

std::vector<Key> meet_of(const std::vector<Key>& a, const std::vector<Key>& b) {
  std::vector<Key> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// log_q(size), or -1 when size is not a power of q.
int log_q(std::uint64_t size, unsigned q) {
  int d = 0;
  while (size > 1 && size % q == 0) {
    size /= q;
    ++d;
  }
  return size == 1 ? d : -1;
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

Code code_of(const RingPtr& r, std::size_t n, const std::vector<std::vector<std::string>>& rows) {
  std::vector<Vector> vs;
  for (const auto& row : rows) {
    Vector v;
    for (const auto& e : row) v.push_back(r->parse_element(e));
    vs.push_back(v);
  }
  return Code(Matrix::from_rows(r, n, vs));
}

// Random spanning set biased toward the maximal ideal, so that non-free codes
// show up often.
Code random_code(const RingPtr& r, std::size_t n, std::mt19937_64& rng, std::uint64_t bound) {
  const auto m = r->maximal_ideal_generators();
  Matrix g(r, rng() % 4, n);
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Elem e = static_cast<Elem>(rng() % r->size());
      if (!m.empty() && rng() % 2) e = r->mul(e, m[rng() % m.size()]);
      g.set(i, j, e);
    }
  if (g.rows() == 0) return Code::zero(r, n, bound);
  return Code(g, bound);
}

struct Envelope {
  std::vector<std::pair<const char*, std::size_t>> exhaustive{{"Z:2^2", 1}, {"Z:2^2", 2}, {"Fgamma:5^2", 1}, {"U:2", 1}};
  std::vector<std::pair<const char*, std::size_t>> random{{"Z:2^3", 2}, {"Fgamma:5^2", 2}, {"U:3", 1}};
  int random_count = 200;
};

void criterion_1(Tally& t, const VerifyOptions&) {
  auto u3 = Ring::parse("U:3");
  const Code c1 = code_of(u3, 1, {{"u2"}, {"u3"}}), c2 = code_of(u3, 1, {{"u1"}, {"u3"}});
  const Matrix h1 = code_of(u3, 1, {{"u2u3"}}).generators(), h2 = code_of(u3, 1, {{"u1u3"}}).generators();
  t.check(dim(c1).value() == 6, "dim C1 != 6");
  t.check(dim(c2).value() == 6, "dim C2 != 6");
  const unsigned ell = dlip_ell(c1, c2).value();
  t.check(ell == 5, "ell != 5");
  const auto rep = check_rank_criterion(c1.generators(), h1, c2.generators(), h2, 5);
  t.check(rep.rank_h2g1 == 1, "rank_q(H2 G1^T) != 1");
  t.check(rep.rank_h1g2 == 1, "rank_q(H1 G2^T) != 1");
  t.check(rep.first && rep.second, "rank identities do not hold");
  const auto oracle = meet_of(c1.elements(), c2.elements());
  t.check(code_of(u3, 1, {{"u3"}, {"u1u2"}}).elements() == oracle, "(u3, u1u2) does not span the intersection");
  t.check(log_q(oracle.size(), 2) == 5, "oracle intersection size != 2^5");
}

void criterion_2(Tally& t, const VerifyOptions& o) {
  auto z4 = Ring::parse("Z:2^2");
  const auto factors = factor_unital(z4, 7, z4->from_int(-1));
  const std::vector<Poly> printed{parse_poly(z4, "x+1"), parse_poly(z4, "x^3-2x^2+x+1"), parse_poly(z4, "x^3+x^2+2x+1")};
  t.check(factors == printed, "factors of x^7+1 differ from h, g, f");
  auto ctx = ConstacyclicContext::get(z4, 7, z4->from_int(-1));
  const auto c1 = code_from_tower(ctx, {printed[2] * printed[1], printed[2]});
  const auto c2 = code_from_tower(ctx, {printed[0] * printed[2], printed[0]});
  const auto rep = constacyclic_intersection(c1, c2);
  const auto expected = code_from_generators(ctx, {{1, printed[0] * printed[2]}});
  t.check(rep.meet == expected, "intersection tower is not <2hf>");
  t.check(format_generators(rep.meet) == "<2*(x+1)*(x^3+x^2+2x+1)>", "generator text differs");
  t.check(rep.dim_literal == 3, "dimension formula != 3");
  const auto oracle = meet_of(materialize(c1, o.bound).elements(), materialize(c2, o.bound).elements());
  t.check(oracle == materialize(rep.meet, o.bound).elements(), "<2hf> differs from the oracle intersection");
  t.check(log_q(oracle.size(), 2) == 3, "oracle ell != 3");
}

void criterion_3(Tally& t, const VerifyOptions& o) {
  for (unsigned k = 1; k <= 3; ++k) {
    auto r = Ring::make(RingSpec::local_u(k));
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
      const unsigned s = static_cast<unsigned>(std::popcount(mask));
      // <u_i1, ..., u_is>, one generator row per variable; its dual is <u_i1 ... u_is>.
      std::vector<Vector> rows;
      for (unsigned i = 0; i < k; ++i)
        if (mask >> i & 1) rows.push_back({r->monomial(1u << i)});
      const Code c(Matrix::from_rows(r, 1, rows), o.bound);
      const Code d = dual_oracle(c);
      const std::string what = "U:" + std::to_string(k) + " variables " + std::to_string(mask);
      t.check(c.elements().size() == ipow(2, (1u << k) - (1u << (k - s))), what + " size");
      t.check(d.elements().size() == ipow(2, 1u << (k - s)), what + " dual size");
      t.check(d.same_elements(Code(Matrix::from_rows(r, 1, {{r->monomial(mask)}}), o.bound)),
              what + " dual is not the product monomial ideal");
    }
  }
}

void duality_checks(Tally& t, const Code& c, const std::string& where) {
  const Code d = dual(c);
  const unsigned n_omega = static_cast<unsigned>(c.length()) * c.ring()->omega();
  t.check(d.same_elements(dual_oracle(c)), where + ": dual differs from oracle");
  t.check(dim(c).value() + dim(d).value() == n_omega, where + ": dim C + dim C^perp != n omega");
  t.check(dual(d).same_elements(c), where + ": double dual differs");
}

void criterion_4(Tally& t, const VerifyOptions& o) {
  const Envelope env;
  for (const auto& [spec, n] : env.exhaustive) {
    auto r = Ring::parse(spec);
    for (const auto& c : all_submodules(r, n, o.bound)) duality_checks(t, c, spec);
  }
  std::mt19937_64 rng(o.seed);
  for (const auto& [spec, n] : env.random) {
    auto r = Ring::parse(spec);
    for (int i = 0; i < env.random_count; ++i) duality_checks(t, random_code(r, n, rng, o.bound), spec);
  }
}

struct PairLog {
  std::uint64_t nonfree_row_misses = 0;
};

void pair_checks(Tally& t, PairLog& log, const Code& c, const Code& d, const std::string& where) {
  const unsigned q = c.ring()->q();
  const int ell = log_q(meet_of(c.elements(), d.elements()).size(), q);
  t.check(ell >= 0 && dlip_ell(c, d).value() == static_cast<unsigned>(ell), where + ": ell differs from oracle");
  t.check(dim(sum(c, d)).value() + ell == dim(c).value() + dim(d).value(), where + ": modularity");
  t.check(dual_pair_dim(c, d) == dual_pair_dim_oracle(c, d), where + ": dual pair dimension");
  t.check(stacked_rank_identity(c.generators(), d.generators()).holds(), where + ": stacked rank identity");
  const auto rep = check_rank_criterion(c.generators(), dual(c).generators(), d.generators(), dual(d).generators(),
                                        static_cast<unsigned>(ell));
  t.check(rep.column_form_holds(), where + ": column-span rank identity");
  if (is_free(c) && is_free(d))
    t.check(rep.holds(), where + ": rank criterion on a free pair");
  else if (!rep.holds())
    ++log.nonfree_row_misses;
}

void code_checks(Tally& t, const Code& c, const std::string& where) {
  t.check(hull_dim_via_gram(c.generators(), dual(c).generators()).consistent(), where + ": hull via Gram");
}

void criterion_5(Tally& t, const VerifyOptions& o, std::string& extra) {
  const Envelope env;
  PairLog log;
  for (const auto& [spec, n] : env.exhaustive) {
    auto subs = all_submodules(Ring::parse(spec), n, o.bound);
    for (std::size_t i = 0; i < subs.size(); ++i) {
      code_checks(t, subs[i], spec);
      for (std::size_t j = i; j < subs.size(); ++j) pair_checks(t, log, subs[i], subs[j], spec);
    }
  }
  std::mt19937_64 rng(o.seed + 1);
  for (const auto& [spec, n] : env.random) {
    auto r = Ring::parse(spec);
    for (int i = 0; i < env.random_count; ++i) {
      const Code c = random_code(r, n, rng, o.bound), d = random_code(r, n, rng, o.bound);
      code_checks(t, c, spec);
      pair_checks(t, log, c, d, spec);
    }
  }
  extra = "non-free pairs missing the row-form criterion (logged): " + std::to_string(log.nonfree_row_misses);
}

std::vector<ContextPtr> sweep_contexts() {
  auto z4 = Ring::parse("Z:2^2");
  auto f5g = Ring::parse("Fgamma:5^2");
  std::vector<ContextPtr> out{ConstacyclicContext::get(z4, 7, z4->from_int(-1))};
  for (int lambda = 1; lambda <= 4; ++lambda) out.push_back(ConstacyclicContext::get(f5g, 4, f5g->from_int(lambda)));
  return out;
}

void criterion_6(Tally& t, const VerifyOptions& o, std::string& extra) {
  std::uint64_t pairs = 0, lcm_bad = 0, formula_bad = 0, exact_bad = 0;
  for (const auto& ctx : sweep_contexts()) {
    const auto towers = all_towers(ctx);
    std::map<std::vector<FactorMask>, std::size_t> index;
    std::vector<std::vector<Key>> elements;
    for (std::size_t i = 0; i < towers.size(); ++i) {
      index[towers[i].tower] = i;
      elements.push_back(materialize(towers[i], o.bound).elements());
    }
    const std::string where = ctx->ring()->name() + " n=" + std::to_string(ctx->n()) + " lambda=" +
                              ctx->ring()->format(ctx->lambda());
    for (std::size_t a = 0; a < towers.size(); ++a)
      for (std::size_t b = a; b < towers.size(); ++b) {
        ++pairs;
        const auto rep = constacyclic_intersection(towers[a], towers[b]);
        const auto oracle = meet_of(elements[a], elements[b]);
        const bool lcm_ok = elements[index.at(rep.meet.tower)] == oracle;
        const bool formula_ok = ipow(ctx->q(), rep.dim_literal) == oracle.size();
        lcm_bad += !lcm_ok;
        formula_bad += !formula_ok;
        exact_bad += ipow(ctx->q(), rep.dim_exact) != oracle.size();
        t.check(lcm_ok, where + ": lcm tower " + format_tower(rep.meet) + " differs from oracle");
        t.check(formula_ok, where + ": formula dim " + std::to_string(rep.dim_literal) + " vs oracle " +
                                std::to_string(log_q(oracle.size(), ctx->q())) + " for " + format_tower(towers[a]) +
                                " and " + format_tower(towers[b]));
      }
  }
  extra = "pairs=" + std::to_string(pairs) + " lcm_mismatch=" + std::to_string(lcm_bad) +
          " formula_mismatch=" + std::to_string(formula_bad) +
          " sum_j(n-deg lcm_j)_mismatch=" + std::to_string(exact_bad);
}

void criterion_7(Tally& t, const VerifyOptions& o, std::string& extra) {
  auto z4 = Ring::parse("Z:2^2");
  const auto subs = all_submodules(z4, 2, o.bound);
  const unsigned full = 2 * z4->omega();
  std::uint64_t covering = 0, both_nonfree = 0, zero_ell = 0;
  for (std::size_t i = 0; i < subs.size(); ++i)
    for (std::size_t j = i; j < subs.size(); ++j) {
      if (dim(sum(subs[i], subs[j])).value() != full) continue;
      ++covering;
      const int ell = log_q(meet_of(subs[i].elements(), subs[j].elements()).size(), 2);
      const bool fi = is_free(subs[i]), fj = is_free(subs[j]);
      if (!fi && !fj) {
        ++both_nonfree;
        t.check(ell > 0, "both non-free covering pair with ell = 0");
      }
      if (ell == 0) {
        ++zero_ell;
        t.check(fi && fj, "ell = 0 covering pair with a non-free code");
      }
      const auto verdict = nonfree_cover_check(subs[i], subs[j]);
      t.check(verdict.consistent, "nonfree_cover_check reports inconsistency");
    }
  extra = "covering pairs=" + std::to_string(covering) + " both non-free=" + std::to_string(both_nonfree) +
          " ell=0=" + std::to_string(zero_ell);
}

void criterion_8(Tally& t, const VerifyOptions& o) {
  auto r = Ring::parse("Fgamma:5^2");
  const GrayContext g(r);
  const VectorCodec image_codec(g.field(), 4);
  std::vector<Vector> all;
  for (Elem a = 0; a < 25; ++a)
    for (Elem b = 0; b < 25; ++b) all.push_back({a, b});
  std::vector<Key> images;
  for (const auto& x : all) {
    const Vector y = gray_map(g, x);
    t.check(hamming_weight(y) == gray_weight(g, x), "weight not preserved");
    t.check(gray_inverse(g, y) == x, "inverse fails");
    images.push_back(image_codec.encode(y));
  }
  std::sort(images.begin(), images.end());
  t.check(std::adjacent_find(images.begin(), images.end()) == images.end() && images.size() == 625, "not bijective");
  std::vector<Vector> phi;
  for (const auto& x : all) phi.push_back(gray_map(g, x));
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < all.size(); ++j)
      for (Elem c = 0; c < 5; ++c) {
        const Vector lhs = gray_map(g, add(*r, all[i], scale(*r, c, all[j])));
        const Vector rhs = add(*g.field(), phi[i], scale(*g.field(), c, phi[j]));
        if (lhs != rhs) t.check(false, "not F5-linear");
      }
  ++t.checks;

  for (const auto& ctx : sweep_contexts()) {
    if (ctx->ring()->family() != Family::ChainFqGamma) continue;
    const auto towers = all_towers(ctx);
    std::vector<std::vector<Key>> code_elems, image_elems;
    for (const auto& c : towers) {
      const Code code = materialize(c, o.bound);
      try {
        const Code image = gray_image_code(g, code);
        t.check(log_q(image.elements().size(), 5) == log_q(code.elements().size(), 5), "dim phi(C) != dim C");
        image_elems.push_back(image.elements());
      } catch (const Error& e) {
        t.check(false, e.what());
        image_elems.emplace_back();
      }
      code_elems.push_back(code.elements());
    }
    for (std::size_t a = 0; a < towers.size(); ++a)
      for (std::size_t b = a; b < towers.size(); ++b)
        t.check(meet_of(image_elems[a], image_elems[b]).size() == meet_of(code_elems[a], code_elems[b]).size(),
                "ell differs after the Gray map");
  }
}

void criterion_9(Tally& t, const VerifyOptions& o, std::string& extra) {
  std::mt19937_64 rng(o.seed + 2);
  for (int i = 0; i < 100; ++i) {
    const int n = 2 + static_cast<int>(rng() % 40);
    const int k1 = static_cast<int>(rng() % (n + 1)), k2 = static_cast<int>(rng() % (n + 1));
    const int ell = static_cast<int>(rng() % (std::min(k1, k2) + 1));
    const int d1 = 1 + static_cast<int>(rng() % n), d2 = 1 + static_cast<int>(rng() % n),
              d1p = 1 + static_cast<int>(rng() % n);
    const auto p = eaqec_from_lip(k1, d1, k2, d2, ell, d1p, n, 5);
    t.check(p.n == n && p.k == k2 - ell && p.c == k1 - ell && p.d == std::min(d1p, d2) && p.q == 5,
            "eaqec_from_lip substitution differs");
  }

  auto f5g = Ring::parse("Fgamma:5^2");
  const GrayContext g(f5g);
  std::uint64_t pairs = 0, tau_bad = 0;
  for (std::size_t n : {3u, 4u})
    for (int lambda = 1; lambda <= 4; ++lambda) {
      const auto ctx = ConstacyclicContext::get(f5g, n, f5g->from_int(lambda));
      const auto towers = all_towers(ctx);
      std::vector<std::vector<Key>> elems;
      std::vector<std::optional<unsigned>> w, w_dual;
      for (const auto& c : towers) {
        const Code code = materialize(c, o.bound);
        const Code dual_code = materialize(constacyclic_dual(c), o.bound);
        elems.push_back(code.elements());
        w.push_back(code.elements().size() > 1 ? std::optional(min_gray_weight(g, code)) : std::nullopt);
        w_dual.push_back(dual_code.elements().size() > 1 ? std::optional(min_gray_weight(g, dual_code)) : std::nullopt);
      }
      for (std::size_t a = 0; a < towers.size(); ++a)
        for (std::size_t b = 0; b < towers.size(); ++b) {
          ++pairs;
          const auto rep = eaqec_from_constacyclic_pair(towers[a], towers[b], w[b], w_dual[a]);
          const int ell = log_q(meet_of(elems[a], elems[b]).size(), 5);
          const int k1 = log_q(elems[a].size(), 5), k2 = log_q(elems[b].size(), 5);
          t.check(static_cast<int>(rep.ell) == ell && static_cast<int>(rep.k1) == k1 && static_cast<int>(rep.k2) == k2,
                  "k_i or ell differs from enumeration");
          const bool tau_ok = rep.tau1 == k1 - ell && rep.tau2 == k2 - ell;
          tau_bad += !tau_ok;
          t.check(tau_ok, "n=" + std::to_string(n) + " lambda=" + std::to_string(lambda) + " " +
                              format_tower(towers[a]) + " / " + format_tower(towers[b]) + ": " +
                              rep.tau_mismatch.value_or(""));
          t.check(rep.params.k >= 0 && rep.params.c >= 0 && (!rep.params.d || *rep.params.d >= 1),
                  "EAQEC parameters out of range");
        }
    }
  extra = "constacyclic pairs=" + std::to_string(pairs) + " tau_mismatch=" + std::to_string(tau_bad);
}

void criterion_10(Tally& t, const VerifyOptions& o, std::string& extra) {
  auto f5g = Ring::parse("Fgamma:5^2");
  const auto ctx1 = ConstacyclicContext::get(f5g, 4, f5g->from_int(1));
  const auto ctx2 = ConstacyclicContext::get(f5g, 4, f5g->from_int(2));
  std::uint64_t pairs = 0, closed = 0, covering = 0;
  for (FactorMask m1 = 0; m1 <= ctx1->all(); ++m1)
    for (FactorMask m2 = 0; m2 <= ctx2->all(); ++m2) {
      ++pairs;
      const auto c1 = code_from_masks(ctx1, std::vector<FactorMask>(ctx1->t(), m1));
      const auto c2 = code_from_masks(ctx2, std::vector<FactorMask>(ctx2->t(), m2));
      const auto rep = mixed_lambda_intersection(c1, c2, o.bound);
      const std::string where = ctx1->format_mask(m1) + " / " + ctx2->format_mask(m2);
      if (rep.verdict == MixedVerdict::HypothesisNotMet) continue;
      ++closed;
      t.check(!rep.violation, where + ": closed under both shifts but neither {0} nor R^n");
      if (rep.covers) {
        ++covering;
        t.check(rep.lcp, where + ": C1 + C2 = R^n but not an LCP");
      }
    }
  extra = "free pairs=" + std::to_string(pairs) + " both-shift-closed=" + std::to_string(closed) +
          " covering=" + std::to_string(covering);
}

struct Spec {
  const char* title;
  double limit;
};

// Time limits in seconds, pinned per criterion.
const Spec kSpecs[kCriterionCount] = {
    {"U:3 worked pair: dims 6, ranks 1, ell 5, (u3, u1u2) spans the intersection", 1.0},
    {"Z4 negacyclic pair: factors of x^7+1, <2hf>, ell 3", 5.0},
    {"ideals <u_i1, ..., u_is> of U:k and their duals", 10.0},
    {"duality and double dual on the test envelope", 120.0},
    {"pair identity suite on the test envelope", 120.0},
    {"constacyclic intersection: lcm tower and dimension formula vs oracle", 300.0},
    {"covering pairs over Z4^2: non-free pairs meet, 0-DLIPs are free", 60.0},
    {"Gray map: weights, linearity, bijectivity, dimension and ell transfer", 300.0},
    {"EAQEC: parameter substitution and tau_i = k_i - ell on constacyclic pairs", 300.0},
    {"mixed shift constants: both-shift-closed intersections are {0} or R^n", 60.0},
};

}  // namespace

std::string CriterionResult::line() const {
  char buf[96];
  std::snprintf(buf, sizeof buf, " (%.2f s, limit %.0f s)", seconds, limit_seconds);
  std::string s = std::string(passed() ? "PASS" : "FAIL") + " " + std::to_string(id) + " " + title + ": checks=" +
                  std::to_string(checks) + " failures=" + std::to_string(failures);
  if (!detail.empty()) s += "; " + detail;
  if (seconds > limit_seconds) s += "; over time limit";
  return s + buf;
}

nlohmann::json CriterionResult::to_json() const {
  return {{"id", id},          {"title", title},   {"passed", passed()},    {"checks", checks},
          {"failures", failures}, {"seconds", seconds}, {"limit_seconds", limit_seconds}, {"detail", detail}};
}

std::vector<int> suite_criteria(const std::string& suite) {
  if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  if (suite == "linalg") return {3, 4};
  if (suite == "dlip") return {1, 5, 7};
  if (suite == "constacyclic") return {2, 6, 10};
  if (suite == "gray") return {8, 9};
  throw Error(ErrorKind::PreconditionFailed, "unknown suite '" + suite + "' (all, linalg, dlip, constacyclic, gray)");
}

CriterionResult run_criterion(int id, const VerifyOptions& options) {
  if (id < 1 || id > kCriterionCount) throw Error(ErrorKind::PreconditionFailed, "no criterion " + std::to_string(id));
  CriterionResult r;
  r.id = id;
  r.title = kSpecs[id - 1].title;
  r.limit_seconds = kSpecs[id - 1].limit;
  Tally t;
  std::string extra;
  const auto start = std::chrono::steady_clock::now();
  try {
    switch (id) {
      case 1: criterion_1(t, options); break;
      case 2: criterion_2(t, options); break;
      case 3: criterion_3(t, options); break;
      case 4: criterion_4(t, options); break;
      case 5: criterion_5(t, options, extra); break;
      case 6: criterion_6(t, options, extra); break;
      case 7: criterion_7(t, options, extra); break;
      case 8: criterion_8(t, options); break;
      case 9: criterion_9(t, options, extra); break;
      case 10: criterion_10(t, options, extra); break;
    }
  } catch (const Error& e) {
    t.check(false, e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.checks = t.checks;
  r.failures = t.failures;
  r.checks_passed = t.failures == 0;
  r.detail = extra;
  for (const auto& note : t.notes) r.detail += (r.detail.empty() ? "first failure: " : "; e.g. ") + note;
  return r;
}

}  // namespace dlip
