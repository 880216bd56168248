#include "dlip/pairs.hpp"

#include <sstream>

namespace dlip {

namespace {

void require_local(const Ring& r, const char* what) {
  if (!r.is_local()) throw Error(ErrorKind::NotLocal, std::string(what) + " needs a local ring, got " + r.name());
}

Dimension full_dim(const Ring& r, std::size_t n) {
  if (r.is_local()) return Dimension::local(r.q(), static_cast<unsigned>(n) * r.omega());
  Dimension d;
  for (const auto& comp : r.components()) d.parts.push_back({comp->q(), static_cast<unsigned>(n) * comp->omega()});
  return d;
}

bool covers(const Code& c, const Code& d) { return dim(sum(c, d)) == full_dim(*c.ring(), c.length()); }

Matrix stack_bases(const Code& a, const Code& b) { return basis_rows(a).stack(basis_rows(b)); }

}  // namespace

Dimension dlip_ell(const Code& c, const Code& d) { return dim(intersect(c, d)); }

void require_parity_check(const Matrix& g, const Matrix& h) {
  require_same_ring(*g.ring(), *h.ring());
  if (g.cols() != h.cols()) throw Error(ErrorKind::LengthMismatch, "generator and parity-check widths differ");
  const Ring& r = *g.ring();
  require_local(r, "parity-check validation");
  const Matrix prod = h * g.transpose();
  for (std::size_t i = 0; i < prod.rows(); ++i)
    for (std::size_t j = 0; j < prod.cols(); ++j)
      if (prod.at(i, j) != 0) throw Error(ErrorKind::NotAParityCheck, "H G^T is not zero");
  if (rank_q(g) + rank_q(h) != g.cols() * r.omega())
    throw Error(ErrorKind::NotAParityCheck, "|<H>| |<G>| differs from |R|^n");
}

RankCriterionReport check_rank_criterion(const Matrix& g1, const Matrix& h1, const Matrix& g2, const Matrix& h2,
                                         unsigned ell) {
  require_parity_check(g1, h1);
  require_parity_check(g2, h2);
  if (g1.cols() != g2.cols()) throw Error(ErrorKind::LengthMismatch, "codes have different lengths");
  RankCriterionReport rep;
  rep.ell = ell;
  rep.rank_g1 = rank_q(g1);
  rep.rank_g2 = rank_q(g2);
  const Matrix h2g1 = h2 * g1.transpose();
  const Matrix h1g2 = h1 * g2.transpose();
  rep.rank_h2g1 = rank_q(h2g1);
  rep.rank_h1g2 = rank_q(h1g2);
  rep.col_rank_h2g1 = col_rank_q(h2g1);
  rep.col_rank_h1g2 = col_rank_q(h1g2);
  rep.first = rep.rank_h2g1 + ell == rep.rank_g1;
  rep.second = rep.rank_h1g2 + ell == rep.rank_g2;
  rep.advisory = !g1.ring()->is_chain() && !(is_free(Code(g1)) && is_free(Code(g2)));
  return rep;
}

IdentitySides stacked_rank_identity(const Matrix& g1, const Matrix& g2) {
  require_local(*g1.ring(), "stacked rank identity");
  IdentitySides s;
  s.lhs = rank_q(g1.stack(g2));
  s.rhs = rank_q(g1) + rank_q(g2) - dlip_ell(Code(g1), Code(g2)).value();
  return s;
}

Dimension dual_pair_dim(const Code& c, const Code& d) {
  const Dimension full = full_dim(*c.ring(), c.length());
  const Dimension dc = dim(c), dd = dim(d), ell = dlip_ell(c, d);
  Dimension out;
  for (std::size_t j = 0; j < full.parts.size(); ++j)
    out.parts.push_back(
        {full.parts[j].first, full.parts[j].second - dc.parts[j].second - dd.parts[j].second + ell.parts[j].second});
  return out;
}

Dimension dual_pair_dim_oracle(const Code& c, const Code& d) { return dim(intersect(dual(c), dual(d))); }

HullGram hull_dim_via_gram(const Matrix& g, const Matrix& h) {
  require_parity_check(g, h);
  HullGram out;
  out.from_g = rank_q(g) - rank_q(g * g.transpose());
  out.from_h = rank_q(h) - rank_q(h * h.transpose());
  out.from_hull = dim(hull(Code(g))).value();
  return out;
}

bool is_lcd(const Code& c) {
  const Dimension d = dim(hull(c));
  for (auto [q, v] : d.parts)
    if (v != 0) return false;
  return true;
}

bool is_lcp(const Code& c, const Code& d) {
  const Dimension ell = dlip_ell(c, d);
  for (auto [q, v] : ell.parts)
    if (v != 0) return false;
  return covers(c, d) && is_free(c) && is_free(d);
}

LcpEquivalence lcp_equivalence_report(const Matrix& g1, const Matrix& h1, const Matrix& g2, const Matrix& h2) {
  require_parity_check(g1, h1);
  require_parity_check(g2, h2);
  const Code c1(g1), c2(g2);
  if (!is_free(c1) || !is_free(c2)) throw Error(ErrorKind::PreconditionFailed, "both codes must be free");
  LcpEquivalence rep;
  rep.preconditions_met = covers(c1, c2);
  rep.lcp = is_lcp(c1, c2);
  rep.generators_invertible = is_invertible(stack_bases(c1, c2));
  rep.parity_checks_invertible = is_invertible(stack_bases(Code(h1), Code(h2)));
  rep.rank_condition = rank_q(h2 * g1.transpose()) == rank_q(g1) || rank_q(h1 * g2.transpose()) == rank_q(g2);
  return rep;
}

CoverVerdict nonfree_cover_check(const Code& c, const Code& d) {
  if (!c.ring()->is_chain()) throw Error(ErrorKind::NotAChainRing, "cover check needs a chain ring");
  if (!covers(c, d)) throw Error(ErrorKind::PreconditionFailed, "C + D is not the whole space");
  CoverVerdict v;
  const bool fc = is_free(c), fd = is_free(d);
  v.both_nonfree = !fc && !fd;
  v.ell = dlip_ell(c, d).value();
  if (v.both_nonfree && v.ell == 0) v.consistent = false;
  if (v.ell == 0 && !(fc && fd)) v.consistent = false;
  return v;
}

Dimension crt_pair_ell(const RingPtr& ring, const std::vector<std::pair<Code, Code>>& components) {
  std::vector<Code> cs, ds;
  for (const auto& [c, d] : components) {
    if (c.length() != d.length()) throw Error(ErrorKind::LengthMismatch, "component pair lengths differ");
    cs.push_back(c);
    ds.push_back(d);
  }
  return dlip_ell(crt_code(ring, cs), crt_code(ring, ds));
}

PairAnalysis analyze_pair(const Code& c, const Code& d) {
  PairAnalysis a;
  a.ell = dlip_ell(c, d);
  a.dim_c = dim(c);
  a.dim_d = dim(d);
  a.covers_space = covers(c, d);
  a.free_c = is_free(c);
  a.free_d = is_free(d);
  a.is_lcp = is_lcp(c, d);
  a.is_lcd_pair = dual(c).same_elements(d) && is_lcd(c);
  a.dual_pair_formula = dual_pair_dim(c, d);
  a.dual_pair_direct = dual_pair_dim_oracle(c, d);
  if (c.ring()->is_local()) {
    const Matrix h1 = dual(c).generators(), h2 = dual(d).generators();
    a.rank_g1 = rank_q(c.generators());
    a.rank_g2 = rank_q(d.generators());
    a.rank_stacked = rank_q(c.generators().stack(d.generators()));
    a.criterion = check_rank_criterion(c.generators(), h1, d.generators(), h2, a.ell.value());
    a.stacked = IdentitySides{*a.rank_stacked, *a.rank_g1 + *a.rank_g2 - a.ell.value()};
  }
  return a;
}

nlohmann::json to_json(const Dimension& d) {
  if (d.is_local()) return d.parts.front().second;
  nlohmann::json parts = nlohmann::json::array();
  for (auto [q, v] : d.parts) parts.push_back({{"q", q}, {"dim", v}});
  return {{"components", parts}, {"derived", d.derived()}};
}

nlohmann::json PairAnalysis::to_json() const {
  nlohmann::json j;
  j["ell"] = dlip::to_json(ell);
  j["dims"] = {dlip::to_json(dim_c), dlip::to_json(dim_d)};
  j["flags"] = {{"covers_space", covers_space}, {"free", {free_c, free_d}}, {"is_lcp", is_lcp},
                {"is_lcd_pair", is_lcd_pair}};
  j["dual_pair_dim"] = {{"formula", dlip::to_json(dual_pair_formula)}, {"direct", dlip::to_json(dual_pair_direct)}};
  if (criterion) {
    const auto& r = *criterion;
    j["ranks"] = {{"G1", *rank_g1},           {"G2", *rank_g2},           {"stacked", *rank_stacked},
                  {"H2G1T", r.rank_h2g1},     {"H1G2T", r.rank_h1g2},     {"H2G1T_columns", r.col_rank_h2g1},
                  {"H1G2T_columns", r.col_rank_h1g2}};
    j["rank_criterion"] = {{"first", {{"lhs", r.rank_h2g1}, {"rhs", r.rank_g1 - ell.value()}}},
                           {"second", {{"lhs", r.rank_h1g2}, {"rhs", r.rank_g2 - ell.value()}}},
                           {"holds", r.holds()},
                           {"column_form_holds", r.column_form_holds()},
                           {"advisory", r.advisory}};
    j["stacked_identity"] = {{"lhs", stacked->lhs}, {"rhs", stacked->rhs}};
  }
  return j;
}

std::string PairAnalysis::to_text() const {
  std::ostringstream os;
  os << "ell: " << ell.format() << '\n';
  os << "dim C: " << dim_c.format() << "  dim D: " << dim_d.format() << '\n';
  os << "free: " << (free_c ? "yes" : "no") << ", " << (free_d ? "yes" : "no") << '\n';
  os << "covers R^n: " << (covers_space ? "yes" : "no") << "  LCP: " << (is_lcp ? "yes" : "no")
     << "  LCD pair: " << (is_lcd_pair ? "yes" : "no") << '\n';
  os << "dim(C^perp cap D^perp): " << dual_pair_formula.format() << " (direct " << dual_pair_direct.format() << ")\n";
  if (criterion) {
    const auto& r = *criterion;
    os << "rank_q G1=" << *rank_g1 << " G2=" << *rank_g2 << " stacked=" << *rank_stacked << '\n';
    os << "rank_q(H2 G1^T)=" << r.rank_h2g1 << " vs rank_q(G1)-ell=" << r.rank_g1 - ell.value() << '\n';
    os << "rank_q(H1 G2^T)=" << r.rank_h1g2 << " vs rank_q(G2)-ell=" << r.rank_g2 - ell.value() << '\n';
    os << "rank criterion: " << (r.holds() ? "holds" : "fails") << (r.advisory ? " (advisory)" : "") << '\n';
    os << "stacked identity: " << stacked->lhs << " = " << stacked->rhs << (stacked->holds() ? "" : "  MISMATCH")
       << '\n';
  }
  return os.str();
}

}  // namespace dlip
