#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dlip/linalg.hpp"
#include "json.hpp"

namespace dlip {

/// dim(C cap D).
Dimension dlip_ell(const Code& c, const Code& d);

/// Both sides of the two parity-check rank identities
///   rank_q(H2 G1^T) = rank_q(G1) - ell,   rank_q(H1 G2^T) = rank_q(G2) - ell.
/// `col_*` hold the column-span sizes, which give the exact identity
/// dim(C1 cap C2) = dim C1 - col_rank_q(H2 G1^T) on every local ring.
struct RankCriterionReport {
  unsigned ell = 0;
  unsigned rank_g1 = 0, rank_g2 = 0;
  unsigned rank_h2g1 = 0, rank_h1g2 = 0;
  unsigned col_rank_h2g1 = 0, col_rank_h1g2 = 0;
  bool first = false, second = false;
  /// true when the row-span reading is only advisory: non-free input over a
  /// local ring that is not a chain ring.
  bool advisory = false;

  bool holds() const { return first || second; }
  bool column_form_holds() const {
    return rank_g1 == col_rank_h2g1 + ell || rank_g2 == col_rank_h1g2 + ell;
  }
};

/// Throws NotAParityCheck unless H G^T = 0 and rank_q(G) + rank_q(H) = n omega.
void require_parity_check(const Matrix& g, const Matrix& h);

RankCriterionReport check_rank_criterion(const Matrix& g1, const Matrix& h1, const Matrix& g2, const Matrix& h2,
                                         unsigned ell);

struct IdentitySides {
  unsigned lhs = 0, rhs = 0;
  bool holds() const { return lhs == rhs; }
};

/// lhs = rank_q(G1; G2), rhs = rank_q(G1) + rank_q(G2) - dim(C1 cap C2).
IdentitySides stacked_rank_identity(const Matrix& g1, const Matrix& g2);

/// n omega - dim C - dim D + dim(C cap D), componentwise for CRT rings.
Dimension dual_pair_dim(const Code& c, const Code& d);
/// dim(C^perp cap D^perp) computed directly.
Dimension dual_pair_dim_oracle(const Code& c, const Code& d);

struct HullGram {
  unsigned from_g = 0;       // rank_q(G) - rank_q(G G^T)
  unsigned from_h = 0;       // rank_q(H) - rank_q(H H^T)
  unsigned from_hull = 0;    // dim(C cap C^perp)
  bool consistent() const { return from_g == from_hull && from_h == from_hull; }
};
HullGram hull_dim_via_gram(const Matrix& g, const Matrix& h);

bool is_lcd(const Code& c);
/// 0-DLIP, C + D = R^n and both codes free.
bool is_lcp(const Code& c, const Code& d);

struct LcpEquivalence {
  bool preconditions_met = false;  // C + D = R^n
  bool lcp = false;
  bool generators_invertible = false;
  bool parity_checks_invertible = false;
  bool rank_condition = false;
  bool agree() const {
    return lcp == generators_invertible && lcp == parity_checks_invertible && lcp == rank_condition;
  }
};
/// The four equivalent LCP statements for free codes. G_i and H_i may be
/// arbitrary spanning sets; bases are extracted before the invertibility
/// tests. Throws PreconditionFailed unless both codes are free.
LcpEquivalence lcp_equivalence_report(const Matrix& g1, const Matrix& h1, const Matrix& g2, const Matrix& h2);

struct CoverVerdict {
  bool both_nonfree = false;
  unsigned ell = 0;
  /// Both non-free implies ell > 0; ell = 0 implies both free.
  bool consistent = true;
};
/// Chain rings only; throws PreconditionFailed if C + D != R^n.
CoverVerdict nonfree_cover_check(const Code& c, const Code& d);

/// ell of the CRT pair assembled from component pairs.
Dimension crt_pair_ell(const RingPtr& ring, const std::vector<std::pair<Code, Code>>& components);

struct PairAnalysis {
  Dimension ell;
  Dimension dim_c, dim_d;
  bool covers_space = false;
  bool free_c = false, free_d = false;
  bool is_lcp = false;
  bool is_lcd_pair = false;  // D = C^perp and ell = 0
  // Local rings only.
  std::optional<unsigned> rank_g1, rank_g2, rank_stacked;
  std::optional<RankCriterionReport> criterion;
  std::optional<IdentitySides> stacked;
  Dimension dual_pair_formula, dual_pair_direct;

  nlohmann::json to_json() const;
  std::string to_text() const;
};

PairAnalysis analyze_pair(const Code& c, const Code& d);

nlohmann::json to_json(const Dimension& d);

}  // namespace dlip
