// dlip: command-line front end for the library.
//
// Exit codes: 0 ok, 1 failed check or library error, 2 usage or unparsable
// input, 3 element enumeration over the oracle bound.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dlip/gray.hpp"
#include "dlip/io.hpp"
#include "dlip/pairs.hpp"
#include "dlip/verify.hpp"

namespace {

using namespace dlip;
using nlohmann::json;

struct Global {
  bool json = false;
  std::uint64_t bound = kDefaultOracleBound;
  std::uint64_t seed = 7;
  std::string out;
};

// Set by handlers that ran to completion but found a failing check.
int g_status = 0;

void emit(const Global& g, const json& j, const std::string& text) {
  std::ostringstream os;
  if (g.json) {
    json doc = j;
    doc["version"] = kSchemaVersion;
    os << doc.dump(2) << '\n';
  } else {
    os << text;
  }
  if (g.out.empty()) {
    std::cout << os.str();
    return;
  }
  std::ofstream f(g.out);
  if (!f || !(f << os.str())) throw Error(ErrorKind::IoError, "cannot write " + g.out);
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
  return s;
}

// Splits "a, b c" or "(1,2),(0,1)" on commas and blanks outside brackets.
std::vector<std::string> split_elements(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : text) {
    if (ch == '(' || ch == '[') ++depth;
    if (ch == ')' || ch == ']') --depth;
    if (depth == 0 && (ch == ',' || ch == ' ')) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

// CSV cell, quoted when it holds a delimiter or a quote.
std::string csv_cell(const std::string& v) {
  if (v.find_first_of(",\"\n") == std::string::npos) return v;
  std::string out = "\"";
  for (char ch : v) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

std::string code_text(const Code& c) {
  std::ostringstream os;
  os << "ring " << c.ring()->name() << ", n = " << c.length() << '\n';
  os << "generators:\n";
  const Matrix& g = c.generators();
  for (std::size_t i = 0; i < g.rows(); ++i) {
    os << "  (";
    for (std::size_t j = 0; j < g.cols(); ++j) os << (j ? ", " : "") << c.ring()->format(g.at(i, j));
    os << ")\n";
  }
  return os.str();
}

// ---- ring-info

void ring_info(const Global& g, const std::string& spec) {
  const RingPtr r = Ring::parse(spec);
  json j = {{"ring", r->name()}, {"size", r->size()}, {"local", r->is_local()}, {"chain", r->is_chain()}};
  std::ostringstream os;
  os << "ring " << r->name() << "\n|R| = " << r->size() << '\n';
  if (r->is_local()) {
    const auto mu = r->loewy_invariants().mu;
    std::vector<std::string> m;
    for (unsigned v : mu) m.push_back(std::to_string(v));
    j["q"] = r->q();
    j["omega"] = r->omega();
    j["loewy"] = mu;
    os << "residue field F_" << r->q() << ", omega = " << r->omega() << '\n';
    os << "Loewy = (" << join(m, ",") << ")\n";
    if (r->is_chain()) {
      j["t"] = r->t();
      os << "chain ring, nilpotency index t = " << r->t() << '\n';
    } else {
      os << "local, not a chain ring\n";
    }
  } else {
    std::vector<std::string> names;
    for (const auto& c : r->components()) names.push_back(c->name());
    j["components"] = names;
    os << "components: " << join(names, ", ") << '\n';
  }
  emit(g, j, os.str());
}

// ---- code

void code_cmd(const Global& g, const std::string& action, const std::vector<std::string>& files) {
  auto need = [&](std::size_t k) {
    if (files.size() != k)
      throw Error(ErrorKind::ParseError, "'code " + action + "' takes " + std::to_string(k) + " code file(s)");
  };
  if (action == "info") {
    need(1);
    const Code c = read_code_file(files[0], g.bound);
    const Dimension d = dim(c);
    json j = {{"code", code_to_json(c)}, {"dim", to_json(d)}, {"free", is_free(c)}};
    std::ostringstream os;
    os << code_text(c) << "dim = " << d.format() << "\nfree: " << (is_free(c) ? "yes" : "no") << '\n';
    if (c.ring()->is_local()) {
      j["rank_R"] = rank_R(c);
      os << "rank_R = " << rank_R(c) << '\n';
    }
    if (c.ring()->is_chain()) {
      const auto sf = standard_form(c.generators());
      j["profile"] = sf.profile;
      std::vector<std::string> p;
      for (unsigned v : sf.profile) p.push_back(std::to_string(v));
      os << "type profile (" << join(p, ",") << ")\n";
    }
    emit(g, j, os.str());
    return;
  }
  auto compute = [&]() {
    if (action == "dual" || action == "hull") {
      need(1);
      const Code c = read_code_file(files[0], g.bound);
      return action == "dual" ? dual(c) : hull(c);
    }
    if (action == "intersect" || action == "sum") {
      need(2);
      const Code c = read_code_file(files[0], g.bound), d = read_code_file(files[1], g.bound);
      return action == "intersect" ? intersect(c, d) : sum(c, d);
    }
    throw Error(ErrorKind::ParseError, "unknown code action '" + action + "' (info, dual, hull, intersect, sum)");
  };
  const Code result = compute();
  json j = code_to_json(result);
  j["dim"] = to_json(dim(result));
  emit(g, j, code_text(result) + "dim = " + dim(result).format() + '\n');
}

// ---- dlip

void dlip_cmd(const Global& g, const std::string& file1, const std::string& file2) {
  const Code c = read_code_file(file1, g.bound), d = read_code_file(file2, g.bound);
  const PairAnalysis a = analyze_pair(c, d);
  std::ostringstream os;
  os << a.ell.format() << "-DLIP\n" << a.to_text();
  emit(g, a.to_json(), os.str());
  // Identities that hold for every pair; the row-form rank criterion is only
  // guaranteed for free pairs.
  bool ok = a.dual_pair_formula == a.dual_pair_direct && (!a.stacked || a.stacked->holds());
  if (a.criterion) {
    ok = ok && a.criterion->column_form_holds();
    if (a.free_c && a.free_d) ok = ok && a.criterion->holds();
  }
  if (!ok) {
    std::cerr << "dlip: an identity failed for this pair\n";
    g_status = 1;
  }
}

// ---- constacyclic

struct CycOptions {
  std::string ring;
  std::size_t n = 0;
  std::string lambda = "1";
  std::string lambda2;
  std::string c1, c2;
  std::string poly;
  bool unchecked = false;
};

ContextPtr context_of(const std::string& ring_text, std::size_t n, const std::string& lambda) {
  const RingPtr r = Ring::parse(ring_text);
  return ConstacyclicContext::get(r, n, r->parse_element(lambda));
}

// Factor-index tower, or with --unchecked a ';'-separated list of raw level
// polynomials D_0;D_1;...
ConstacyclicCode tower_arg(const ContextPtr& ctx, const std::string& text, bool unchecked, const char* flag) {
  if (text.empty()) throw Error(ErrorKind::ParseError, std::string("missing ") + flag);
  if (!unchecked) return parse_tower(ctx, text);
  std::vector<Poly> levels;
  std::stringstream ss(text);
  for (std::string piece; std::getline(ss, piece, ';');) levels.push_back(parse_poly(ctx->ring(), piece));
  while (levels.size() < ctx->t()) levels.push_back(levels.back());
  return code_from_tower(ctx, levels);
}

json cyc_json(const ConstacyclicCode& c) {
  json j = constacyclic_to_json(c);
  j.erase("version");
  return j;
}

std::string cyc_text(const ConstacyclicCode& c) {
  return format_tower(c) + "  " + format_generators(c) + "  |C| = " + std::to_string(c.ctx->q()) + "^" +
         std::to_string(c.log_size()) + '\n';
}

void constacyclic_cmd(const Global& g, const std::string& action, const CycOptions& o) {
  const auto ctx = context_of(o.ring, o.n, o.lambda);
  if (action == "factor") {
    json factors = json::array();
    std::ostringstream os;
    os << "x^" << o.n << " - (" << ctx->ring()->format(ctx->lambda()) << ") over " << ctx->ring()->name() << '\n';
    for (std::size_t i = 0; i < ctx->factor_count(); ++i) {
      factors.push_back(ctx->factors()[i].format());
      os << "  " << i << ": " << ctx->factors()[i].format() << '\n';
    }
    emit(g, {{"ring", ctx->ring()->name()}, {"n", o.n}, {"lambda", ctx->ring()->format(ctx->lambda())},
             {"factors", factors}},
         os.str());
  } else if (action == "towers") {
    json rows = json::array();
    std::ostringstream os;
    for (const auto& c : all_towers(ctx)) {
      rows.push_back(cyc_json(c));
      os << cyc_text(c);
    }
    emit(g, {{"codes", rows}}, os.str());
  } else if (action == "info") {
    const auto c = tower_arg(ctx, o.c1, o.unchecked, "--c1");
    const auto tuple = canonical_tuple(c);
    verify_canonical(c, tuple, false);
    const auto size = constacyclic_size(tuple);
    json tj = json::array();
    std::vector<std::string> tt;
    for (FactorMask m : tuple.f) {
      tj.push_back(ctx->format_mask(m));
      tt.push_back(ctx->format_mask(m));
    }
    json j = cyc_json(c);
    j["canonical_tuple"] = tj;
    j["log_size"] = size.log_code;
    j["log_dual_size"] = size.log_dual;
    emit(g, j,
         cyc_text(c) + "canonical tuple (" + join(tt, ", ") + ")\n|C| = " + std::to_string(size.q) + "^" +
             std::to_string(size.log_code) + ", |C^perp| = " + std::to_string(size.q) + "^" +
             std::to_string(size.log_dual) + '\n');
  } else if (action == "dual") {
    const auto d = constacyclic_dual(tower_arg(ctx, o.c1, o.unchecked, "--c1"));
    emit(g, cyc_json(d), cyc_text(d));
  } else if (action == "intersect") {
    const auto a = tower_arg(ctx, o.c1, o.unchecked, "--c1"), b = tower_arg(ctx, o.c2, o.unchecked, "--c2");
    const auto rep = constacyclic_intersection(a, b);
    json j = {{"c1", cyc_json(a)},
              {"c2", cyc_json(b)},
              {"intersection", cyc_json(rep.meet)},
              {"ell", rep.dim_exact},
              {"ell_formula", rep.dim_literal}};
    std::ostringstream os;
    os << "C1 = " << cyc_text(a) << "C2 = " << cyc_text(b) << "C1 cap C2 = " << cyc_text(rep.meet);
    os << "ell = " << rep.dim_exact << " (sum_j (t-j)(n - deg lcm_j) = " << rep.dim_literal << ")\n";
    emit(g, j, os.str());
  } else if (action == "mixed") {
    if (o.lambda2.empty()) throw Error(ErrorKind::ParseError, "missing --lambda2");
    const auto ctx2 = context_of(o.ring, o.n, o.lambda2);
    const auto a = tower_arg(ctx, o.c1, o.unchecked, "--c1"), b = tower_arg(ctx2, o.c2, o.unchecked, "--c2");
    const auto rep = mixed_lambda_intersection(a, b, g.bound);
    static const char* names[] = {"zero", "full", "other", "hypothesis not met"};
    const char* verdict = names[static_cast<int>(rep.verdict)];
    json j = {{"verdict", verdict},       {"ell", rep.ell},         {"covers", rep.covers},
              {"lcp", rep.lcp},           {"violation", rep.violation}, {"covering_not_lcp", rep.covering_not_lcp}};
    std::ostringstream os;
    os << "intersection: " << verdict << ", ell = " << rep.ell << "\nC1 + C2 = R^n: " << (rep.covers ? "yes" : "no")
       << "  LCP: " << (rep.lcp ? "yes" : "no") << '\n';
    if (rep.violation) os << "closed under both shifts but neither {0} nor R^n\n";
    if (rep.covering_not_lcp) os << "C1 + C2 = R^n with both shifts preserving the intersection, yet not an LCP\n";
    emit(g, j, os.str());
    if (rep.violation || rep.covering_not_lcp) g_status = 1;
  } else if (action == "lcd") {
    if (o.poly.empty()) throw Error(ErrorKind::ParseError, "missing --poly");
    const auto rep = constacyclic_lcd_check(ctx, parse_poly(ctx->ring(), o.poly), g.bound);
    json j = {{"square_one", rep.square_one}, {"predicted", rep.predicted}, {"actual", rep.actual}};
    emit(g, j,
         std::string("predicted LCD: ") + (rep.predicted ? "yes" : "no") + "\nactual LCD: " +
             (rep.actual ? "yes" : "no") + '\n');
    if (!rep.consistent()) g_status = 1;
  } else {
    throw Error(ErrorKind::ParseError,
                "unknown constacyclic action '" + action + "' (factor, towers, info, dual, intersect, mixed, lcd)");
  }
}

// ---- gray

void gray_cmd(const Global& g, const std::string& action, const std::string& ring, const std::string& vector,
              const std::string& file) {
  if (action == "map") {
    const GrayContext gc(Ring::parse(ring));
    Vector x;
    for (const auto& e : split_elements(vector)) x.push_back(gc.ring()->parse_element(e));
    const Vector y = gray_map(gc, x);
    std::vector<std::string> ys;
    for (Elem e : y) ys.push_back(std::to_string(e));
    emit(g, {{"image", y}, {"gray_weight", gray_weight(gc, x)}, {"hamming_weight", hamming_weight(y)}},
         "(" + join(ys, ",") + ")  weight " + std::to_string(gray_weight(gc, x)) + '\n');
  } else if (action == "image") {
    const Code c = read_code_file(file, g.bound);
    const GrayContext gc(c.ring());
    const Code img = gray_image_code(gc, c);
    json j = {{"image", code_to_json(img)}, {"dim", dim(img).value()}};
    std::string text = code_text(img) + "dim = " + std::to_string(dim(img).value()) + '\n';
    if (c.elements().size() > 1) {
      j["min_weight"] = min_hamming_weight(img);
      text += "minimum weight " + std::to_string(min_hamming_weight(img)) + '\n';
    }
    emit(g, j, text);
  } else {
    throw Error(ErrorKind::ParseError, "unknown gray action '" + action + "' (map, image)");
  }
}

// ---- eaqec

struct EaqecOptions {
  int k1 = 0, k2 = 0, ell = 0, n = 0;
  unsigned q = 0;
  std::optional<int> d1, d2, d1perp;
};

void eaqec_cmd(const Global& g, const std::string& action, const EaqecOptions& e, const CycOptions& o) {
  if (action == "lip") {
    const auto p = eaqec_from_lip(e.k1, e.d1, e.k2, e.d2, e.ell, e.d1perp, e.n, e.q);
    emit(g, p.to_json(), p.format() + '\n');
  } else if (action == "pair") {
    const auto ctx = context_of(o.ring, o.n, o.lambda);
    const auto rep = eaqec_from_constacyclic_pair(tower_arg(ctx, o.c1, o.unchecked, "--c1"),
                                                  tower_arg(ctx, o.c2, o.unchecked, "--c2"), g.bound);
    std::ostringstream os;
    os << rep.params.format() << "\nk1 = " << rep.k1 << ", k2 = " << rep.k2 << ", ell = " << rep.ell
       << ", tau = (" << rep.tau1 << ", " << rep.tau2 << ")\n";
    if (rep.tau_mismatch) os << *rep.tau_mismatch << '\n';
    emit(g, rep.to_json(), os.str());
    if (rep.tau_mismatch) g_status = 1;
  } else {
    throw Error(ErrorKind::ParseError, "unknown eaqec action '" + action + "' (lip, pair)");
  }
}

// ---- census

void census_cmd(const Global& g, const std::string& ring_text, std::vector<std::size_t> ns,
                std::vector<std::string> lambdas, const std::string& format) {
  if (format != "csv" && format != "json") throw Error(ErrorKind::ParseError, "census format is csv or json");
  const RingPtr r = Ring::parse(ring_text);
  std::optional<GrayContext> gc;
  if (r->family() == Family::ChainFqGamma && r->t() == 2 && r->q() % 4 == 1) gc.emplace(r);
  std::sort(ns.begin(), ns.end());

  static const char* header = "ring,n,lambda,i,j,tower_1,tower_2,k1,k2,ell,tau1,tau2,tau_consistent,eaqec";
  std::ostringstream csv;
  csv << header << '\n';
  json rows = json::array();
  for (std::size_t n : ns) {
    std::vector<std::pair<Elem, std::string>> ls;
    for (const auto& l : lambdas) ls.emplace_back(r->parse_element(l), "");
    std::sort(ls.begin(), ls.end());
    ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
    for (auto& [lambda, _] : ls) {
      const auto ctx = ConstacyclicContext::get(r, n, lambda);
      const auto towers = all_towers(ctx);
      std::vector<std::optional<unsigned>> w, w_dual;
      if (gc)
        for (const auto& c : towers) {
          const Code code = materialize(c, g.bound), d = materialize(constacyclic_dual(c), g.bound);
          w.push_back(code.elements().size() > 1 ? std::optional(min_gray_weight(*gc, code)) : std::nullopt);
          w_dual.push_back(d.elements().size() > 1 ? std::optional(min_gray_weight(*gc, d)) : std::nullopt);
        }
      for (std::size_t i = 0; i < towers.size(); ++i)
        for (std::size_t j = 0; j < towers.size(); ++j) {
          json row = {{"ring", r->name()},         {"n", n},
                      {"lambda", r->format(lambda)}, {"i", i},
                      {"j", j},                    {"tower_1", format_tower(towers[i])},
                      {"tower_2", format_tower(towers[j])}};
          std::string eaqec;
          if (gc) {
            const auto rep = eaqec_from_constacyclic_pair(towers[i], towers[j], w[j], w_dual[i]);
            row.update({{"k1", rep.k1}, {"k2", rep.k2}, {"ell", rep.ell}, {"tau1", rep.tau1}, {"tau2", rep.tau2},
                        {"tau_consistent", !rep.tau_mismatch}, {"eaqec", rep.params.format()}});
            eaqec = rep.params.format();
          } else {
            const auto rep = constacyclic_intersection(towers[i], towers[j]);
            row.update({{"k1", towers[i].log_size()}, {"k2", towers[j].log_size()}, {"ell", rep.dim_exact},
                        {"tau1", nullptr}, {"tau2", nullptr}, {"tau_consistent", nullptr}, {"eaqec", nullptr}});
          }
          auto field = [&](const char* k) {
            const json& v = row[k];
            if (v.is_null()) return std::string();
            if (v.is_string()) return v.get<std::string>();
            if (v.is_boolean()) return std::string(v.get<bool>() ? "yes" : "no");
            return v.dump();
          };
          std::vector<std::string> cells;
          for (const char* k : {"ring", "n", "lambda", "i", "j", "tower_1", "tower_2", "k1", "k2", "ell", "tau1",
                                "tau2", "tau_consistent", "eaqec"})
            cells.push_back(csv_cell(field(k)));
          csv << join(cells, ",") << '\n';
          rows.push_back(std::move(row));
        }
    }
  }
  Global gg = g;
  gg.json = format == "json" || g.json;
  emit(gg, {{"rows", rows}}, csv.str());
}

// ---- verify

void verify_cmd(const Global& g, const std::string& suite) {
  VerifyOptions options;
  options.seed = g.seed;
  options.bound = g.bound;
  json results = json::array();
  std::ostringstream os;
  bool all = true;
  for (int id : suite_criteria(suite)) {
    const auto r = run_criterion(id, options);
    results.push_back(r.to_json());
    os << r.line() << '\n';
    all = all && r.passed();
  }
  emit(g, {{"suite", suite}, {"seed", g.seed}, {"criteria", results}, {"passed", all}}, os.str());
  if (!all) g_status = 1;
}

std::uint64_t default_bound() {
  if (const char* env = std::getenv("DLIP_ORACLE_BOUND")) {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
    std::cerr << "ignoring malformed DLIP_ORACLE_BOUND='" << env << "'\n";
  }
  return kDefaultOracleBound;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact DLIP computations for codes over finite commutative rings."};
  app.require_subcommand(1, 1);
  app.fallthrough();
  Global g;
  g.bound = default_bound();
  app.add_flag("--json", g.json, "machine-readable output");
  app.add_option("--bound", g.bound, "largest element set the oracles may enumerate (env DLIP_ORACLE_BOUND)");
  app.add_option("--seed", g.seed, "seed for randomized checks");
  app.add_option("-o,--out", g.out, "write the report to a file");

  std::string ring_spec;
  auto* ring = app.add_subcommand("ring-info", "invariants of a ring, e.g. U:3, Z:2^2, Fgamma:5^2");
  ring->add_option("ring", ring_spec)->required();

  std::string action;
  std::vector<std::string> files;
  auto* code = app.add_subcommand("code", "operations on code files: info, dual, hull, intersect, sum");
  code->add_option("action", action)->required();
  code->add_option("files", files)->required();

  std::string file1, file2;
  auto* dlip = app.add_subcommand("dlip", "analyze a pair of codes: dlip check C.json D.json");
  std::string dlip_action;
  dlip->add_option("action", dlip_action)->required()->check(CLI::IsMember({"check"}));
  dlip->add_option("c", file1)->required();
  dlip->add_option("d", file2)->required();

  CycOptions cyc;
  auto* cy = app.add_subcommand("constacyclic", "factor, towers, info, dual, intersect, mixed, lcd");
  cy->add_option("action", action)->required();
  auto add_cyc = [&](CLI::App* sub) {
    sub->add_option("--ring", cyc.ring, "chain ring")->required();
    sub->add_option("--n", cyc.n, "length, coprime to p")->required();
    sub->add_option("--lambda", cyc.lambda, "unit shift constant");
    sub->add_option("--c1", cyc.c1, "tower of factor indices, e.g. 'D0=1,2;D1=2'");
    sub->add_option("--c2", cyc.c2, "second tower");
    sub->add_flag("--unchecked", cyc.unchecked, "read --c1/--c2 as raw level polynomials 'D0;D1;...'");
  };
  add_cyc(cy);
  cy->add_option("--lambda2", cyc.lambda2, "shift constant of C2 for 'mixed'");
  cy->add_option("--poly", cyc.poly, "free generator for 'lcd'");

  std::string vec;
  auto* gray = app.add_subcommand("gray", "Gray map over Fgamma:q^2: map --ring R --vector x, image FILE");
  gray->add_option("action", action)->required();
  gray->add_option("file", file1);
  gray->add_option("--ring", ring_spec);
  gray->add_option("--vector", vec);

  EaqecOptions eo;
  auto* eaqec = app.add_subcommand("eaqec", "EAQEC parameters: lip (from LIP data) or pair (constacyclic)");
  eaqec->add_option("action", action)->required();
  eaqec->add_option("--k1", eo.k1);
  eaqec->add_option("--k2", eo.k2);
  eaqec->add_option("--ell", eo.ell);
  eaqec->add_option("--d1", eo.d1);
  eaqec->add_option("--d2", eo.d2);
  eaqec->add_option("--d1perp", eo.d1perp);
  eaqec->add_option("--q", eo.q);
  eaqec->add_option("--ring", cyc.ring);
  eaqec->add_option("--n", cyc.n);
  eaqec->add_option("--lambda", cyc.lambda);
  eaqec->add_option("--c1", cyc.c1);
  eaqec->add_option("--c2", cyc.c2);
  eaqec->add_flag("--unchecked", cyc.unchecked);

  std::vector<std::size_t> census_n;
  std::vector<std::string> census_lambda{"1"};
  std::string census_format = "csv";
  auto* census = app.add_subcommand("census", "all tower pairs with ell, dims and EAQEC parameters");
  census->add_option("--ring", ring_spec)->required();
  census->add_option("--n", census_n, "lengths")->required()->delimiter(',');
  census->add_option("--lambda", census_lambda, "shift constants")->delimiter(',');
  census->add_option("--format", census_format, "csv or json");

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "run the verification suite");
  verify->add_option("--suite", suite, "all, linalg, dlip, constacyclic, gray");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*ring) ring_info(g, ring_spec);
    else if (*code) code_cmd(g, action, files);
    else if (*dlip) dlip_cmd(g, file1, file2);
    else if (*cy) constacyclic_cmd(g, action, cyc);
    else if (*gray) gray_cmd(g, action, ring_spec, vec, file1);
    else if (*eaqec) {
      if (action == "lip" && eo.q == 0) throw Error(ErrorKind::ParseError, "'eaqec lip' needs --q");
      eo.n = static_cast<int>(cyc.n);
      eaqec_cmd(g, action, eo, cyc);
    } else if (*census) census_cmd(g, ring_spec, census_n, census_lambda, census_format);
    else if (*verify) verify_cmd(g, suite);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::ClosureTooLarge: return 3;
      case ErrorKind::ParseError:
      case ErrorKind::IoError: return 2;
      default: return 1;
    }
  }
  return g_status;
}
