#include "dlip/io.hpp"

#include <fstream>

namespace dlip {

namespace {

Elem element_from_json(const Ring& r, const nlohmann::json& e) {
  if (e.is_string()) return r.parse_element(e.get<std::string>());
  if (e.is_number_integer()) return r.from_int(e.get<long long>());
  throw Error(ErrorKind::ParseError, "element must be a string or an integer, got " + e.dump());
}

template <class T>
T field(const nlohmann::json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw Error(ErrorKind::ParseError, std::string("missing field '") + name + "'");
  try {
    return j.at(name).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("field '") + name + "': " + e.what());
  }
}

void check_version(const nlohmann::json& j) {
  if (j.is_object() && j.contains("version") && j["version"] != kSchemaVersion)
    throw Error(ErrorKind::ParseError, "unsupported schema version " + j["version"].dump());
}

}  // namespace

Code code_from_json(const nlohmann::json& j, std::uint64_t bound) {
  check_version(j);
  const RingPtr r = Ring::parse(field<std::string>(j, "ring"));
  const auto n = field<std::size_t>(j, "n");
  const auto gens = field<nlohmann::json>(j, "generators");
  if (!gens.is_array()) throw Error(ErrorKind::ParseError, "generators must be a list of rows");
  std::vector<Vector> rows;
  for (const auto& row : gens) {
    if (!row.is_array() || row.size() != n)
      throw Error(ErrorKind::ParseError, "generator row " + row.dump() + " does not have length " + std::to_string(n));
    Vector v;
    for (const auto& e : row) v.push_back(element_from_json(*r, e));
    rows.push_back(std::move(v));
  }
  if (rows.empty()) return Code::zero(r, n, bound);
  return Code(Matrix::from_rows(r, n, rows), bound);
}

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.ring()->format(m.at(i, j)));
    rows.push_back(row);
  }
  return rows;
}

nlohmann::json code_to_json(const Code& c) {
  return {{"version", kSchemaVersion}, {"ring", c.ring()->name()}, {"n", c.length()},
          {"generators", matrix_to_json(c.generators())}};
}

Code read_code_file(const std::string& path, std::uint64_t bound) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot read " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
  return code_from_json(j, bound);
}

void write_code_file(const std::string& path, const Code& c) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path);
  out << code_to_json(c).dump(2) << '\n';
  if (!out) throw Error(ErrorKind::IoError, "write failed for " + path);
}

ConstacyclicCode constacyclic_from_json(const nlohmann::json& j) {
  check_version(j);
  const RingPtr r = Ring::parse(field<std::string>(j, "ring"));
  const auto n = field<std::size_t>(j, "n");
  if (!j.contains("lambda")) throw Error(ErrorKind::ParseError, "missing field 'lambda'");
  const auto ctx = ConstacyclicContext::get(r, n, element_from_json(*r, j["lambda"]));
  return parse_tower(ctx, field<std::string>(j, "tower"));
}

nlohmann::json constacyclic_to_json(const ConstacyclicCode& c) {
  const auto& ctx = *c.ctx;
  nlohmann::json factors = nlohmann::json::array();
  for (const auto& f : ctx.factors()) factors.push_back(f.format());
  return {{"version", kSchemaVersion},
          {"ring", ctx.ring()->name()},
          {"n", ctx.n()},
          {"lambda", ctx.ring()->format(ctx.lambda())},
          {"tower", format_tower(c)},
          {"factors", factors},
          {"generators", format_generators(c)}};
}

nlohmann::json poly_to_json(const Poly& p) {
  nlohmann::json out = nlohmann::json::array();
  for (Elem e : p.coeffs()) out.push_back(p.ring()->format(e));
  return out;
}

}  // namespace dlip
