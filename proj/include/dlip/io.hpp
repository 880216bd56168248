#pragma once

#include <string>

#include "dlip/constacyclic.hpp"
#include "json.hpp"

namespace dlip {

/// Version stamped into every machine-readable document.
inline constexpr int kSchemaVersion = 1;

/// {"version": 1, "ring": "Z:2^2", "n": 2, "generators": [["1", "2"], ...]}.
/// Elements may be given as strings in the ring's element syntax or as
/// integers. ParseError on malformed input.
Code code_from_json(const nlohmann::json& j, std::uint64_t bound = kDefaultOracleBound);
nlohmann::json code_to_json(const Code& c);

/// IoError if the file cannot be read or written.
Code read_code_file(const std::string& path, std::uint64_t bound = kDefaultOracleBound);
void write_code_file(const std::string& path, const Code& c);

/// {"version": 1, "ring", "n", "lambda", "tower": "D0=1,2;D1=2"}.
ConstacyclicCode constacyclic_from_json(const nlohmann::json& j);
nlohmann::json constacyclic_to_json(const ConstacyclicCode& c);

/// Ascending coefficient list of element strings.
nlohmann::json poly_to_json(const Poly& p);

nlohmann::json matrix_to_json(const Matrix& m);

}  // namespace dlip
