#pragma once

#include "afx/linalg/json_io.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace afx::cli {

inline constexpr int kExitCertified = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitUnknown = 2;

extern const char* const kToolVersion;

/// Lowercase hex SHA-256.
std::string sha256_hex(const std::string& bytes);

/// "sha256:<hex>" of the compact serialization of the parsed document, so
/// whitespace and formatting do not change the digest.
std::string input_digest(const json& doc);

/// Runs one command line (without the program name). Documents go to `out`
/// unless --out is given; diagnostics go to `err`. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace afx::cli
