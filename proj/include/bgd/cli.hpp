#pragma once

// Command-line driver. Every command except gen prints a certificate: the
// input digests, every axiom checked with its first witness, derived facts,
// derived documents, and a verdict. Exit codes: 0 pass, 1 axiom failure,
// 2 input error.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace bgd {

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view bytes);

}  // namespace bgd
