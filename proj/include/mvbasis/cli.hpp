#pragma once

// Command-line front end. Everything except argv handling lives here so the tests
// can drive the commands in-process and inspect stdout, stderr and the exit code.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "mvbasis/report.hpp"
#include "mvbasis/tensor_vector.hpp"
#include "mvbasis/word.hpp"

namespace mvbasis::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failed = 1;
inline constexpr int exit_usage = 2;

/// A formal sum such as "x:-+ + 2*x:+-", "-1/2*y:+-" or "0". Terms are separated by a
/// '+' or '-' standing on its own between blanks. All terms must share one basis and
/// one length; `n`, when given, must match it and fixes the length of "0".
/// Throws ParseError.
TensorVector parse_vector_spec(std::string_view text, std::optional<std::size_t> n = std::nullopt);

nlohmann::ordered_json terms_json(const TensorVector& v);
nlohmann::ordered_json vector_json(const TensorVector& v);
nlohmann::ordered_json factorization_json(const Factorization& f);
nlohmann::ordered_json report_json(const Report& r);

/// One of words, basis, rep, charts, theorem; anything else throws ParseError.
Report run_suite(const std::string& suite, std::size_t n_max, std::uint64_t seed, unsigned threads);

/// Runs the command line; argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mvbasis::cli
