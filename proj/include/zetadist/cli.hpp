#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "zetadist/curves.hpp"
#include "zetadist/error.hpp"

namespace zetadist::cli {

inline constexpr std::string_view kToolVersion = "0.1.0";

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInvalidCurve = 2,
  kNumeric = 3,
  kSizeGuard = 4,
};

int exit_code(ErrorKind kind);

/// A curve description read from a file, together with its canonical
/// echo {p, model, coeffs}.
struct CurveFile {
  CurveSpec curve;
  nlohmann::ordered_json echo;
};

/// Parses JSON, or TOML when `toml` is set, with the schema
///   p = <prime>, model = "elliptic" | "hyperelliptic2",
///   coeffs = {a, b} | {f = [c_0, ..., c_5 or c_6]}.
/// Unknown keys and type errors throw ParseError; the curve itself is
/// validated, so singular input throws SingularCurve and so on.
CurveFile parse_curve(std::string_view text, bool toml);

/// Reads a file; TOML when the extension is .toml, JSON otherwise.
CurveFile load_curve(const std::string& path);

/// Runs one subcommand. `args` excludes the program name. The report goes
/// to `out`, a single-line JSON error object to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zetadist::cli
