#pragma once

// Front end shared by the `qhb` executable and the CLI tests.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qhb/classify.hpp"
#include "qhb/errors.hpp"

namespace qhb::cli {

/// `b;a1/b1,...` | `[a1,...,an]` | `p/q`
using ParsedInput = std::variant<SeifertInvariants, WeightString, LensSpace>;

/// Throws SyntaxError with the byte offset of the first bad character.
/// Arithmetic validity (coprimality, q < p) is left to the value types,
/// which throw DomainError.
ParsedInput parse_input(std::string_view text);

enum class Format { Text, Json };

struct RunConfig {
  std::uint64_t max_nodes = SearchLimits{}.max_nodes;
  std::optional<std::int64_t> coordinate_bound;
  unsigned threads = 1;
  Format format = Format::Text;
  /// Empty means: $QHB_FAMILIES, then the installed asset, then the source tree.
  std::filesystem::path families;

  SearchLimits limits() const;
};

/// Exit codes. Verdict-bearing commands use Yes/No; errors map by kind.
namespace exit_code {
inline constexpr int yes = 0;
inline constexpr int no = 1;
inline constexpr int out_of_scope = 2;
inline constexpr int usage = 3;
inline constexpr int domain = 4;
inline constexpr int not_qhs = 5;
inline constexpr int resource = 6;
inline constexpr int data_asset = 7;
inline constexpr int internal = 8;
}  // namespace exit_code

int exit_code_for(ErrorKind kind);

struct RunResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

/// Runs one command line (without the program name). `stdin_text` feeds
/// batch mode, selected by the input `-`.
RunResult run(const std::vector<std::string>& args, std::string_view stdin_text = {});

/// JSON schema identifier written to every JSON document.
inline constexpr std::string_view schema_version = "qhb.cli/1";

}  // namespace qhb::cli
