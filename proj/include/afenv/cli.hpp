#ifndef AFENV_CLI_HPP
#define AFENV_CLI_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>

namespace afenv::cli {

enum class Verb { Validate, Decide, Telescope, Diagram, Envelope, Witness, Probe, Roundtrip, Norms };
enum class Format { Json, Dot };

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRejected = 2;

struct Command {
  Verb verb = Verb::Validate;
  std::filesystem::path input_path;
  double tol = 1e-9;
  int trials = 500;
  std::uint64_t seed = 0;
  Format format = Format::Json;
  std::optional<std::pair<int, int>> m_range;
  std::optional<std::filesystem::path> out_dir;
};

std::optional<Verb> parse_verb(const std::string& name);
/// "a..b" or "a". Returns nullopt for anything else.
std::optional<std::pair<int, int>> parse_range(const std::string& text);

/// Runs one command. Artifacts go to `out` (and to out_dir when set),
/// errors to `err` as a JSON object. Returns the exit status.
int run(const Command& cmd, std::ostream& out, std::ostream& err);

/// Parses argv (honouring AFENV_SEED) and runs the command.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace afenv::cli

#endif  // AFENV_CLI_HPP
