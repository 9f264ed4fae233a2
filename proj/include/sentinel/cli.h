#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace sentinel::cli {

struct SimulateArgs {
  int eas{0};
  int runs{30};
  std::uint64_t seed{1};
  std::optional<std::filesystem::path> config;
  std::optional<std::filesystem::path> out;
  std::optional<std::filesystem::path> frames;
  bool failsafe{false};
};

struct AggregateArgs {
  std::vector<std::filesystem::path> inputs;
  bool verify{false};
};

struct RenderArgs {
  std::filesystem::path world;
  std::filesystem::path out;
};

using Command = std::variant<SimulateArgs, AggregateArgs, RenderArgs>;

class UsageError : public std::runtime_error {
 public:
  UsageError(const std::string& message, std::string help)
      : std::runtime_error(message), help_(std::move(help)) {}
  const std::string& help() const { return help_; }

 private:
  std::string help_;
};

/// Raised by parse_args for -h/--help; carries the text to print.
class HelpRequested : public std::runtime_error {
 public:
  explicit HelpRequested(const std::string& help) : std::runtime_error(help) {}
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntimeError = 1;
inline constexpr int kExitUsage = 2;

/// `args` excludes the program name. Throws UsageError or HelpRequested.
Command parse_args(const std::vector<std::string>& args);

/// Batch worker count from SENTINEL_THREADS; 0 (auto) when unset or invalid.
unsigned threads_from_env();

int run(const Command& command, std::ostream& out, std::ostream& err);

int main_entry(int argc, char** argv);

}  // namespace sentinel::cli
