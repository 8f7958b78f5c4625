#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dihsum::cli {

using Range = std::pair<std::uint64_t, std::uint64_t>;

struct ExperimentConfig {
  std::string command;
  std::string group;
  std::optional<std::uint64_t> m;
  std::optional<Range> m_range;
  std::optional<Range> k_range;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
  std::uint64_t budget = 1'000'000'000;
  std::string out;
  std::string format = "csv";
  std::string mode = "auto";
  bool no_header = false;
  std::optional<std::uint64_t> n;
  std::uint64_t m_max = 300;
  std::uint64_t step = 1;
  std::uint64_t j = 1;
  std::optional<std::vector<std::uint64_t>> window;  // n, m, j
  std::optional<std::string> subset;

  bool operator==(const ExperimentConfig&) const = default;
};

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kBudget = 3 };

struct ParseResult {
  std::optional<ExperimentConfig> config;
  int exit_code = kOk;   // meaningful when config is empty
  std::string message;  // help or error text
};

ParseResult parse_config(const std::vector<std::string>& args);

/// Arguments (without the program name) that parse back to `config`.
std::vector<std::string> render_config(const ExperimentConfig& config);

Range parse_range(const std::string& text);

int run(ExperimentConfig config, std::ostream& out, std::ostream& err);

int run_verify(std::ostream& out, unsigned threads);

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dihsum::cli
