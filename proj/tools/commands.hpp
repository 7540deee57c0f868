#pragma once

#include <optional>
#include <string>

#include <json.hpp>

namespace qsym::cli {

struct Options {
  std::string command;
  std::string spec_path;
  std::optional<std::size_t> max_degree;
  std::optional<std::size_t> degree;
  std::optional<std::size_t> cap;
  bool parallel = false;
  bool timing = false;
};

enum Exit : int { ok = 0, failed = 1, bad_input = 2, resource = 3 };

struct Outcome {
  nlohmann::ordered_json report;
  std::string table;
  int exit_code = ok;
};

/// Runs one command. Never throws for bad specs or failed checks; those are
/// reported in the outcome.
Outcome run(const Options& o);

}  // namespace qsym::cli
