#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "qsym/couple.hpp"

namespace qsym::cli {

/// A spec file that does not parse or does not describe a valid couple.
/// `where` is a JSON pointer, or "line L, column C" for syntax errors (the
/// last character the parser read).
struct SpecError : std::runtime_error {
  SpecError(std::string where, const std::string& what)
      : std::runtime_error(where + ": " + what), where(std::move(where)) {}
  std::string where;
};

struct Spec {
  Field field = Field::rationals();
  Couple couple;
  std::optional<CouplePairing> pairing;
  std::size_t max_degree = 4;
  std::size_t cap = 100000;
  std::int64_t radius = 1;
  /// Display names of the letters (diagonal couples).
  std::vector<std::string> letters;
};

Spec parse_spec(const nlohmann::json& j);
Spec load_spec(const std::string& path);

}  // namespace qsym::cli
