#pragma once

#include <cstddef>
#include <deque>
#include <functional>
#include <string>
#include <string_view>

namespace qsym {

/// Outcome of one axiom family: how many cases were examined and, on
/// failure, the first witness found.
struct CheckResult {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::string witness;
  /// Set when a hypothesis did not hold; witness then says which.
  bool skipped = false;

  void skip(std::string reason) {
    skipped = true;
    witness = std::move(reason);
  }

  /// Records one case; the witness text is only built for the first failure.
  void record(bool ok, const std::function<std::string()>& witness_text) {
    ++cases;
    if (!ok && passed) {
      passed = false;
      witness = witness_text();
    }
  }
};

struct ValidationReport {
  std::string subject;
  /// A deque so references returned by add() stay valid.
  std::deque<CheckResult> checks;

  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  /// Throws std::out_of_range for an unknown check name.
  const CheckResult& at(std::string_view name) const;
  CheckResult& add(std::string name) {
    CheckResult c;
    c.name = std::move(name);
    checks.push_back(std::move(c));
    return checks.back();
  }
};

}  // namespace qsym
