#pragma once

// Uniform check records shared by every verification suite and the CLI
// report emitter. A record whose name starts with "info:" documents context
// (a hypothesis value, a per-reading observation) and does not gate the
// pass/fail outcome.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "loopforge/identity.hpp"

namespace loopforge {

struct CheckRecord {
  std::string name;
  bool holds = true;
  std::optional<std::string> witness;
  std::uint64_t assignments = 0;
  std::string mode = "direct";
  std::optional<std::uint64_t> seed;

  bool informational() const { return name.rfind("info:", 0) == 0; }

  static CheckRecord direct(std::string name, bool holds,
                            std::uint64_t assignments = 0,
                            std::optional<std::string> witness = {});
  static CheckRecord from_eval(std::string name, const CheckResult& r);
};

struct Report {
  std::string title;
  std::vector<CheckRecord> checks;

  void add(CheckRecord r) { checks.push_back(std::move(r)); }
  void info(const std::string& name, bool value,
            std::optional<std::string> detail = {});

  // True when every non-informational record holds.
  bool all_hold() const;
};

}  // namespace loopforge
