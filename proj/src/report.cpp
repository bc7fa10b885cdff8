#include "loopforge/report.hpp"

namespace loopforge {

CheckRecord CheckRecord::direct(std::string name, bool holds,
                                std::uint64_t assignments,
                                std::optional<std::string> witness) {
  CheckRecord r;
  r.name = std::move(name);
  r.holds = holds;
  r.assignments = assignments;
  r.witness = std::move(witness);
  return r;
}

CheckRecord CheckRecord::from_eval(std::string name, const CheckResult& res) {
  CheckRecord r;
  r.name = std::move(name);
  r.holds = res.holds;
  if (res.witness) r.witness = res.witness->to_string();
  r.assignments = res.assignments_checked;
  r.mode = res.mode.to_string();
  if (res.mode.kind == EvalMode::Kind::Sample) r.seed = res.mode.seed;
  return r;
}

void Report::info(const std::string& name, bool value,
                  std::optional<std::string> detail) {
  CheckRecord r;
  r.name = "info:" + name;
  r.holds = value;
  r.witness = std::move(detail);
  checks.push_back(std::move(r));
}

bool Report::all_hold() const {
  for (const auto& c : checks)
    if (!c.informational() && !c.holds) return false;
  return true;
}

}  // namespace loopforge
