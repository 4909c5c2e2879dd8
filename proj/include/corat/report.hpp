#pragma once
#include <optional>
#include <string>
#include <vector>

namespace corat {

// Outcome of checking one law of a structure.  `witness` is only set on
// failure and names a concrete place where the two sides disagree, e.g.
// which source generator maps to different elements.
struct LawResult {
  std::string law;
  bool ok = false;
  std::optional<std::string> witness;
};

// Collected results for all laws of one structure check.
struct Report {
  std::vector<LawResult> laws;

  void add(std::string law, bool ok, std::optional<std::string> witness = std::nullopt) {
    laws.push_back({std::move(law), ok, std::move(witness)});
  }
  bool ok() const {
    for (const auto& l : laws)
      if (!l.ok) return false;
    return true;
  }
  const LawResult* first_failure() const {
    for (const auto& l : laws)
      if (!l.ok) return &l;
    return nullptr;
  }
};

}  // namespace corat
