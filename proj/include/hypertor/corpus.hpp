#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hypertor/session.hpp"

namespace hypertor {

/// Paths where `expected` differs from `actual`. Objects in `expected` need only
/// name a subset of the keys; arrays must match in length and element-wise.
std::vector<std::string> structuralDiff(const nlohmann::json& expected, const nlohmann::json& actual,
                                        const std::string& path = "");

struct CorpusCase {
  std::string name;
  std::filesystem::path script;
  std::filesystem::path golden;
  std::vector<std::string> tags;
};

struct CaseOutcome {
  std::string name;
  std::vector<std::string> tags;
  bool passed = false;
  std::vector<std::string> diffs;
  double seconds = 0;
};

struct CorpusSummary {
  std::vector<CaseOutcome> cases;
  std::size_t passed() const;
  std::size_t failed() const;
  bool ok() const { return failed() == 0; }
  nlohmann::json toJson() const;
};

std::filesystem::path defaultCorpusDir();

/// Every `NAME.hsl` with a `NAME.golden.json` beside it, sorted by name.
std::vector<CorpusCase> listCorpus(const std::filesystem::path& dir = defaultCorpusDir());

/// Runs one case and compares its documents (and expected error, if any) with the golden file.
CaseOutcome runCase(const CorpusCase& c, const SessionOptions& options = {});

/// Runs the cases carrying `tag` (all when absent).
CorpusSummary corpusRun(const std::optional<std::string>& tag = std::nullopt,
                        const std::filesystem::path& dir = defaultCorpusDir(), const SessionOptions& options = {});

}  // namespace hypertor
