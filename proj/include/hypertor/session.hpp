#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hypertor/script.hpp"

namespace hypertor {

inline constexpr const char* kEngineVersion = "hypertor 0.4.0";

struct SessionOptions {
  /// "Q" or "F(p)"; replaces the field of every ring declaration.
  std::optional<std::string> field;
  /// wgrevlex, grevlex or lex.
  std::optional<std::string> order;
  /// Resolution window for commands that do not take one explicitly.
  std::optional<std::size_t> maxSteps;
  std::uint64_t seed = 1;
};

struct ResultDocument {
  /// Canonical echo of the command, re-parseable under the same ring.
  std::string command;
  /// {field, vars, weights, f, order}
  nlohmann::json ring;
  nlohmann::json payload;
  std::string engineVersion = kEngineVersion;

  nlohmann::json toJson() const;
  static ResultDocument fromJson(const nlohmann::json& j);
};

/// Error document {kind, message, line, column}.
nlohmann::json errorJson(const Error& e);

/// Human-readable rendering of one result.
std::string formatText(const ResultDocument& doc);

/// Executes statements one at a time against a single active ring.
class Session {
 public:
  explicit Session(SessionOptions options = {});
  ~Session();
  Session(Session&&) noexcept;
  Session& operator=(Session&&) noexcept;

  /// Ring declarations and bindings yield nothing; commands yield one document.
  /// Engine errors are rethrown as ScriptError at the statement's location.
  std::optional<ResultDocument> execute(const Statement& statement);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::vector<ResultDocument> runScript(const SessionScript& script, const SessionOptions& options = {});

}  // namespace hypertor
