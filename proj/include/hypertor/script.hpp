#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hypertor/errors.hpp"
#include "hypertor/polynomial.hpp"

namespace hypertor {

struct SourceLocation {
  int line = 1;
  int column = 1;
};

/// Polynomial literal, normalized at parse time against the active ring's
/// variables so printing and re-parsing give the same terms.
struct PolyLiteral {
  std::vector<RationalTerm> terms;
  bool operator==(const PolyLiteral&) const = default;
};

struct MatrixLiteral {
  std::vector<std::vector<PolyLiteral>> rows;
  bool operator==(const MatrixLiteral&) const = default;
};

enum class ModuleKind { Name, Ideal, Coker, Image, DirSum, Tensor, Free };

struct ModuleExpr {
  ModuleKind kind = ModuleKind::Name;
  std::string name;
  std::vector<PolyLiteral> ideal;
  MatrixLiteral matrix;
  std::vector<ModuleExpr> parts;
  std::size_t rank = 0;
  SourceLocation location;

  /// Structural equality; locations are ignored.
  bool operator==(const ModuleExpr& other) const {
    return kind == other.kind && name == other.name && ideal == other.ideal && matrix == other.matrix &&
           parts == other.parts && rank == other.rank;
  }
};

struct CommandArg {
  std::variant<ModuleExpr, std::int64_t, MatrixLiteral> value;
  SourceLocation location;
  bool operator==(const CommandArg& other) const { return value == other.value; }
};

struct RingDecl {
  std::string name;
  /// 0 for Q.
  std::uint32_t characteristic = 0;
  std::vector<std::string> variables;
  std::vector<int> weights;
  std::optional<PolyLiteral> equation;
  bool operator==(const RingDecl&) const = default;
};

struct Binding {
  std::string name;
  ModuleExpr module;
  bool operator==(const Binding&) const = default;
};

struct Command {
  std::string name;
  std::vector<CommandArg> args;
  bool operator==(const Command&) const = default;
};

struct Statement {
  std::variant<RingDecl, Binding, Command> body;
  SourceLocation location;
  bool operator==(const Statement& other) const { return body == other.body; }
};

struct SessionScript {
  std::vector<Statement> statements;
  bool operator==(const SessionScript&) const = default;
};

/// Names of the supported commands.
const std::vector<std::string>& commandNames();

/// A parse failure (SyntaxError, UnboundName or RingMismatch) with the
/// position and text of the offending token.
class ScriptError : public Error {
 public:
  ScriptError(ErrorKind kind, const std::string& message, SourceLocation location, std::string token);
  const SourceLocation& location() const noexcept { return location_; }
  const std::string& token() const noexcept { return token_; }

 private:
  SourceLocation location_;
  std::string token_;
};

/// Parses a script; throws ScriptError.
SessionScript parseScript(std::string_view text);

std::string printPolynomial(const PolyLiteral& p, const std::vector<std::string>& variables);
std::string printModule(const ModuleExpr& m, const std::vector<std::string>& variables);
std::string printCommand(const Command& c, const std::vector<std::string>& variables);
std::string printRing(const RingDecl& r);
/// Canonical script text, one statement per line.
std::string printScript(const SessionScript& s);

}  // namespace hypertor
