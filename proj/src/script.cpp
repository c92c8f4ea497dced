#include "hypertor/script.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace hypertor {

ScriptError::ScriptError(ErrorKind kind, const std::string& message, SourceLocation location, std::string token)
    : Error(kind, std::to_string(location.line) + ":" + std::to_string(location.column) + ": " + message),
      location_(location), token_(std::move(token)) {}

namespace {

struct Arity {
  std::size_t min, max;
};

const std::map<std::string, Arity>& arities() {
  static const std::map<std::string, Arity> table{
      {"theta", {2, 2}},          {"chi", {2, 3}},           {"tor_table", {3, 3}},     {"resolve", {1, 2}},
      {"mf", {1, 1}},             {"depth", {1, 1}},         {"depth_formula", {2, 3}}, {"decency", {2, 2}},
      {"rigidity_probe", {3, 3}}, {"sing", {0, 0}},          {"ipd", {1, 1}},           {"frob_tor", {3, 3}},
      {"verify_exact", {1, 64}},  {"length", {1, 1}},        {"dim", {1, 1}},           {"serre_suite", {1, 1}},
  };
  return table;
}

const std::set<std::string> kKeywords{"ring", "ideal", "coker", "image", "dirsum", "tensor", "free"};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  SessionScript run() {
    SessionScript script;
    skip();
    while (pos_ < text_.size()) {
      script.statements.push_back(statement());
      skip();
      if (pos_ < text_.size() && text_[pos_] == ';') {
        ++pos_;
      } else if (pos_ < text_.size()) {
        fail("expected ';'");
      }
      skip();
    }
    return script;
  }

 private:
  SourceLocation locate(std::size_t offset) const {
    SourceLocation loc;
    for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++loc.line;
        loc.column = 1;
      } else {
        ++loc.column;
      }
    }
    return loc;
  }

  std::string tokenAt(std::size_t offset) const {
    if (offset >= text_.size()) return "end of input";
    std::size_t end = offset;
    if (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_') {
      while (end < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) ++end;
    } else {
      ++end;
    }
    return std::string(text_.substr(offset, end - offset));
  }

  [[noreturn]] void fail(const std::string& message, ErrorKind kind = ErrorKind::SyntaxError) const {
    failAt(pos_, message, kind);
  }

  [[noreturn]] void failAt(std::size_t offset, const std::string& message,
                           ErrorKind kind = ErrorKind::SyntaxError) const {
    throw ScriptError(kind, message, locate(offset), tokenAt(offset));
  }

  void skip() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  bool peekIdentifier() {
    skip();
    return pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_');
  }

  std::string identifier() {
    skip();
    if (!peekIdentifier()) fail("expected a name");
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::int64_t integer() {
    skip();
    std::size_t start = pos_;
    bool negative = false;
    if (pos_ < text_.size() && text_[pos_] == '-') {
      negative = true;
      ++pos_;
    }
    std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (digits == pos_ || pos_ - digits > 12) failAt(start, "expected an integer");
    std::int64_t v = std::stoll(std::string(text_.substr(digits, pos_ - digits)));
    return negative ? -v : v;
  }

  // Polynomial text up to a top-level ',', ')', ']' or ';'.
  PolyLiteral polynomial() {
    skip();
    std::size_t start = pos_;
    int depth = 0;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '(') ++depth;
      else if (c == ')') {
        if (depth == 0) break;
        --depth;
      } else if ((c == ',' || c == ']' || c == ';') && depth == 0) {
        break;
      } else if (c == '#' || c == '[') {
        break;
      }
      ++pos_;
    }
    std::string_view body = text_.substr(start, pos_ - start);
    if (std::all_of(body.begin(), body.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }))
      failAt(start, "expected a polynomial");
    try {
      return PolyLiteral{parsePolynomialText(body, variables_)};
    } catch (const PolynomialParseError& e) {
      failAt(start + e.offset, e.message, e.unknownName ? ErrorKind::UnboundName : ErrorKind::SyntaxError);
    }
  }

  MatrixLiteral matrix() {
    MatrixLiteral m;
    expect('[');
    do {
      expect('[');
      std::vector<PolyLiteral> row;
      do {
        row.push_back(polynomial());
      } while (accept(','));
      expect(']');
      if (!m.rows.empty() && row.size() != m.rows.front().size()) fail("matrix rows have different lengths");
      m.rows.push_back(std::move(row));
    } while (accept(','));
    expect(']');
    return m;
  }

  void requireRing(std::size_t at) const {
    if (!ringActive_) failAt(at, "no ring has been declared");
  }

  ModuleExpr module() {
    skip();
    std::size_t start = pos_;
    ModuleExpr m;
    m.location = locate(start);
    if (!peekIdentifier()) fail("expected a module");
    std::string word = identifier();
    if (word == "ideal") {
      m.kind = ModuleKind::Ideal;
      expect('(');
      if (!accept(')')) {
        do {
          m.ideal.push_back(polynomial());
        } while (accept(','));
        expect(')');
      }
    } else if (word == "coker" || word == "image") {
      m.kind = word == "coker" ? ModuleKind::Coker : ModuleKind::Image;
      m.matrix = matrix();
    } else if (word == "dirsum" || word == "tensor") {
      m.kind = word == "dirsum" ? ModuleKind::DirSum : ModuleKind::Tensor;
      expect('(');
      do {
        m.parts.push_back(module());
      } while (accept(','));
      expect(')');
      if (m.parts.size() < 2) failAt(start, word + " needs at least two factors");
    } else if (word == "free") {
      m.kind = ModuleKind::Free;
      expect('(');
      std::size_t at = pos_;
      auto n = integer();
      if (n < 0) failAt(at, "free rank must be nonnegative");
      m.rank = static_cast<std::size_t>(n);
      expect(')');
    } else {
      m.kind = ModuleKind::Name;
      m.name = word;
      auto it = bound_.find(word);
      if (it == bound_.end()) failAt(start, "unbound module name '" + word + "'", ErrorKind::UnboundName);
      if (it->second != ringName_)
        failAt(start, "module '" + word + "' was bound over ring " + it->second + ", not " + ringName_,
               ErrorKind::RingMismatch);
    }
    requireRing(start);
    return m;
  }

  CommandArg argument() {
    skip();
    CommandArg a;
    a.location = locate(pos_);
    if (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '-')) {
      a.value = integer();
    } else if (pos_ < text_.size() && text_[pos_] == '[') {
      a.value = matrix();
    } else {
      a.value = module();
    }
    return a;
  }

  RingDecl ring() {
    RingDecl r;
    std::size_t nameAt = pos_;
    r.name = identifier();
    if (kKeywords.count(r.name)) failAt(nameAt, "'" + r.name + "' is reserved");
    expect('=');
    skip();
    std::size_t fieldAt = pos_;
    std::string field = identifier();
    if (field == "Q") {
      r.characteristic = 0;
    } else if (field == "F") {
      expect('(');
      std::size_t at = pos_;
      auto p = integer();
      if (p < 2 || p >= (1ll << 31) || !isPrime(static_cast<std::uint64_t>(p)))
        failAt(at, "F(p) needs a prime p below 2^31");
      r.characteristic = static_cast<std::uint32_t>(p);
      expect(')');
    } else {
      failAt(fieldAt, "expected Q or F(p)");
    }
    expect('[');
    do {
      std::size_t at = pos_;
      std::string v = identifier();
      if (kKeywords.count(v)) failAt(at, "'" + v + "' is reserved");
      if (std::find(r.variables.begin(), r.variables.end(), v) != r.variables.end())
        failAt(at, "duplicate variable '" + v + "'");
      r.variables.push_back(v);
    } while (accept(','));
    if (r.variables.size() > kMaxVariables) fail("at most 16 variables are supported");
    if (accept(':')) {
      do {
        std::size_t at = pos_;
        auto w = integer();
        if (w <= 0 || w > 1000) failAt(at, "weights must be positive");
        r.weights.push_back(static_cast<int>(w));
      } while (accept(','));
      if (r.weights.size() != r.variables.size()) fail("weight count does not match variable count");
    }
    expect(']');
    variables_ = r.variables;
    if (accept('/')) {
      expect('(');
      r.equation = polynomial();
      expect(')');
    }
    if (r.weights.empty()) r.weights.assign(r.variables.size(), 1);
    ringActive_ = true;
    ringName_ = r.name;
    return r;
  }

  Statement statement() {
    skip();
    Statement s;
    std::size_t start = pos_;
    s.location = locate(start);
    std::string head = identifier();
    if (head == "ring") {
      s.body = ring();
      return s;
    }
    if (accept('=')) {
      if (kKeywords.count(head)) failAt(start, "'" + head + "' is reserved");
      if (arities().count(head)) failAt(start, "'" + head + "' is a command name");
      requireRing(start);
      Binding b{head, module()};
      bound_[head] = ringName_;
      s.body = std::move(b);
      return s;
    }
    auto it = arities().find(head);
    if (it == arities().end()) failAt(start, "unknown command '" + head + "'");
    requireRing(start);
    Command c;
    c.name = head;
    expect('(');
    if (!accept(')')) {
      do {
        c.args.push_back(argument());
      } while (accept(','));
      expect(')');
    }
    if (c.args.size() < it->second.min || c.args.size() > it->second.max)
      failAt(start, head + " takes " + std::to_string(it->second.min) +
                        (it->second.max != it->second.min ? ".." + std::to_string(it->second.max) : "") +
                        " arguments, got " + std::to_string(c.args.size()));
    s.body = std::move(c);
    return s;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<std::string> variables_;
  bool ringActive_ = false;
  std::string ringName_;
  std::map<std::string, std::string> bound_;
};

std::string printMatrix(const MatrixLiteral& m, const std::vector<std::string>& vars) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.rows.size(); ++i) {
    out += i ? ", [" : "[";
    for (std::size_t j = 0; j < m.rows[i].size(); ++j) out += (j ? ", " : "") + printPolynomial(m.rows[i][j], vars);
    out += "]";
  }
  return out + "]";
}

}  // namespace

const std::vector<std::string>& commandNames() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [k, v] : arities()) out.push_back(k);
    return out;
  }();
  return names;
}

SessionScript parseScript(std::string_view text) { return Parser(text).run(); }

std::string printPolynomial(const PolyLiteral& p, const std::vector<std::string>& variables) {
  return formatRationalTerms(p.terms, variables);
}

std::string printModule(const ModuleExpr& m, const std::vector<std::string>& variables) {
  switch (m.kind) {
    case ModuleKind::Name: return m.name;
    case ModuleKind::Ideal: {
      std::string out = "ideal(";
      for (std::size_t i = 0; i < m.ideal.size(); ++i) out += (i ? ", " : "") + printPolynomial(m.ideal[i], variables);
      return out + ")";
    }
    case ModuleKind::Coker: return "coker " + printMatrix(m.matrix, variables);
    case ModuleKind::Image: return "image " + printMatrix(m.matrix, variables);
    case ModuleKind::DirSum:
    case ModuleKind::Tensor: {
      std::string out = m.kind == ModuleKind::DirSum ? "dirsum(" : "tensor(";
      for (std::size_t i = 0; i < m.parts.size(); ++i) out += (i ? ", " : "") + printModule(m.parts[i], variables);
      return out + ")";
    }
    case ModuleKind::Free: return "free(" + std::to_string(m.rank) + ")";
  }
  return "";
}

std::string printCommand(const Command& c, const std::vector<std::string>& variables) {
  std::string out = c.name + "(";
  for (std::size_t i = 0; i < c.args.size(); ++i) {
    if (i) out += ", ";
    const auto& v = c.args[i].value;
    if (auto* m = std::get_if<ModuleExpr>(&v)) out += printModule(*m, variables);
    else if (auto* n = std::get_if<std::int64_t>(&v)) out += std::to_string(*n);
    else out += printMatrix(std::get<MatrixLiteral>(v), variables);
  }
  return out + ")";
}

std::string printRing(const RingDecl& r) {
  std::string out = "ring " + r.name + " = " + (r.characteristic ? "F(" + std::to_string(r.characteristic) + ")" : "Q");
  out += "[";
  for (std::size_t i = 0; i < r.variables.size(); ++i) out += (i ? "," : "") + r.variables[i];
  if (std::any_of(r.weights.begin(), r.weights.end(), [](int w) { return w != 1; })) {
    out += " : ";
    for (std::size_t i = 0; i < r.weights.size(); ++i) out += (i ? "," : "") + std::to_string(r.weights[i]);
  }
  out += "]";
  if (r.equation) out += " / (" + printPolynomial(*r.equation, r.variables) + ")";
  return out;
}

std::string printScript(const SessionScript& s) {
  std::string out;
  std::vector<std::string> vars;
  for (const auto& st : s.statements) {
    if (auto* r = std::get_if<RingDecl>(&st.body)) {
      vars = r->variables;
      out += printRing(*r);
    } else if (auto* b = std::get_if<Binding>(&st.body)) {
      out += b->name + " = " + printModule(b->module, vars);
    } else {
      out += printCommand(std::get<Command>(st.body), vars);
    }
    out += ";\n";
  }
  return out;
}

}  // namespace hypertor
