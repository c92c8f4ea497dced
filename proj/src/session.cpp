#include "hypertor/session.hpp"

#include <map>
#include <random>
#include <sstream>
#include <variant>

#include "hypertor/invariants.hpp"
#include "hypertor/module.hpp"
#include "hypertor/resolution.hpp"

namespace hypertor {

using nlohmann::json;

nlohmann::json ResultDocument::toJson() const {
  return json{{"command", command}, {"ring", ring}, {"payload", payload}, {"engineVersion", engineVersion}};
}

ResultDocument ResultDocument::fromJson(const nlohmann::json& j) {
  ResultDocument d;
  d.command = j.at("command").get<std::string>();
  d.ring = j.at("ring");
  d.payload = j.at("payload");
  d.engineVersion = j.at("engineVersion").get<std::string>();
  return d;
}

nlohmann::json errorJson(const Error& e) {
  json j{{"kind", std::string(e.kindName())}, {"message", e.what()}};
  if (auto* s = dynamic_cast<const ScriptError*>(&e)) {
    j["line"] = s->location().line;
    j["column"] = s->location().column;
  }
  return j;
}

namespace {

json torTableJson(const TorTable& t) {
  json entries = json::array();
  for (const auto& e : t.entries) {
    if (e.finite) entries.push_back({{"i", e.index}, {"length", e.length}});
    else entries.push_back({{"i", e.index}, {"posdim", e.dimension}});
  }
  json out{{"entries", entries}};
  out["fliIndex"] = t.fliIndex ? json(*t.fliIndex) : json(nullptr);
  return out;
}

std::vector<std::vector<unsigned>> exponentsOfDegree(std::size_t n, int degree) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur(n, 0);
  auto rec = [&](auto& self, std::size_t v, int left) -> void {
    if (v + 1 == n) {
      cur[v] = static_cast<unsigned>(left);
      out.push_back(cur);
      return;
    }
    for (int k = left; k >= 0; --k) {
      cur[v] = static_cast<unsigned>(k);
      self(self, v + 1, left - k);
    }
  };
  rec(rec, 0, degree);
  return out;
}

template <class T>
json optionalJson(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <class K>
json matrixJson(const PolyMatrix<K>& m) {
  return m.toStrings();
}

struct FieldChoice {
  std::uint32_t characteristic = 0;
};

template <class K>
struct Context {
  RingDecl decl;
  RingSpecPtr<K> ring;
  std::map<std::string, ModulePresentation<K>> bindings;
  ResolutionCache<K> cache;
};

template <class K>
K makeField(std::uint32_t characteristic) {
  if constexpr (std::is_same_v<K, PrimeField>) return PrimeField(characteristic);
  else return RationalField();
}

template <class K>
class Runner {
 public:
  Runner(const RingDecl& decl, const SessionOptions& options) : options_(options) {
    ctx_.decl = decl;
    TermOrder order = options.order ? TermOrder::parse(*options.order) : TermOrder();
    auto ambient = std::make_shared<const PolyRing<K>>(makeField<K>(decl.characteristic), decl.variables, decl.weights,
                                                       order);
    std::optional<Polynomial<K>> f;
    if (decl.equation) f = Polynomial<K>::fromRationalTerms(ambient, decl.equation->terms);
    ctx_.ring = std::make_shared<const RingSpec<K>>(ambient, f);
    const auto& eq = ctx_.ring->equation();
    ringJson_ = json{{"field", ambient->field().name()},
                     {"vars", decl.variables},
                     {"weights", ambient->weights()},
                     {"f", eq.isZero() ? json(nullptr) : json(eq.toString())},
                     {"order", order.name()}};
  }

  const json& ringJson() const { return ringJson_; }

  void bind(const Binding& b) { ctx_.bindings.insert_or_assign(b.name, module(b.module)); }

  json run(const Command& c) {
    const std::string& name = c.name;
    if (name == "theta") {
      auto r = theta(module(c, 0), module(c, 1), &ctx_.cache);
      std::size_t odd = 2 * r.eUsed + 1;
      json evidence = json::array({json{{"i", odd}, {"length", r.odd}}, json{{"i", odd + 1}, {"length", r.even}},
                                   json{{"i", odd + 2}, {"length", r.oddNext}},
                                   json{{"i", odd + 3}, {"length", r.evenNext}}});
      return {{"value", r.value}, {"eUsed", r.eUsed}, {"evidence", evidence}};
    }
    if (name == "chi") {
      std::size_t i = c.args.size() > 2 ? count(c, 2) : 0;
      auto r = chi(module(c, 0), module(c, 1), i);
      return {{"value", r.value}, {"startIndex", r.startIndex}, {"lengths", r.lengths}};
    }
    if (name == "tor_table") return torTableJson(torTable(module(c, 0), module(c, 1), count(c, 2), &ctx_.cache));
    if (name == "resolve") {
      std::size_t steps = c.args.size() > 1 ? count(c, 1) : window();
      auto m = module(c, 0);
      auto res = ctx_.cache.get(m, steps);
      json out{{"ranks", res->ranks()},
               {"degrees", res->degrees},
               {"finite", res->finite},
               {"projectiveDimension", optionalJson(res->projectiveDimension())},
               {"factorizationFrom", optionalJson(res->factorizationFrom)}};
      json diffs = json::array();
      for (const auto& d : res->differentials) diffs.push_back(matrixJson(d));
      out["differentials"] = diffs;
      out["periodicity"] = nullptr;
      if (ctx_.ring->isHypersurface() && !res->finite) {
        auto p = detectPeriodicity(*res);
        out["periodicity"] = {{"period", periodName(p.period)}, {"from", p.periodicFrom},
                              {"periodTwoFrom", p.periodTwoFrom}};
      }
      return out;
    }
    if (name == "mf") {
      auto res = ctx_.cache.get(module(c, 0), window());
      auto p = detectPeriodicity(*res);
      auto mf = extractMatrixFactorization(*res, p);
      return {{"a", matrixJson(mf.a)},
              {"b", matrixJson(mf.b)},
              {"f", mf.f.toString()},
              {"size", mf.a.rows()},
              {"from", p.periodicFrom},
              {"verified", isMatrixFactorization(mf.a, mf.b, mf.f)}};
    }
    if (name == "depth") return {{"depth", depth(module(c, 0))}};
    if (name == "depth_formula") {
      auto m = module(c, 0), n = module(c, 1);
      std::size_t upTo = c.args.size() > 2 ? count(c, 2) : ctx_.ring->numVars() + 2;
      auto r = checkDepthFormula(m, n, torTable(m, n, upTo, &ctx_.cache));
      return {{"depthM", r.depthM}, {"depthN", r.depthN},           {"depthR", r.depthR},
              {"depthTensor", r.depthTensor}, {"holds", r.holds}, {"window", r.window}};
    }
    if (name == "decency") {
      auto r = decencyCheck(module(c, 0), module(c, 1), &ctx_.cache);
      return {{"dimM", optionalJson(r.dimM)}, {"dimN", optionalJson(r.dimN)}, {"dimR", r.dimR},
              {"decent", r.decent},           {"theta", r.theta},             {"consistent", r.consistent}};
    }
    if (name == "rigidity_probe") {
      auto m = module(c, 0), n = module(c, 1);
      auto table = torTable(m, n, count(c, 2), &ctx_.cache);
      auto w = rigidityWitness(table);
      json out{{"witness", w ? json::array({w->first, w->second}) : json(nullptr)}};
      out["table"] = torTableJson(table);
      return out;
    }
    if (name == "sing") {
      auto r = singularLocus(*ctx_.ring);
      return {{"dimension", optionalJson(r.dimension)},
              {"isolated", r.isolated},
              {"warnings", r.warnings},
              {"jacobian", r.jacobianBasis}};
    }
    if (name == "ipd") return {{"dimension", optionalJson(ipdLocusDim(module(c, 0), &ctx_.cache))}};
    if (name == "frob_tor") {
      auto e = count(c, 1);
      if (e == 0 || e > 12) throw Error(ErrorKind::InvalidArgument, "frobenius exponent must be between 1 and 12");
      json out = torTableJson(frobeniusTorTable(module(c, 0), static_cast<unsigned>(e), count(c, 2)));
      out["e"] = e;
      return out;
    }
    if (name == "verify_exact") return verifyExactJson(c);
    if (name == "length") return {{"length", optionalJson(moduleLength(module(c, 0)))}};
    if (name == "dim") return {{"dim", optionalJson(moduleDim(module(c, 0)))}};
    if (name == "serre_suite") return serreSuite(count(c, 0));
    throw Error(ErrorKind::InvalidArgument, "unknown command '" + name + "'");
  }

 private:
  std::size_t window() const { return options_.maxSteps ? *options_.maxSteps : defaultMaxSteps(*ctx_.ring); }

  Polynomial<K> poly(const PolyLiteral& p) const {
    return Polynomial<K>::fromRationalTerms(ctx_.ring->ambient(), p.terms);
  }

  PolyMatrix<K> matrix(const MatrixLiteral& m) const {
    std::vector<std::vector<Polynomial<K>>> rows;
    for (const auto& r : m.rows) {
      rows.emplace_back();
      for (const auto& p : r) rows.back().push_back(poly(p));
    }
    return PolyMatrix<K>::fromRows(ctx_.ring->ambient(), rows);
  }

  ModulePresentation<K> module(const ModuleExpr& e) const {
    switch (e.kind) {
      case ModuleKind::Name: {
        auto it = ctx_.bindings.find(e.name);
        if (it == ctx_.bindings.end()) throw Error(ErrorKind::UnboundName, "unbound module name '" + e.name + "'");
        return it->second;
      }
      case ModuleKind::Ideal: {
        std::vector<Polynomial<K>> gens;
        for (const auto& p : e.ideal) gens.push_back(poly(p));
        return ModulePresentation<K>::quotientByIdeal(ctx_.ring, gens);
      }
      case ModuleKind::Coker: return ModulePresentation<K>::cokernel(ctx_.ring, matrix(e.matrix));
      case ModuleKind::Image: return ModulePresentation<K>::image(ctx_.ring, matrix(e.matrix));
      case ModuleKind::DirSum: {
        auto acc = module(e.parts.front());
        for (std::size_t i = 1; i < e.parts.size(); ++i)
          acc = ModulePresentation<K>::directSum(acc, module(e.parts[i]));
        return acc;
      }
      case ModuleKind::Tensor: {
        auto acc = module(e.parts.front());
        for (std::size_t i = 1; i < e.parts.size(); ++i) acc = tensorProduct(acc, module(e.parts[i]));
        return acc;
      }
      case ModuleKind::Free: return ModulePresentation<K>::free(ctx_.ring, e.rank);
    }
    throw Error(ErrorKind::InvalidArgument, "bad module expression");
  }

  ModulePresentation<K> module(const Command& c, std::size_t i) const {
    const auto* m = std::get_if<ModuleExpr>(&c.args.at(i).value);
    if (!m) throw Error(ErrorKind::InvalidArgument, c.name + ": argument " + std::to_string(i + 1) + " must be a module");
    return module(*m);
  }

  static std::size_t count(const Command& c, std::size_t i) {
    const auto* n = std::get_if<std::int64_t>(&c.args.at(i).value);
    if (!n || *n < 0 || *n > 400)
      throw Error(ErrorKind::InvalidArgument,
                  c.name + ": argument " + std::to_string(i + 1) + " must be an integer in [0, 400]");
    return static_cast<std::size_t>(*n);
  }

  json verifyExactJson(const Command& c) const {
    if (c.args.size() % 2 == 0)
      throw Error(ErrorKind::InvalidArgument, "verify_exact expects M0, [[map]], M1, ..., [[map]], Mn");
    ModuleComplex<K> complex;
    for (std::size_t i = 0; i < c.args.size(); ++i) {
      if (i % 2 == 0) {
        complex.modules.push_back(module(c, i));
      } else {
        const auto* m = std::get_if<MatrixLiteral>(&c.args[i].value);
        if (!m) throw Error(ErrorKind::InvalidArgument, "verify_exact: argument " + std::to_string(i + 1) + " must be a matrix");
        complex.maps.push_back(matrix(*m));
      }
    }
    for (std::size_t k = 0; k < complex.maps.size(); ++k)
      checkWellDefined(ModuleMap<K>{complex.modules[k], complex.modules[k + 1], complex.maps[k]});
    auto spots = verifyExact(complex);
    bool all = std::all_of(spots.begin(), spots.end(), [](bool b) { return b; });
    return {{"exactAt", spots}, {"exact", all}};
  }

  // Random pairs of quotients of the ambient polynomial ring whose tensor
  // product has finite length, checked against Serre's four statements.
  json serreSuite(std::size_t count) {
    auto s = ctx_.ring->ambientOnly();
    const auto& ring = s->ambient();
    std::size_t n = ring->numVars();
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "serre_suite needs at least two variables");
    std::mt19937_64 rng(options_.seed);
    auto randomForm = [&](int degree) {
      Polynomial<K> p = Polynomial<K>::integer(ring, 0);
      std::uniform_int_distribution<int> coeff(-3, 3);
      for (const auto& exps : exponentsOfDegree(n, degree)) {
        int c = coeff(rng);
        if (c == 0) continue;
        Polynomial<K> term = Polynomial<K>::integer(ring, c);
        for (std::size_t v = 0; v < n; ++v)
          if (exps[v]) term = term * Polynomial<K>::variable(ring, v).pow(exps[v]);
        p = p + term;
      }
      return p;
    };
    auto idealText = [](const std::vector<Polynomial<K>>& gens) {
      std::string out = "ideal(";
      for (std::size_t i = 0; i < gens.size(); ++i) out += (i ? ", " : "") + gens[i].toString();
      return out + ")";
    };
    json instances = json::array();
    json violations = json::array();
    std::size_t attempts = 0;
    while (instances.size() < count) {
      if (++attempts > 20 * count + 20) throw Error(ErrorKind::InvalidArgument, "could not generate enough pairs");
      std::uniform_int_distribution<std::size_t> pickA(1, n - 1);
      std::size_t a = pickA(rng);
      std::uniform_int_distribution<std::size_t> pickB(n - a, n);
      std::size_t b = pickB(rng);
      std::uniform_int_distribution<int> pickDeg(1, 2);
      std::vector<Polynomial<K>> gm, gn;
      if (std::bernoulli_distribution(0.25)(rng) && n >= 4) {
        // (x1, x2) intersected with (x3, x4): unmixed but not Cohen-Macaulay.
        auto x = [&](std::size_t i) { return Polynomial<K>::variable(ring, i); };
        gm = {x(0) * x(2), x(0) * x(3), x(1) * x(2), x(1) * x(3)};
        a = 2;
      } else {
        for (std::size_t i = 0; i < a; ++i) gm.push_back(randomForm(pickDeg(rng)));
      }
      for (std::size_t i = 0; i < b; ++i) gn.push_back(randomForm(pickDeg(rng)));
      if (std::any_of(gm.begin(), gm.end(), [](const auto& p) { return p.isZero(); }) ||
          std::any_of(gn.begin(), gn.end(), [](const auto& p) { return p.isZero(); }))
        continue;
      auto mm = ModulePresentation<K>::quotientByIdeal(s, gm);
      auto nn = ModulePresentation<K>::quotientByIdeal(s, gn);
      if (isZeroModule(mm) || isZeroModule(nn)) continue;
      auto len = moduleLength(tensorProduct(mm, nn));
      if (!len || *len == 0) continue;
      int dm = *moduleDim(mm), dn = *moduleDim(nn);
      long long x = chi(mm, nn, 0).value;
      int ds = static_cast<int>(n);
      json inst{{"M", idealText(gm)}, {"N", idealText(gn)}, {"dimM", dm}, {"dimN", dn}, {"chi", x}};
      std::vector<std::string> bad;
      if (dm + dn > ds) bad.push_back("dimension inequality");
      if (x < 0) bad.push_back("nonnegativity");
      if ((x == 0) != (dm + dn < ds)) bad.push_back("vanishing");
      if ((x > 0) != (dm + dn == ds)) bad.push_back("positivity");
      if (!bad.empty()) violations.push_back({{"instance", instances.size()}, {"failed", bad}});
      instances.push_back(inst);
    }
    return {{"count", count}, {"seed", options_.seed}, {"instances", instances}, {"violations", violations}};
  }

  SessionOptions options_;
  Context<K> ctx_;
  json ringJson_;
};

using AnyRunner = std::variant<std::monostate, std::unique_ptr<Runner<PrimeField>>, std::unique_ptr<Runner<RationalField>>>;

std::uint32_t parseFieldOverride(const std::string& text) {
  if (text == "Q") return 0;
  if (text.size() > 3 && text.rfind("F(", 0) == 0 && text.back() == ')') {
    auto p = std::stoull(text.substr(2, text.size() - 3));
    if (p >= 2 && p < (1ull << 31) && isPrime(p)) return static_cast<std::uint32_t>(p);
  }
  throw Error(ErrorKind::InvalidArgument, "field must be Q or F(p) with p a prime below 2^31, got '" + text + "'");
}

}  // namespace

struct Session::Impl {
  SessionOptions options;
  AnyRunner runner;
  std::vector<std::string> variables;
};

Session::Session(SessionOptions options) : impl_(std::make_unique<Impl>()) {
  impl_->options = std::move(options);
  if (impl_->options.field) parseFieldOverride(*impl_->options.field);
  if (impl_->options.order) TermOrder::parse(*impl_->options.order);
}

Session::~Session() = default;
Session::Session(Session&&) noexcept = default;
Session& Session::operator=(Session&&) noexcept = default;

std::optional<ResultDocument> Session::execute(const Statement& statement) {
  try {
    if (const auto* r = std::get_if<RingDecl>(&statement.body)) {
      RingDecl decl = *r;
      if (impl_->options.field) decl.characteristic = parseFieldOverride(*impl_->options.field);
      if (decl.characteristic == 0) impl_->runner = std::make_unique<Runner<RationalField>>(decl, impl_->options);
      else impl_->runner = std::make_unique<Runner<PrimeField>>(decl, impl_->options);
      impl_->variables = decl.variables;
      return std::nullopt;
    }
    if (std::holds_alternative<std::monostate>(impl_->runner))
      throw Error(ErrorKind::InvalidArgument, "no ring has been declared");
    if (const auto* b = std::get_if<Binding>(&statement.body)) {
      std::visit(
          [&](auto& run) {
            if constexpr (!std::is_same_v<std::decay_t<decltype(run)>, std::monostate>) run->bind(*b);
          },
          impl_->runner);
      return std::nullopt;
    }
    const auto& c = std::get<Command>(statement.body);
    ResultDocument doc;
    doc.command = printCommand(c, impl_->variables);
    std::visit(
        [&](auto& run) {
          if constexpr (!std::is_same_v<std::decay_t<decltype(run)>, std::monostate>) {
            doc.ring = run->ringJson();
            doc.payload = run->run(c);
          }
        },
        impl_->runner);
    return doc;
  } catch (const ScriptError&) {
    throw;
  } catch (const Error& e) {
    throw ScriptError(e.kind(), e.what(), statement.location, "");
  }
}

std::vector<ResultDocument> runScript(const SessionScript& script, const SessionOptions& options) {
  Session session(options);
  std::vector<ResultDocument> out;
  for (const auto& st : script.statements)
    if (auto doc = session.execute(st)) out.push_back(std::move(*doc));
  return out;
}

std::string formatText(const ResultDocument& doc) {
  std::ostringstream os;
  os << doc.command << "\n";
  const auto& p = doc.payload;
  if (p.contains("entries")) {
    for (const auto& e : p["entries"]) {
      os << "  Tor_" << e["i"].get<std::size_t>() << " : ";
      if (e.contains("length")) os << "length " << e["length"].dump();
      else os << "infinite length, support dimension " << e["posdim"].dump();
      os << "\n";
    }
    os << "  fli index: " << p["fliIndex"].dump() << "\n";
    for (const auto& [k, v] : p.items())
      if (k != "entries" && k != "fliIndex") os << "  " << k << ": " << v.dump() << "\n";
    return os.str();
  }
  for (const auto& [k, v] : p.items()) os << "  " << k << ": " << v.dump() << "\n";
  return os.str();
}

}  // namespace hypertor
