#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hypertor/corpus.hpp"
#include "hypertor/session.hpp"

namespace {

enum Exit { kOk = 0, kEngineError = 1, kSyntaxError = 2, kCorpusMismatch = 3 };

int runText(const std::string& text, const hypertor::SessionOptions& options, bool asJson) {
  using namespace hypertor;
  SessionScript script;
  try {
    script = parseScript(text);
  } catch (const Error& e) {
    if (asJson) std::cout << nlohmann::json{{"error", errorJson(e)}}.dump(2) << "\n";
    else std::cerr << "syntax error: " << e.what() << "\n";
    return kSyntaxError;
  }
  nlohmann::json docs = nlohmann::json::array();
  int status = kOk;
  nlohmann::json error = nullptr;
  try {
    Session session(options);
    for (const auto& st : script.statements) {
      auto doc = session.execute(st);
      if (!doc) continue;
      if (asJson) docs.push_back(doc->toJson());
      else std::cout << formatText(*doc);
    }
  } catch (const Error& e) {
    status = kEngineError;
    error = errorJson(e);
    if (!asJson) std::cerr << e.kindName() << ": " << e.what() << "\n";
  }
  if (asJson) {
    nlohmann::json out{{"results", docs}};
    if (!error.is_null()) out["error"] = error;
    std::cout << out.dump(2) << "\n";
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homological invariants of modules over graded hypersurface rings"};
  app.require_subcommand(1);
  bool asJson = false;
  std::string field, order;
  std::size_t maxSteps = 0;
  std::uint64_t seed = 1;
  app.add_flag("--json", asJson, "Emit JSON documents");
  app.add_option("--field", field, "Override the field of every ring: Q or F(p)");
  app.add_option("--order", order, "Term order: wgrevlex, grevlex or lex");
  app.add_option("--max-steps", maxSteps, "Resolution window for commands without an explicit one");
  app.add_option("--seed", seed, "Seed for generated property instances");

  std::string file;
  auto* run = app.add_subcommand("run", "Run a script file");
  run->add_option("file", file, "Script (.hsl)")->required();
  std::string text;
  auto* eval = app.add_subcommand("eval", "Run a script given on the command line");
  eval->add_option("script", text, "Script text")->required();
  std::string tag;
  auto* corpus = app.add_subcommand("corpus", "Run the bundled regression corpus");
  corpus->add_option("--tag", tag, "Only cases carrying this tag");
  std::string dir = hypertor::defaultCorpusDir().string();
  corpus->add_option("--dir", dir, "Corpus directory");

  CLI11_PARSE(app, argc, argv);

  hypertor::SessionOptions options;
  if (!field.empty()) options.field = field;
  if (!order.empty()) options.order = order;
  if (maxSteps) options.maxSteps = maxSteps;
  options.seed = seed;

  try {
    if (*run) {
      std::ifstream in(file, std::ios::binary);
      if (!in) {
        std::cerr << "cannot read " << file << "\n";
        return kEngineError;
      }
      std::ostringstream os;
      os << in.rdbuf();
      return runText(os.str(), options, asJson);
    }
    if (*eval) return runText(text, options, asJson);
    auto summary = hypertor::corpusRun(tag.empty() ? std::nullopt : std::optional<std::string>(tag),
                                       dir, options);
    if (asJson) {
      std::cout << summary.toJson().dump(2) << "\n";
    } else {
      for (const auto& c : summary.cases) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << " (" << c.seconds << " s)\n";
        for (const auto& d : c.diffs) std::cout << "    " << d << "\n";
      }
      std::cout << summary.passed() << " passed, " << summary.failed() << " failed\n";
    }
    return summary.ok() ? kOk : kCorpusMismatch;
  } catch (const hypertor::Error& e) {
    std::cerr << e.kindName() << ": " << e.what() << "\n";
    return kEngineError;
  }
}
