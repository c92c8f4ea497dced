#include "hypertor/corpus.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>

namespace hypertor {

using nlohmann::json;

std::vector<std::string> structuralDiff(const json& expected, const json& actual, const std::string& path) {
  std::vector<std::string> out;
  const std::string here = path.empty() ? "$" : path;
  if (expected.is_object()) {
    if (!actual.is_object()) return {here + ": expected an object, got " + actual.dump()};
    for (const auto& [k, v] : expected.items()) {
      if (!actual.contains(k)) {
        out.push_back(here + "." + k + ": missing");
        continue;
      }
      auto sub = structuralDiff(v, actual.at(k), here + "." + k);
      out.insert(out.end(), sub.begin(), sub.end());
    }
    return out;
  }
  if (expected.is_array()) {
    if (!actual.is_array()) return {here + ": expected an array, got " + actual.dump()};
    if (expected.size() != actual.size())
      return {here + ": expected " + std::to_string(expected.size()) + " elements, got " +
              std::to_string(actual.size()) + " " + actual.dump()};
    for (std::size_t i = 0; i < expected.size(); ++i) {
      auto sub = structuralDiff(expected[i], actual[i], here + "[" + std::to_string(i) + "]");
      out.insert(out.end(), sub.begin(), sub.end());
    }
    return out;
  }
  // Numbers compare by value regardless of signedness.
  bool same = expected.is_number() && actual.is_number() ? expected.dump() == actual.dump() : expected == actual;
  if (!same) out.push_back(here + ": expected " + expected.dump() + ", got " + actual.dump());
  return out;
}

std::size_t CorpusSummary::passed() const {
  return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](const auto& c) { return c.passed; }));
}

std::size_t CorpusSummary::failed() const { return cases.size() - passed(); }

json CorpusSummary::toJson() const {
  json list = json::array();
  for (const auto& c : cases)
    list.push_back({{"name", c.name}, {"tags", c.tags}, {"passed", c.passed}, {"diffs", c.diffs},
                    {"seconds", c.seconds}});
  return {{"cases", list}, {"passed", passed()}, {"failed", failed()}};
}

std::filesystem::path defaultCorpusDir() {
#ifdef HYPERTOR_CORPUS_DIR
  return HYPERTOR_CORPUS_DIR;
#else
  return "corpus";
#endif
}

namespace {

std::string readFile(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json readGolden(const std::filesystem::path& p) { return json::parse(readFile(p)); }

}  // namespace

std::vector<CorpusCase> listCorpus(const std::filesystem::path& dir) {
  std::vector<CorpusCase> out;
  if (!std::filesystem::is_directory(dir)) return out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() != ".hsl") continue;
    CorpusCase c;
    c.name = entry.path().stem().string();
    c.script = entry.path();
    c.golden = dir / (c.name + ".golden.json");
    if (!std::filesystem::exists(c.golden)) continue;
    json g = readGolden(c.golden);
    if (g.contains("tags")) c.tags = g["tags"].get<std::vector<std::string>>();
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return out;
}

CaseOutcome runCase(const CorpusCase& c, const SessionOptions& options) {
  CaseOutcome o;
  o.name = c.name;
  o.tags = c.tags;
  auto start = std::chrono::steady_clock::now();
  json golden = readGolden(c.golden);
  json results = json::array();
  json error = nullptr;
  try {
    auto script = parseScript(readFile(c.script));
    Session session(options);
    for (const auto& st : script.statements)
      if (auto doc = session.execute(st)) results.push_back(doc->toJson());
  } catch (const Error& e) {
    error = errorJson(e);
  }
  json actual{{"results", results}, {"error", error}};
  json expected{{"results", golden.value("results", json::array())}, {"error", golden.value("error", json(nullptr))}};
  o.diffs = structuralDiff(expected, actual);
  o.passed = o.diffs.empty();
  o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return o;
}

CorpusSummary corpusRun(const std::optional<std::string>& tag, const std::filesystem::path& dir,
                        const SessionOptions& options) {
  CorpusSummary s;
  for (const auto& c : listCorpus(dir)) {
    if (tag && std::find(c.tags.begin(), c.tags.end(), *tag) == c.tags.end()) continue;
    s.cases.push_back(runCase(c, options));
  }
  return s;
}

}  // namespace hypertor
