#include "session.hpp"

#include <sstream>

#include <json.hpp>

#include "braid_word.hpp"
#include "errors.hpp"
#include "formal_sum.hpp"
#include "suite.hpp"
#include "trace_monoid.hpp"

namespace sb {

using json = nlohmann::ordered_json;

namespace {

json sum_to_json(const FormalSum& p) {
  json terms = json::array();
  for (const auto& [key, term] : p.terms)
    terms.push_back({{"coeff", term.second}, {"element", key}});
  return json{{"terms", terms}};
}

FormalSum sum_from_json(const json& j, int n, int genus) {
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
    throw Error(ErrCode::Parse, "decode", "expected {\"terms\":[...]}");
  FormalSum p;
  for (const json& t : j["terms"]) {
    if (!t.contains("coeff") || !t.contains("element"))
      throw Error(ErrCode::Parse, "decode", "term needs coeff and element");
    long long c = t["coeff"].get<long long>();
    KElement e = k_parse(t["element"].get<std::string>(), n, genus);
    p.add(e, c);
  }
  return p;
}

std::string sum_to_text(const FormalSum& p) {
  std::string out;
  for (const auto& [key, term] : p.terms) {
    out += (term.second >= 0 ? "+" : "") + std::to_string(term.second) + " " + key + "\n";
  }
  if (out.empty()) out = "0\n";
  return out;
}

/// Trace-word grammar: whitespace-separated parenthesized groups, each a
/// free word that must be a conjugate of a single basis symbol, e.g.
/// `(b[;2]@2) (b[x1;2]@2^-1 b[x2;2]@2 b[x1;2]@2)`.
std::vector<KElement> parse_trace_input(const std::string& text, int n, int genus) {
  std::vector<KElement> letters;
  size_t pos = 0;
  while (pos < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      continue;
    }
    if (text[pos] != '(')
      throw Error(ErrCode::Parse, "parse_trace_word", "expected (", std::string(1, text[pos]));
    size_t close = text.find(')', pos);
    if (close == std::string::npos)
      throw Error(ErrCode::Parse, "parse_trace_word", "unbalanced (");
    std::string group = text.substr(pos + 1, close - pos - 1);
    FreeWord w = parse_free_word(group, genus, n);
    if (w.letters.empty())
      throw Error(ErrCode::Parse, "parse_trace_word", "empty group");
    KElement e = k_from_word(w, n, genus);
    upsilon_classify(e);  // must be a twist conjugate
    letters.push_back(std::move(e));
    pos = close + 1;
  }
  return letters;
}

std::string finish(const SessionConfig& config, const json& j, const std::string& text) {
  return config.format == "text" ? text : j.dump();
}

std::string cmd_parse(const SessionConfig& config, const std::string& input) {
  BraidWord w = parse_braid_word(input, config.n, config.genus);
  json tokens = json::array();
  for (const BraidLetter& l : w.letters) tokens.push_back(to_string(l));
  std::vector<int> perm = permutation_of(w);
  json jperm = json::array();
  for (int x : perm) jperm.push_back(x + 1);
  json out{{"n", w.n}, {"genus", w.genus}, {"tokens", tokens}, {"permutation", jperm}};
  std::string text = "tokens: " + to_string(w) + "\npermutation:";
  for (int x : perm) text += " " + std::to_string(x + 1);
  text += "\n";
  return finish(config, out, text);
}

std::string cmd_split(const SessionConfig& config, const std::string& input) {
  BraidWord w = parse_braid_word(input, config.n, config.genus);
  SplitResult r = split_singular(delta_substitute(w));
  json trace = json::array();
  std::string text;
  for (const SplitConjugate& c : r.trace) {
    trace.push_back({{"conj", to_string(c.conj)}, {"i", c.index}});
    text += "conj=" + to_string(c.conj) + " i=" + std::to_string(c.index) + "\n";
  }
  json out{{"trace", trace}, {"braid", to_string(r.braid)}};
  text += "braid=" + to_string(r.braid) + "\n";
  return finish(config, out, text);
}

std::string cmd_eta(const SessionConfig& config, const std::string& input) {
  BraidWord w = parse_braid_word(input, config.n, config.genus);
  std::vector<EtaTerm> terms = eta_expand(w);
  json jterms = json::array();
  std::string text;
  for (const EtaTerm& t : terms) {
    jterms.push_back({{"coeff", t.coeff}, {"word", to_string(t.word)}});
    text += (t.coeff >= 0 ? "+" : "") + std::to_string(t.coeff) + " " + to_string(t.word) + "\n";
  }
  return finish(config, json{{"terms", jterms}}, text);
}

std::string cmd_nu(const SessionConfig& config, const std::string& input) {
  std::vector<KElement> letters = parse_trace_input(input, config.n, config.genus);
  FormalSum p = nu(letters, config.n, config.genus, config.table);
  return finish(config, sum_to_json(p), sum_to_text(p));
}

std::string cmd_decode(const SessionConfig& config, const std::string& input) {
  json j;
  try {
    j = json::parse(input);
  } catch (const json::exception& e) {
    throw Error(ErrCode::Parse, "decode", std::string("bad JSON: ") + e.what());
  }
  FormalSum p = sum_from_json(j, config.n, config.genus);
  DecodeResult r = decode(p, config.n, config.genus, config.table);
  FoataForm foata = foata_normal_form(r.word);
  json jfoata = json::array();
  std::string text;
  for (const auto& block : foata) {
    json jblock = json::array();
    std::string line = "block:";
    for (int id : block) {
      jblock.push_back(r.fragment.graph->vertex(static_cast<size_t>(id)));
      line += " " + r.fragment.graph->vertex(static_cast<size_t>(id));
    }
    jfoata.push_back(jblock);
    text += line + "\n";
  }
  json jword = json::array();
  for (int id : r.word.letters)
    jword.push_back(r.fragment.graph->vertex(static_cast<size_t>(id)));
  json jgraph = json::parse(graph_to_json(*r.fragment.graph));
  return finish(config, json{{"foata", jfoata}, {"word", jword}, {"graph", jgraph}}, text);
}

std::string cmd_preimage(const SessionConfig& config, const std::string& input) {
  json j;
  try {
    j = json::parse(input);
  } catch (const json::exception& e) {
    throw Error(ErrCode::Parse, "preimage", std::string("bad JSON: ") + e.what());
  }
  if (!j.contains("sum") || !j.contains("gens") || !j.contains("lmax"))
    throw Error(ErrCode::Usage, "preimage", "input needs sum, gens, lmax");
  FormalSum p = sum_from_json(j["sum"], config.n, config.genus);
  std::vector<KElement> gens =
      parse_trace_input(j["gens"].get<std::string>(), config.n, config.genus);
  int lmax = j["lmax"].get<int>();
  if (lmax < 0 || lmax > 12)
    throw Error(ErrCode::Usage, "preimage", "lmax out of 0..12", std::to_string(lmax));
  OmegaFragment frag = build_omega_fragment(gens, config.table);
  std::vector<TraceWord> words = brute_force_preimage(p, frag, lmax, config.table);
  json out = json::array();
  std::string text;
  for (const TraceWord& w : words) {
    json jw = json::array();
    std::string line;
    for (int id : w.letters) {
      jw.push_back(frag.graph->vertex(static_cast<size_t>(id)));
      line += (line.empty() ? "" : " ; ") + frag.graph->vertex(static_cast<size_t>(id));
    }
    out.push_back(jw);
    text += (line.empty() ? "(empty)" : line) + "\n";
  }
  if (words.empty()) text = "(none)\n";
  return finish(config, json{{"preimages", out}}, text);
}

std::string cmd_suite(const SessionConfig& config, const std::string&, bool* suite_ok) {
  SuiteReport report = run_suite(config);
  if (suite_ok) *suite_ok = report.ok();
  json suites = json::array();
  std::string text = "seed " + std::to_string(config.seed) + "\n";
  for (const SuiteResult& s : report.suites) {
    json failures = json::array();
    for (const std::string& f : s.failures) failures.push_back(f);
    suites.push_back({{"name", s.name},
                      {"cases", s.cases},
                      {"passed", s.passed},
                      {"failures", failures},
                      {"notes", s.notes}});
    text += s.name + ": " + std::to_string(s.passed) + "/" + std::to_string(s.cases);
    if (!s.notes.empty()) text += " (" + s.notes + ")";
    text += "\n";
    for (const std::string& f : s.failures) text += "  FAIL " + f + "\n";
  }
  json out{{"seed", config.seed}, {"ok", report.ok()}, {"suites", suites}};
  text += report.ok() ? "OK\n" : "FAILED\n";
  return finish(config, out, text);
}

}  // namespace

std::string run_command(const SessionConfig& config, const std::string& command,
                        const std::string& input, bool* suite_ok) {
  if (config.n < 2)
    throw Error(ErrCode::Usage, "run", "n must be >= 2", std::to_string(config.n));
  if (config.genus < 1)
    throw Error(ErrCode::Usage, "run", "genus must be >= 1", std::to_string(config.genus));
  if (command == "parse") return cmd_parse(config, input);
  if (command == "split") return cmd_split(config, input);
  if (command == "eta") return cmd_eta(config, input);
  if (command == "nu") return cmd_nu(config, input);
  if (command == "decode") return cmd_decode(config, input);
  if (command == "preimage") return cmd_preimage(config, input);
  if (command == "suite") return cmd_suite(config, input, suite_ok);
  throw Error(ErrCode::Usage, "run", "unknown command", command);
}

std::string render_error(const SessionConfig& config, const Error& err) {
  if (config.format == "text") {
    std::string out = "error in " + err.op() + ": " + err.message();
    if (!err.token().empty()) out += " [" + err.token() + "]";
    return out + "\n";
  }
  json j{{"error",
          {{"op", err.op()},
           {"code", err_code_name(err.code())},
           {"message", err.message()},
           {"token", err.token()}}}};
  return j.dump();
}

}  // namespace sb
