// Command line front end for the surfacebraid kernel. Talks to the shared
// library exclusively through the C interface.

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "surfacebraid.h"

namespace {

std::string read_stdin() {
  std::ostringstream out;
  out << std::cin.rdbuf();
  return out.str();
}

std::string gather_input(const std::vector<std::string>& args) {
  if (args.empty()) return read_stdin();
  std::string joined;
  for (size_t i = 0; i < args.size(); ++i) {
    if (i) joined += ' ';
    joined += args[i];
  }
  return joined;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symbolic kernel for singular braids on closed surfaces"};
  app.require_subcommand(1);

  int n = 2;
  int genus = 1;
  uint64_t seed = 0;
  std::string action_table;
  std::string format = "json";
  app.add_option("--n", n, "number of strands (>= 2)")->capture_default_str();
  app.add_option("--genus", genus, "surface genus (>= 1)")->capture_default_str();
  app.add_option("--seed", seed, "seed for randomized suites")->capture_default_str();
  app.add_option("--action-table", action_table, "peripheral commutation table file");
  app.add_option("--format", format, "output format: json or text")->capture_default_str();

  std::vector<std::string> words;
  int lmax = 4;
  std::string gens;

  CLI::App* cmd_parse = app.add_subcommand("parse", "tokenize a braid word");
  cmd_parse->add_option("word", words, "word (stdin when omitted)");
  CLI::App* cmd_split = app.add_subcommand(
      "split", "write a singular word as conjugated singular generators times a braid");
  cmd_split->add_option("word", words);
  CLI::App* cmd_eta = app.add_subcommand("eta", "desingularize a singular braid word");
  cmd_eta->add_option("word", words);
  CLI::App* cmd_nu = app.add_subcommand("nu", "collected product of (u - 1) over a trace word");
  cmd_nu->add_option("word", words);
  CLI::App* cmd_decode = app.add_subcommand("decode", "invert nu on a formal sum (JSON on stdin)");
  cmd_decode->add_option("sum", words, "formal sum JSON (stdin when omitted)");
  CLI::App* cmd_pre = app.add_subcommand("preimage", "enumerate preimages of a formal sum");
  cmd_pre->add_option("--lmax", lmax, "maximum word length")->capture_default_str();
  cmd_pre->add_option("--gens", gens, "generator list, parenthesized free words")->required();
  cmd_pre->add_option("sum", words, "formal sum JSON (stdin when omitted)");
  CLI::App* cmd_suite = app.add_subcommand("suite", "run the seeded invariant suites");

  // global flags may follow the subcommand
  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  sb_session* session = sb_session_new(n, genus);
  if (!session) {
    std::cerr << "invalid session parameters: n=" << n << " genus=" << genus << "\n";
    return 2;
  }
  if (sb_session_set_format(session, format.c_str()) != SB_OK) {
    std::cerr << sb_session_last_error(session) << "\n";
    sb_session_free(session);
    return 2;
  }
  if (!action_table.empty() &&
      sb_session_set_action_table(session, action_table.c_str()) != SB_OK) {
    std::cerr << sb_session_last_error(session) << "\n";
    sb_session_free(session);
    return 2;
  }
  sb_session_set_seed(session, seed);

  sb_status status = SB_OK;
  char* out = nullptr;
  if (cmd_parse->parsed()) {
    status = sb_parse_word(session, gather_input(words).c_str(), &out);
  } else if (cmd_split->parsed()) {
    status = sb_split(session, gather_input(words).c_str(), &out);
  } else if (cmd_eta->parsed()) {
    status = sb_eta(session, gather_input(words).c_str(), &out);
  } else if (cmd_nu->parsed()) {
    status = sb_nu(session, gather_input(words).c_str(), &out);
  } else if (cmd_decode->parsed()) {
    status = sb_decode(session, gather_input(words).c_str(), &out);
  } else if (cmd_pre->parsed()) {
    status = sb_preimage(session, gather_input(words).c_str(), gens.c_str(), lmax, &out);
  } else if (cmd_suite->parsed()) {
    status = sb_suite(session, seed, &out);
  }

  int rc = 0;
  if (out) {
    std::cout << out << "\n";
    sb_string_free(out);
  }
  if (status != SB_OK) {
    if (!out) std::cerr << sb_session_last_error(session) << "\n";
    rc = 1;
  }
  sb_session_free(session);
  return rc;
}
