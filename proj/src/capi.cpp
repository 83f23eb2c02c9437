#include "surfacebraid.h"

#include <cstdlib>
#include <cstring>
#include <functional>
#include <new>
#include <string>

#include <json.hpp>

#include "errors.hpp"
#include "session.hpp"

using sb::ErrCode;
using sb::Error;

struct sb_session {
  sb::SessionConfig config;
  std::string last_error;
};

namespace {

sb_status status_of(ErrCode code) {
  switch (code) {
    case ErrCode::Usage: return SB_ERR_USAGE;
    case ErrCode::Parse: return SB_ERR_PARSE;
    case ErrCode::Domain: return SB_ERR_DOMAIN;
    case ErrCode::ActionUndefined: return SB_ERR_ACTION_UNDEFINED;
    case ErrCode::NotInImage: return SB_ERR_NOT_IN_IMAGE;
    case ErrCode::Unrepresentable: return SB_ERR_UNREPRESENTABLE;
    case ErrCode::Internal: return SB_ERR_INTERNAL;
  }
  return SB_ERR_INTERNAL;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) return nullptr;
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

sb_status guarded(sb_session* session, char** out, const std::function<std::string()>& body) {
  if (!session) return SB_ERR_USAGE;
  if (out) *out = nullptr;
  try {
    std::string result = body();
    session->last_error.clear();
    if (out) *out = dup_string(result);
    return SB_OK;
  } catch (const Error& e) {
    session->last_error = e.what();
    if (out) *out = dup_string(sb::render_error(session->config, e));
    return status_of(e.code());
  } catch (const std::exception& e) {
    session->last_error = e.what();
    return SB_ERR_INTERNAL;
  }
}

}  // namespace

extern "C" {

const char* sb_version(void) { return "0.1.0"; }

const char* sb_status_name(sb_status status) {
  switch (status) {
    case SB_OK: return "ok";
    case SB_ERR_USAGE: return "usage";
    case SB_ERR_PARSE: return "parse";
    case SB_ERR_DOMAIN: return "domain";
    case SB_ERR_ACTION_UNDEFINED: return "action-undefined";
    case SB_ERR_NOT_IN_IMAGE: return "not-in-image";
    case SB_ERR_UNREPRESENTABLE: return "unrepresentable";
    case SB_ERR_INTERNAL: return "internal";
    case SB_ERR_SUITE_FAILED: return "suite-failed";
  }
  return "unknown";
}

sb_session* sb_session_new(int n, int genus) {
  if (n < 2 || genus < 1) return nullptr;
  auto* session = new (std::nothrow) sb_session;
  if (!session) return nullptr;
  session->config.n = n;
  session->config.genus = genus;
  session->config.table = sb::PeripheralTable::defaults(genus);
  return session;
}

void sb_session_free(sb_session* session) { delete session; }

sb_status sb_session_set_action_table(sb_session* session, const char* path) {
  if (!path) return SB_ERR_USAGE;
  return guarded(session, nullptr, [&]() -> std::string {
    session->config.load_table(path);
    return "";
  });
}

sb_status sb_session_set_format(sb_session* session, const char* format) {
  if (!session || !format) return SB_ERR_USAGE;
  std::string f = format;
  if (f != "json" && f != "text") {
    session->last_error = "format must be json or text";
    return SB_ERR_USAGE;
  }
  session->config.format = f;
  return SB_OK;
}

sb_status sb_session_set_seed(sb_session* session, uint64_t seed) {
  if (!session) return SB_ERR_USAGE;
  session->config.seed = seed;
  return SB_OK;
}

const char* sb_session_last_error(const sb_session* session) {
  return session ? session->last_error.c_str() : "";
}

sb_status sb_run(sb_session* session, const char* command, const char* input, char** out) {
  if (!command || !out) return SB_ERR_USAGE;
  return guarded(session, out, [&] {
    return sb::run_command(session->config, command, input ? input : "");
  });
}

sb_status sb_parse_word(sb_session* session, const char* word, char** out) {
  return sb_run(session, "parse", word, out);
}

sb_status sb_split(sb_session* session, const char* word, char** out) {
  return sb_run(session, "split", word, out);
}

sb_status sb_eta(sb_session* session, const char* word, char** out) {
  return sb_run(session, "eta", word, out);
}

sb_status sb_nu(sb_session* session, const char* trace_word, char** out) {
  return sb_run(session, "nu", trace_word, out);
}

sb_status sb_decode(sb_session* session, const char* formal_sum_json, char** out) {
  return sb_run(session, "decode", formal_sum_json, out);
}

sb_status sb_preimage(sb_session* session, const char* formal_sum_json, const char* generators,
                      int lmax, char** out) {
  if (!formal_sum_json || !generators) return SB_ERR_USAGE;
  nlohmann::ordered_json j;
  try {
    j["sum"] = nlohmann::ordered_json::parse(formal_sum_json);
  } catch (const nlohmann::json::exception&) {
    if (session) session->last_error = "preimage: bad JSON sum";
    return SB_ERR_PARSE;
  }
  j["gens"] = generators;
  j["lmax"] = lmax;
  return sb_run(session, "preimage", j.dump().c_str(), out);
}

sb_status sb_suite(sb_session* session, uint64_t seed, char** out) {
  if (!session || !out) return SB_ERR_USAGE;
  session->config.seed = seed;
  bool ok = true;
  sb_status status = guarded(session, out, [&] {
    return sb::run_command(session->config, "suite", "", &ok);
  });
  if (status == SB_OK && !ok) {
    session->last_error = "suite reported failing checks";
    return SB_ERR_SUITE_FAILED;
  }
  return status;
}

void sb_string_free(char* s) { std::free(s); }

}  // extern "C"
