/* surfacebraid: symbolic kernel for singular braids on closed surfaces.
 *
 * C interface of the shared library. Handles are opaque; every call that can
 * fail returns an sb_status and leaves a message retrievable through
 * sb_session_last_error. Strings returned through out parameters are owned
 * by the caller and released with sb_string_free.
 */

#ifndef SURFACEBRAID_H
#define SURFACEBRAID_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct sb_session sb_session;

typedef enum sb_status {
  SB_OK = 0,
  SB_ERR_USAGE = 1,
  SB_ERR_PARSE = 2,
  SB_ERR_DOMAIN = 3,
  SB_ERR_ACTION_UNDEFINED = 4,
  SB_ERR_NOT_IN_IMAGE = 5,
  SB_ERR_UNREPRESENTABLE = 6,
  SB_ERR_INTERNAL = 7,
  SB_ERR_SUITE_FAILED = 8
} sb_status;

const char* sb_version(void);
const char* sb_status_name(sb_status status);

/* Session: strand count n >= 2, genus >= 1. NULL on invalid parameters. */
sb_session* sb_session_new(int n, int genus);
void sb_session_free(sb_session* session);

/* Peripheral commutation table; see the documented file format. */
sb_status sb_session_set_action_table(sb_session* session, const char* path);

/* "json" (default) or "text". */
sb_status sb_session_set_format(sb_session* session, const char* format);

sb_status sb_session_set_seed(sb_session* session, uint64_t seed);

/* Message of the last failed call on this session; empty string otherwise. */
const char* sb_session_last_error(const sb_session* session);

/* Generic dispatch: command in {parse, split, eta, nu, decode, preimage,
 * suite}; input syntax per command (word grammars / JSON). */
sb_status sb_run(sb_session* session, const char* command, const char* input, char** out);

/* Direct entry points. */
sb_status sb_parse_word(sb_session* session, const char* word, char** out);
sb_status sb_split(sb_session* session, const char* word, char** out);
sb_status sb_eta(sb_session* session, const char* word, char** out);
sb_status sb_nu(sb_session* session, const char* trace_word, char** out);
sb_status sb_decode(sb_session* session, const char* formal_sum_json, char** out);
sb_status sb_preimage(sb_session* session, const char* formal_sum_json, const char* generators,
                      int lmax, char** out);
sb_status sb_suite(sb_session* session, uint64_t seed, char** out);

void sb_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* SURFACEBRAID_H */
