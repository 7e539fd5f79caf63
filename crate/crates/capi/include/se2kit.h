#ifndef SE2KIT_H
#define SE2KIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum Se2Status {
  /**
   * Success.
   */
  Ok = 0,
  /**
   * A pointer argument was NULL.
   */
  NullPointer = 1,
  /**
   * An argument was outside its domain (e.g. ell not an odd prime).
   */
  InvalidArgument = 2,
  /**
   * Text input failed to parse.
   */
  ParseError = 3,
  /**
   * Input was not valid UTF-8.
   */
  Utf8Error = 4,
} Se2Status;

/**
 * Completion outcome for `se2_rewrite_complete`.
 */
typedef enum Se2Completion {
  /**
   * All critical pairs resolved; normal forms are canonical.
   */
  Confluent = 0,
  /**
   * A resource cap was hit; reduction remains sound.
   */
  Bounded = 1,
} Se2Completion;

/**
 * Opaque handle to a group presentation.
 */
typedef struct Se2Presentation Se2Presentation;

/**
 * Opaque handle to a string-rewriting system.
 */
typedef struct Se2Rewrite Se2Rewrite;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string; do not free.
 */
const char *se2_version(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be a pointer previously returned through an out-parameter
 * of this library, or NULL.
 */
void se2_string_free(char *s);

/**
 * Generates the SE2(ell) presentation.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum Se2Status se2_presentation_generate(uint64_t ell, struct Se2Presentation **out);

/**
 * Parses a presentation file (see the text format in the docs).
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be valid.
 */
enum Se2Status se2_presentation_parse(const char *text, struct Se2Presentation **out);

/**
 * Serializes a presentation to the text format.
 *
 * # Safety
 * `p` must be a live handle; `out` must be valid.
 */
enum Se2Status se2_presentation_serialize(const struct Se2Presentation *p, char **out);

/**
 * Number of relators in the presentation.
 *
 * # Safety
 * `p` must be a live handle.
 */
uintptr_t se2_presentation_relator_count(const struct Se2Presentation *p);

/**
 * Destroys a presentation handle.
 *
 * # Safety
 * `p` must be a live handle or NULL; it must not be used afterwards.
 */
void se2_presentation_free(struct Se2Presentation *p);

/**
 * Builds a rewriting system from a presentation (default letter
 * ranking, relators as equations, free-reduction rules installed).
 *
 * # Safety
 * `p` must be a live handle; `out` must be valid.
 */
enum Se2Status se2_rewrite_new(const struct Se2Presentation *p, struct Se2Rewrite **out);

/**
 * Runs Knuth-Bendix completion under the given caps. Pass 0 for any
 * cap to use its default (500000 rules / 1000 tidy / 500000 equations).
 *
 * # Safety
 * `rs` must be a live handle; `outcome` must be valid.
 */
enum Se2Status se2_rewrite_complete(struct Se2Rewrite *rs,
                                    uintptr_t max_rules,
                                    uintptr_t tidy_interval,
                                    uintptr_t max_equations,
                                    enum Se2Completion *outcome);

/**
 * Number of active rewrite rules.
 *
 * # Safety
 * `rs` must be a live handle.
 */
uintptr_t se2_rewrite_rule_count(const struct Se2Rewrite *rs);

/**
 * Reduces `word` (in the word grammar) and writes the irreducible
 * form, `1` for the empty word.
 *
 * # Safety
 * `rs` must be a live handle; `word` NUL-terminated; `out` valid.
 */
enum Se2Status se2_rewrite_reduce(const struct Se2Rewrite *rs, const char *word, char **out);

/**
 * Writes 1 to `certified` iff the word reduces to the identity
 * (sound proof of triviality in the presented group, regardless of
 * confluence).
 *
 * # Safety
 * `rs` must be a live handle; `word` NUL-terminated; `certified` valid.
 */
enum Se2Status se2_rewrite_certify_trivial(const struct Se2Rewrite *rs,
                                           const char *word,
                                           int32_t *certified);

/**
 * Serializes the system (rules, pending queue, stats) as a versioned
 * text checkpoint.
 *
 * # Safety
 * `rs` must be a live handle; `out` valid.
 */
enum Se2Status se2_rewrite_checkpoint(const struct Se2Rewrite *rs, char **out);

/**
 * Restores a system from checkpoint text.
 *
 * # Safety
 * `text` must be NUL-terminated; `out` valid.
 */
enum Se2Status se2_rewrite_restore(const char *text, struct Se2Rewrite **out);

/**
 * Destroys a rewriting-system handle.
 *
 * # Safety
 * `rs` must be a live handle or NULL; it must not be used afterwards.
 */
void se2_rewrite_free(struct Se2Rewrite *rs);

/**
 * Number of etale obstruction classes for the given prime; writes 0
 * and returns InvalidArgument if `ell` is not an odd prime.
 *
 * # Safety
 * `out` must be valid.
 */
enum Se2Status se2_obstruction_count(uint64_t ell, uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SE2KIT_H */
