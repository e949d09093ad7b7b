#ifndef SLPGRAM_H
#define SLPGRAM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum SlpgramStatus {
  SLPGRAM_STATUS_OK = 0,
  SLPGRAM_STATUS_NULL_POINTER = 1,
  SLPGRAM_STATUS_EMPTY_INPUT = 2,
  SLPGRAM_STATUS_MALFORMED = 3,
  SLPGRAM_STATUS_BUFFER_TOO_SMALL = 4,
  SLPGRAM_STATUS_OUT_OF_RANGE = 5,
  SLPGRAM_STATUS_INTERNAL = 6,
} SlpgramStatus;

/**
 * Opaque grammar handle.
 */
typedef struct SlpgramGrammar SlpgramGrammar;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *slpgram_last_error(void);

/**
 * Compresses `len` bytes at `data` and stores a new handle in `*out`.
 *
 * # Safety
 * `data` must point to `len` readable bytes and `out` must be a valid
 * pointer to writable storage for one handle pointer.
 */
enum SlpgramStatus slpgram_compress(const uint8_t *data,
                                    size_t len,
                                    bool dedup,
                                    struct SlpgramGrammar **out);

/**
 * Parses SLPZ text (NUL-terminated) into a new handle.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum SlpgramStatus slpgram_grammar_from_slpz(const char *text, struct SlpgramGrammar **out);

/**
 * Releases a handle. NULL is ignored.
 *
 * # Safety
 * `g` must be NULL or a handle returned by this library that has not been
 * freed yet.
 */
void slpgram_grammar_free(struct SlpgramGrammar *g);

/**
 * Number of binary rules; 0 for NULL.
 *
 * # Safety
 * `g` must be NULL or a live handle.
 */
size_t slpgram_grammar_rule_count(const struct SlpgramGrammar *g);

/**
 * Start symbol id; `u32::MAX` for NULL.
 *
 * # Safety
 * `g` must be NULL or a live handle.
 */
uint32_t slpgram_grammar_start(const struct SlpgramGrammar *g);

/**
 * Length of the generated string.
 *
 * # Safety
 * `g` must be NULL or a live handle.
 */
uint64_t slpgram_grammar_length(const struct SlpgramGrammar *g);

/**
 * Reads rule `index` as `lhs -> left right`.
 *
 * # Safety
 * `g` must be a live handle; the output pointers must be valid.
 */
enum SlpgramStatus slpgram_grammar_rule(const struct SlpgramGrammar *g,
                                        size_t index,
                                        uint32_t *lhs,
                                        uint32_t *left,
                                        uint32_t *right);

/**
 * Expands the grammar into `buf`. `*written` receives the full length
 * even when the buffer is too small, so callers can size a retry.
 *
 * # Safety
 * `buf` must point to `cap` writable bytes (or be NULL with `cap == 0`);
 * `written` must be valid.
 */
enum SlpgramStatus slpgram_grammar_expand(const struct SlpgramGrammar *g,
                                          uint8_t *buf,
                                          size_t cap,
                                          size_t *written);

/**
 * Serialises the grammar as SLPZ v1 text. NULL on failure.
 *
 * # Safety
 * `g` must be NULL or a live handle.
 */
char *slpgram_grammar_to_slpz(const struct SlpgramGrammar *g);

/**
 * Grammar report as a JSON object. Only handles produced by
 * [`slpgram_compress`] carry a report; others yield NULL.
 *
 * # Safety
 * `g` must be NULL or a live handle.
 */
char *slpgram_grammar_report_json(const struct SlpgramGrammar *g);

/**
 * Frees a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void slpgram_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SLPGRAM_H */
