#ifndef MORPHINJECT_H
#define MORPHINJECT_H

/* Generated by cbindgen. Do not edit. */

#include <stddef.h>
#include <stdint.h>

/**
 * Status codes returned by every function.
 */
typedef enum MiStatus {
  MI_STATUS_OK = 0,
  MI_STATUS_NULL_POINTER = 1,
  MI_STATUS_INVALID_UTF8 = 2,
  MI_STATUS_INVALID_ARGUMENT = 3,
  MI_STATUS_UNJOINABLE = 4,
  MI_STATUS_UNCLASSIFIABLE = 5,
  MI_STATUS_UNSUPPORTED_FEATURES = 6,
  MI_STATUS_WIDTH = 7,
  MI_STATUS_PARSE = 8,
  MI_STATUS_GRAPH = 9,
  MI_STATUS_UNKNOWN_PROFILE = 10,
  MI_STATUS_IO = 11,
  MI_STATUS_PANIC = 12,
} MiStatus;

/**
 * Opaque trained toy factored model.
 */
typedef struct MiModel MiModel;

/**
 * Opaque language profile.
 */
typedef struct MiProfile MiProfile;

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next call into this library on the same thread.
 */
const char *mi_last_error_message(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed already.
 */
void mi_string_free(char *s);

/**
 * Loads a built-in profile by id (`"hi"`).
 *
 * # Safety
 * `id` must be a NUL-terminated string and `out` a valid pointer.
 */
enum MiStatus mi_profile_builtin(const char *id, struct MiProfile **out);

/**
 * Loads a profile from `<dir>/<id>/`, or from `dir` itself.
 *
 * # Safety
 * `dir` and `id` must be NUL-terminated strings and `out` a valid pointer.
 */
enum MiStatus mi_profile_from_dir(const char *dir, const char *id, struct MiProfile **out);

/**
 * # Safety
 * `profile` must come from a profile constructor and not be used after.
 */
void mi_profile_free(struct MiProfile *profile);

/**
 * Writes the ending category name of `root` (e.g. `II_VOWEL`).
 *
 * # Safety
 * `root` must be a NUL-terminated string and `out` a valid pointer.
 */
enum MiStatus mi_ending_category(const char *root, char **out);

/**
 * Joins `suffix` (`"null"` or empty for none) onto `root`. `noun_class` is a
 * class letter `'A'`..`'E'`, or 0 for no hint.
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum MiStatus mi_join(const struct MiProfile *profile,
                      const char *root,
                      const char *suffix,
                      char noun_class,
                      char **out);

/**
 * Predicts the noun class of `root` and writes its letter to `out`.
 * `gender` is `m`/`f`, `countability` is `count`/`mass`.
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum MiStatus mi_classify(const char *root,
                          const char *gender,
                          const char *countability,
                          char *out);

/**
 * Writes the four dictionary lines of a noun, one per line. `noun_class`
 * overrides the predicted class when non-zero.
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum MiStatus mi_noun_paradigm(const struct MiProfile *profile,
                               const char *source,
                               const char *root,
                               const char *gender,
                               const char *countability,
                               char noun_class,
                               char **out);

/**
 * Writes the dictionary lines of a verb stem over every bundle in the
 * profile's paradigm table.
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum MiStatus mi_verb_paradigm(const struct MiProfile *profile,
                               const char *source,
                               const char *stem,
                               char **out);

/**
 * Annotates 6-column parses (blank-line separated sentences) with
 * source factors, one factored sentence per output line. `factors` is
 * `noun`, `verb` or `both`. Any malformed sentence fails the call.
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum MiStatus mi_annotate(const struct MiProfile *profile,
                          const char *parsed,
                          const char *factors,
                          char **out);

/**
 * Trains a toy factored model on a line-aligned corpus. `alignment` may
 * be null, in which case each line is aligned on its diagonal. `mode` is
 * `factored` or `surface`.
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum MiStatus mi_model_train(const char *source,
                             const char *target,
                             const char *alignment,
                             const char *mode,
                             struct MiModel **out);

/**
 * Translates one factored sentence. Unknown tokens render as
 * `@UNK:form@`; their number goes to `unknown` when it is not null.
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum MiStatus mi_model_translate(const struct MiModel *model,
                                 const char *sentence,
                                 char **out,
                                 size_t *unknown);

/**
 * # Safety
 * `model` must come from [`mi_model_train`] and not be used after.
 */
void mi_model_free(struct MiModel *model);

#endif  /* MORPHINJECT_H */
