#ifndef PERCEPTHASH_H
#define PERCEPTHASH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum PhStatus {
  PH_STATUS_OK = 0,
  PH_STATUS_NULL_POINTER = 1,
  PH_STATUS_INVALID_ARGUMENT = 2,
  PH_STATUS_IO = 3,
  PH_STATUS_UNKNOWN_ALGORITHM = 4,
  PH_STATUS_MISMATCH = 5,
  PH_STATUS_PANIC = 6,
} PhStatus;

/**
 * Hash vector tagged with its algorithm.
 */
typedef struct PhHash PhHash;

/**
 * Decoded 8-bit raster.
 */
typedef struct PhImage PhImage;

/**
 * Message for the last failed call on this thread, or null after a success.
 * The pointer stays valid until the next call into this library on the same
 * thread.
 */
const char *ph_last_error_message(void);

/**
 * Reads a binary PGM or PPM file.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a writable pointer.
 */
enum PhStatus ph_image_load(const char *path, struct PhImage **out);

/**
 * Copies `len` interleaved samples; `channels` is 1 or 3.
 *
 * # Safety
 * `pixels` must point to `len` readable bytes and `out` must be writable.
 */
enum PhStatus ph_image_from_pixels(size_t width,
                                   size_t height,
                                   size_t channels,
                                   const uint8_t *pixels,
                                   size_t len,
                                   struct PhImage **out);

/**
 * Writes P5 for grayscale and P6 for RGB.
 *
 * # Safety
 * `img` must be a live handle and `path` a NUL-terminated string.
 */
enum PhStatus ph_image_save(const struct PhImage *img, const char *path);

/**
 * Width in pixels, or 0 for a null handle.
 *
 * # Safety
 * `img` must be null or a live handle.
 */
size_t ph_image_width(const struct PhImage *img);

/**
 * Height in pixels, or 0 for a null handle.
 *
 * # Safety
 * `img` must be null or a live handle.
 */
size_t ph_image_height(const struct PhImage *img);

/**
 * 1 or 3, or 0 for a null handle.
 *
 * # Safety
 * `img` must be null or a live handle.
 */
size_t ph_image_channels(const struct PhImage *img);

/**
 * Releases an image; null is ignored.
 *
 * # Safety
 * `img` must be null or a handle not yet freed.
 */
void ph_image_free(struct PhImage *img);

/**
 * Hashes `img` with `algorithm` (`phash`, `ring`, `block` or `cslbp`).
 *
 * # Safety
 * `algorithm` must be a NUL-terminated string, `img` a live handle and `out`
 * writable.
 */
enum PhStatus ph_hash_compute(const char *algorithm,
                              const struct PhImage *img,
                              struct PhHash **out);

/**
 * Number of values, or 0 for a null handle.
 *
 * # Safety
 * `hash` must be null or a live handle.
 */
size_t ph_hash_len(const struct PhHash *hash);

/**
 * Copies the values into `out`, which must hold at least `ph_hash_len` items.
 *
 * # Safety
 * `hash` must be a live handle and `out` must have room for `capacity` doubles.
 */
enum PhStatus ph_hash_values(const struct PhHash *hash, double *out, size_t capacity);

/**
 * Renders `algorithm:length:v1,v2,...`; release with [`ph_string_free`].
 *
 * # Safety
 * `hash` must be a live handle and `out` writable.
 */
enum PhStatus ph_hash_to_string(const struct PhHash *hash, char **out);

/**
 * Parses the text produced by [`ph_hash_to_string`].
 *
 * # Safety
 * `line` must be a NUL-terminated string and `out` writable.
 */
enum PhStatus ph_hash_parse(const char *line, struct PhHash **out);

/**
 * Releases a hash; null is ignored.
 *
 * # Safety
 * `hash` must be null or a handle not yet freed.
 */
void ph_hash_free(struct PhHash *hash);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void ph_string_free(char *s);

/**
 * Correlation score S in [-1, 1] between two hashes of the same algorithm.
 *
 * # Safety
 * `a` and `b` must be live handles and `out` writable.
 */
enum PhStatus ph_correlation(const struct PhHash *a, const struct PhHash *b, double *out);

/**
 * Whether S > `threshold`, with `threshold` in (-1, 1).
 *
 * # Safety
 * `a` and `b` must be live handles and `out` writable.
 */
enum PhStatus ph_is_similar(const struct PhHash *a,
                            const struct PhHash *b,
                            double threshold,
                            bool *out);

/**
 * Differing positions between two binary hashes.
 *
 * # Safety
 * `a` and `b` must be live handles and `out` writable.
 */
enum PhStatus ph_hamming(const struct PhHash *a, const struct PhHash *b, size_t *out);

/**
 * Applies one operation given as a manifest line such as `rotation theta=5`.
 *
 * # Safety
 * `img` must be a live handle, `spec` a NUL-terminated string and `out`
 * writable.
 */
enum PhStatus ph_attack_apply(const struct PhImage *img,
                              const char *spec,
                              uint64_t seed,
                              struct PhImage **out);

#endif  /* PERCEPTHASH_H */
