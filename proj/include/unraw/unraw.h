// Copyright 2026 The unraw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the unraw camera-pipeline library.
 *
 * Every function returns an unraw_status. On failure the thread-local
 * message from unraw_last_error() describes the problem and output
 * pointers are left untouched. Handles are opaque and owned by the caller;
 * release them with the matching *_free function. Strings returned through
 * char** parameters are released with unraw_string_free.
 */
#ifndef UNRAW_UNRAW_H_
#define UNRAW_UNRAW_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(UNRAW_BUILDING_LIBRARY)
#define UNRAW_API __declspec(dllexport)
#else
#define UNRAW_API __declspec(dllimport)
#endif
#else
#define UNRAW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum unraw_status {
  UNRAW_OK = 0,
  UNRAW_ERR_ARGUMENT = 1,
  UNRAW_ERR_DIMENSION = 2,
  UNRAW_ERR_DOMAIN = 3,
  UNRAW_ERR_CONFIG = 4,
  UNRAW_ERR_IO = 5,
  UNRAW_ERR_FORMAT = 6,
  UNRAW_ERR_INTERNAL = 7
} unraw_status;

typedef struct unraw_profile unraw_profile;
typedef struct unraw_image unraw_image;
typedef struct unraw_raw unraw_raw;
typedef struct unraw_histogram unraw_histogram;

UNRAW_API const char* unraw_version(void);
UNRAW_API const char* unraw_status_name(unraw_status status);
UNRAW_API const char* unraw_last_error(void);
UNRAW_API void unraw_string_free(char* text);
UNRAW_API uint64_t unraw_entropy_seed(void);

/* ---- camera profiles ---- */

UNRAW_API unraw_status unraw_profile_default(unraw_profile** out);
/* "default", a file path, or a name looked up in UNRAW_PROFILE_PATH. */
UNRAW_API unraw_status unraw_profile_resolve(const char* name_or_path, unraw_profile** out);
UNRAW_API unraw_status unraw_profile_parse(const char* json, unraw_profile** out);
UNRAW_API unraw_status unraw_profile_to_json(const unraw_profile* profile, char** out);
UNRAW_API unraw_status unraw_profile_hash(const unraw_profile* profile, char** out);
UNRAW_API void unraw_profile_free(unraw_profile* profile);

/* ---- planar float images, channel-major ---- */

UNRAW_API unraw_status unraw_image_create(int channels, int height, int width,
                                          const float* samples, unraw_image** out);
/* 8/16-bit PNG, PPM or PGM as a 3-channel sRGB image in [0, 1]. */
UNRAW_API unraw_status unraw_image_load(const char* path, unraw_image** out);
/* bits is 8 or 16; the extension selects PNG or PPM/PGM. */
UNRAW_API unraw_status unraw_image_save(const unraw_image* image, const char* path, int bits);
UNRAW_API unraw_status unraw_image_shape(const unraw_image* image, int* channels, int* height,
                                         int* width);
UNRAW_API const float* unraw_image_samples(const unraw_image* image);
UNRAW_API void unraw_image_free(unraw_image* image);

/* ---- raw mosaics with their pipeline metadata ---- */

#define UNRAW_UNPROCESS_ADD_NOISE 1u

/* Unprocesses an sRGB image into a Bayer mosaic. The random stream is keyed
 * by (seed, key); key may be NULL. With UNRAW_UNPROCESS_ADD_NOISE, sampled
 * shot/read noise is added to the mosaic (clipped to [0, 1]). */
UNRAW_API unraw_status unraw_unprocess(const unraw_image* srgb, const unraw_profile* profile,
                                       uint64_t seed, const char* key, unsigned flags,
                                       unraw_raw** out);
/* Same sampling as unraw_unprocess, returning the linear camera RGB image
 * before mosaicing. */
UNRAW_API unraw_status unraw_unprocess_rgb(const unraw_image* srgb,
                                           const unraw_profile* profile, uint64_t seed,
                                           const char* key, unraw_image** out);

UNRAW_API unraw_status unraw_raw_save(const unraw_raw* raw, const char* path);
/* Loads a mosaic container, or one block ("noisy" or "clean", NULL means
 * "clean") of a training-example container. */
UNRAW_API unraw_status unraw_raw_load(const char* path, const char* block, unraw_raw** out);
UNRAW_API unraw_status unraw_raw_shape(const unraw_raw* raw, int* height, int* width);
UNRAW_API const float* unraw_raw_samples(const unraw_raw* raw);
/* JSON object with the pipeline params and any recorded provenance. */
UNRAW_API unraw_status unraw_raw_sidecar(const unraw_raw* raw, char** out);
UNRAW_API void unraw_raw_free(unraw_raw* raw);

#define UNRAW_PROCESS_TONE_MAP 1u
#define UNRAW_PROCESS_DIGITAL_GAIN 2u
#define UNRAW_PROCESS_UNCLAMPED 4u

/* White balance, bilinear demosaic, CCM, optional smoothstep, gamma. */
UNRAW_API unraw_status unraw_process(const unraw_raw* raw, unsigned flags, unraw_image** out);

/* ---- training-pair synthesis ---- */

typedef struct unraw_synthesis_options {
  int crop_size;
  int downsample;
  int allow_flips;
  int add_noise;
  int clip_noisy;
  unsigned jobs;
} unraw_synthesis_options;

typedef struct unraw_corpus_result {
  size_t examples;
  size_t train;
  size_t validation;
  size_t test;
  size_t failures;
} unraw_corpus_result;

UNRAW_API void unraw_synthesis_options_default(unraw_synthesis_options* options);

/* Writes <out_dir>/<file>.uraw per source image plus manifest.jsonl and
 * summary.json. Per-file failures do not fail the call; they are counted in
 * result->failures and, when failures_out is not NULL, listed there as
 * "source<TAB>reason" lines. */
UNRAW_API unraw_status unraw_synthesize_corpus(const char* source_dir,
                                               const unraw_profile* profile,
                                               const unraw_synthesis_options* options,
                                               uint64_t seed, const char* out_dir,
                                               unraw_corpus_result* result,
                                               char** failures_out);

/* Recomputes the noise map of a training-example container from its noisy
 * planes and noise params; *matches is 1 when every sample is bit-equal. */
UNRAW_API unraw_status unraw_example_verify(const char* path, int* matches);

/* Reads any container and returns its JSON sidecar. */
UNRAW_API unraw_status unraw_container_sidecar(const char* path, char** out);

/* CSV with header index,lambda_shot,lambda_read,red_gain,green_gain,
 * blue_gain,inverse_digital_gain,ccm_weight_<name>... */
UNRAW_API unraw_status unraw_sample_params_csv(const unraw_profile* profile, uint64_t count,
                                               uint64_t seed, char** out);

/* ---- metrics ---- */

typedef struct unraw_metric_report {
  double psnr_raw;
  double ssim_raw;
  double psnr_srgb;
  double ssim_srgb;
} unraw_metric_report;

/* PSNR is +inf for identical inputs. */
UNRAW_API unraw_status unraw_image_compare(const unraw_image* a, const unraw_image* b,
                                           double* psnr, double* ssim);
/* Raw metrics on packed planes; sRGB metrics after rendering both mosaics
 * with the reference's pipeline params. */
UNRAW_API unraw_status unraw_raw_compare(const unraw_raw* estimate, const unraw_raw* reference,
                                         unraw_metric_report* report);
UNRAW_API unraw_status unraw_report_format(const unraw_metric_report* report, int as_json,
                                           char** out);
UNRAW_API unraw_status unraw_srgb_l1_loss(const unraw_raw* a, const unraw_raw* b,
                                          double* loss);

UNRAW_API double unraw_dssim(double ssim);
UNRAW_API double unraw_psnr_to_rmse_reduction(double psnr_ref, double psnr_best);
/* UNRAW_ERR_DOMAIN when the reference DSSIM is zero and the other is not. */
UNRAW_API unraw_status unraw_dssim_reduction(double ssim_ref, double ssim_best,
                                             double* reduction);

UNRAW_API unraw_status unraw_histogram_create(int channels, int bins, unraw_histogram** out);
UNRAW_API unraw_status unraw_histogram_add(unraw_histogram* histogram, const unraw_image* image);
/* counts_csv: channel,bin,lo,hi,count,fraction. summary_csv:
 * channel,pixels,mean,median. Either may be NULL. */
UNRAW_API unraw_status unraw_histogram_csv(const unraw_histogram* histogram, char** counts_csv,
                                           char** summary_csv);
UNRAW_API void unraw_histogram_free(unraw_histogram* histogram);

/* ---- scalar curves ---- */

UNRAW_API double unraw_gamma_compress(double x, double epsilon);
UNRAW_API double unraw_gamma_decompress(double y, double epsilon);
UNRAW_API double unraw_smoothstep(double x);
UNRAW_API double unraw_inverse_smoothstep(double y);
/* NaN when gain <= 0. */
UNRAW_API double unraw_safe_inverse_gain(double x, double gain, double threshold);

#ifdef __cplusplus
}
#endif

#endif  /* UNRAW_UNRAW_H_ */
