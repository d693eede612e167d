/*
 * dnaids: signature-based intrusion detection over nucleotide-encoded
 * connection records.
 *
 * C API for the shared library. All functions return a status code
 * (DNAIDS_OK on success); objects are opaque handles released with the
 * matching _destroy function. On failure the out-parameters are left
 * untouched and dnaids_last_error() returns a thread-local message
 * describing what went wrong.
 */

#ifndef DNAIDS_H
#define DNAIDS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. */
#define DNAIDS_OK 0
#define DNAIDS_E_ARG (-1)         /* null handle or invalid argument */
#define DNAIDS_E_IO (-2)          /* missing, unreadable or unwritable file */
#define DNAIDS_E_PARSE (-3)       /* malformed schema/taxonomy/data/model/db */
#define DNAIDS_E_RANGE (-4)       /* out-of-range request */
#define DNAIDS_E_FINGERPRINT (-5) /* encoder/database fingerprint mismatch */
#define DNAIDS_E_CAPACITY (-6)    /* symbolic feature exceeds codebook capacity */
#define DNAIDS_E_STATE (-7)       /* contract violation (length mismatch, ...) */
#define DNAIDS_E_INTERNAL (-8)

/* Connection outcome classes. */
#define DNAIDS_CLASS_NORMAL 0
#define DNAIDS_CLASS_DOS 1
#define DNAIDS_CLASS_PROBE 2
#define DNAIDS_CLASS_R2L 3
#define DNAIDS_CLASS_U2R 4

/* Match modes. */
#define DNAIDS_MODE_EXACT 0
#define DNAIDS_MODE_SUBSTRING 1
#define DNAIDS_MODE_WEIGHTED 2

/* Signature granularity: whole-record sequences or one feature-group span. */
#define DNAIDS_SPAN_RECORD 0
#define DNAIDS_SPAN_BASIC 1
#define DNAIDS_SPAN_CONTENT 2
#define DNAIDS_SPAN_TIME_TRAFFIC 3
#define DNAIDS_SPAN_HOST_TRAFFIC 4

typedef struct dnaids_schema dnaids_schema;
typedef struct dnaids_taxonomy dnaids_taxonomy;
typedef struct dnaids_dataset dnaids_dataset;
typedef struct dnaids_encoder dnaids_encoder;
typedef struct dnaids_sigdb dnaids_sigdb;
typedef struct dnaids_engine dnaids_engine;
typedef struct dnaids_verdicts dnaids_verdicts;
typedef struct dnaids_series dnaids_series;

typedef struct dnaids_confusion {
    uint64_t tp;
    uint64_t fp;
    uint64_t tn;
    uint64_t fn;
} dnaids_confusion;

const char* dnaids_version(void);

/* Message for the most recent failure on this thread; never NULL. */
const char* dnaids_last_error(void);

/* --- schema and taxonomy ------------------------------------------------ */

/* Loads a 41-feature record schema (lines: index,name,kind,group).
 * allow_difficulty != 0 accepts the 43-field record layout with a trailing
 * difficulty column. */
int dnaids_schema_load(const char* path, int allow_difficulty, dnaids_schema** out);
void dnaids_schema_destroy(dnaids_schema* schema);

/* Loads the attack subtype -> class map (lines: subtype,class). */
int dnaids_taxonomy_load(const char* path, dnaids_taxonomy** out);
int dnaids_taxonomy_size(const dnaids_taxonomy* taxonomy, size_t* out);
void dnaids_taxonomy_destroy(dnaids_taxonomy* taxonomy);

/* --- datasets ------------------------------------------------------------ */

/* Parses a comma-separated record file against the schema. With skip_bad,
 * malformed lines are counted instead of failing the load. */
int dnaids_dataset_load(const char* path, const dnaids_schema* schema, int skip_bad,
                        dnaids_dataset** out);
int dnaids_dataset_size(const dnaids_dataset* dataset, size_t* out);
int dnaids_dataset_skipped(const dnaids_dataset* dataset, size_t* out);
int dnaids_dataset_prefix(const dnaids_dataset* dataset, size_t n, dnaids_dataset** out);

/* Normalizes every record's raw label through the taxonomy. Required before
 * dnaids_score / dnaids_series_compute / dnaids_sigdb_build. */
int dnaids_dataset_resolve_labels(dnaids_dataset* dataset, const dnaids_taxonomy* taxonomy);

/* Resolved class of one record (DNAIDS_CLASS_*). */
int dnaids_dataset_label(const dnaids_dataset* dataset, size_t index, int* out);
void dnaids_dataset_destroy(dnaids_dataset* dataset);

/* --- encoder ------------------------------------------------------------- */

/* Fits per-feature quantizers/codebooks on the dataset. levels is the
 * continuous quantization resolution (>= 2; 256 is the stock setting). */
int dnaids_encoder_fit(const dnaids_dataset* dataset, const dnaids_schema* schema,
                       size_t levels, dnaids_encoder** out);
int dnaids_encoder_save(const dnaids_encoder* encoder, const char* path);
int dnaids_encoder_load(const char* path, dnaids_encoder** out);
int dnaids_encoder_total_length(const dnaids_encoder* encoder, size_t* out);

/* Writes the 16-hex-digit fingerprint plus NUL into buf (>= 17 bytes). */
int dnaids_encoder_fingerprint(const dnaids_encoder* encoder, char* buf, size_t buf_len);

/* Encodes record `index` as a NUL-terminated ACGT string; buf_len must be
 * at least total_length + 1. unknown_count (optional) receives the number
 * of sentinel-encoded symbolic features. */
int dnaids_encoder_encode(const dnaids_encoder* encoder, const dnaids_dataset* dataset,
                          size_t index, char* buf, size_t buf_len, size_t* unknown_count);
void dnaids_encoder_destroy(dnaids_encoder* encoder);

/* --- signature database --------------------------------------------------- */

/* Builds the attack-signature database from a labelled dataset (labels must
 * be resolved). keep_conflicts != 0 retains sequences that also occur under
 * normal records; otherwise they are dropped and counted. span selects
 * whole-record signatures or one feature-group subsequence. */
int dnaids_sigdb_build(const dnaids_dataset* dataset, const dnaids_schema* schema,
                       const dnaids_encoder* encoder, int keep_conflicts, int span,
                       dnaids_sigdb** out);
int dnaids_sigdb_save(const dnaids_sigdb* db, const char* path);
int dnaids_sigdb_load(const char* path, dnaids_sigdb** out);

/* Union of two databases built under the same encoder; supports are summed. */
int dnaids_sigdb_merge(const dnaids_sigdb* a, const dnaids_sigdb* b, dnaids_sigdb** out);

/* Signature count for one class, or the total with cls < 0. */
int dnaids_sigdb_count(const dnaids_sigdb* db, int cls, size_t* out);
int dnaids_sigdb_conflicts(const dnaids_sigdb* db, uint64_t* out);
void dnaids_sigdb_destroy(dnaids_sigdb* db);

/* --- detection ------------------------------------------------------------ */

/* Reads a weight override file (lines A=<real> .. T=<real>) into out[4]. */
int dnaids_weights_load(const char* path, double* out);

/* Builds the match engine. weights may be NULL for the built-in table
 * (English letter frequencies of a, c, g, t); tau is the weighted-mode
 * threshold and must be >= 0. */
int dnaids_engine_create(const dnaids_sigdb* db, int mode, double tau, const double* weights,
                         dnaids_engine** out);
int dnaids_engine_signature_count(const dnaids_engine* engine, size_t* out);

/* Classifies one ACGT sequence. is_attack/cls/signature_id/score are all
 * optional. signature_id receives -1 for normal verdicts. */
int dnaids_engine_classify(const dnaids_engine* engine, const char* sequence, int* is_attack,
                           int* cls, int64_t* signature_id, double* score);
void dnaids_engine_destroy(dnaids_engine* engine);

/* Encodes and classifies every record, preserving input order. The verdict
 * sequence is identical for any worker count. Fails with
 * DNAIDS_E_FINGERPRINT when the encoder does not match the engine. */
int dnaids_detect(const dnaids_engine* engine, const dnaids_encoder* encoder,
                  const dnaids_dataset* dataset, unsigned workers, dnaids_verdicts** out);

int dnaids_verdicts_size(const dnaids_verdicts* verdicts, size_t* out);
int dnaids_verdicts_get(const dnaids_verdicts* verdicts, size_t index, size_t* source_index,
                        int* is_attack, int* cls, int64_t* signature_id, double* score,
                        size_t* unknown_count);
int dnaids_verdicts_attack_total(const dnaids_verdicts* verdicts, size_t* out);

/* One line per verdict: source<TAB>outcome<TAB>class<TAB>id<TAB>score. */
int dnaids_verdicts_write_log(const dnaids_verdicts* verdicts, const char* path);
void dnaids_verdicts_destroy(dnaids_verdicts* verdicts);

/* --- evaluation ------------------------------------------------------------ */

/* Binary confusion counts of verdicts against the dataset's resolved labels. */
int dnaids_score(const dnaids_verdicts* verdicts, const dnaids_dataset* dataset,
                 dnaids_confusion* out);

/* Exact-class tallies for one class: detected = verdicts naming exactly this
 * class, missed = every other outcome for records of this class. */
int dnaids_score_class(const dnaids_verdicts* verdicts, const dnaids_dataset* dataset, int cls,
                       uint64_t* detected, uint64_t* missed);

/* Cumulative FP/FN over ascending prefix sizes, one detection pass. */
int dnaids_series_compute(const dnaids_dataset* dataset, const dnaids_encoder* encoder,
                          const dnaids_engine* engine, const size_t* sizes, size_t n_sizes,
                          unsigned workers, dnaids_series** out);
int dnaids_series_size(const dnaids_series* series, size_t* out);
int dnaids_series_get(const dnaids_series* series, size_t index, size_t* samples, uint64_t* fp,
                      uint64_t* fn);

/* CSV with header samples,false_positives,false_negatives. */
int dnaids_series_write_csv(const dnaids_series* series, const char* path);
void dnaids_series_destroy(dnaids_series* series);

#ifdef __cplusplus
}
#endif

#endif /* DNAIDS_H */
