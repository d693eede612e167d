// extern "C" surface of the shared library. Exceptions from the core are
// caught here and mapped onto status codes; every handle owns one core value.

#include "dnaids.h"

#include "core/dataset.hpp"
#include "core/encoder.hpp"
#include "core/engine.hpp"
#include "core/errors.hpp"
#include "core/report.hpp"
#include "core/schema.hpp"
#include "core/signature_db.hpp"
#include "core/weights.hpp"

#include <cstring>
#include <string>
#include <vector>

struct dnaids_schema {
    dnaids::RecordSchema impl;
};
struct dnaids_taxonomy {
    dnaids::AttackTaxonomy impl;
};
struct dnaids_dataset {
    dnaids::Dataset impl;
};
struct dnaids_encoder {
    dnaids::EncoderModel impl;
};
struct dnaids_sigdb {
    dnaids::SignatureDatabase impl;
};
struct dnaids_engine {
    dnaids::MatchEngine impl;
};
struct dnaids_verdicts {
    std::vector<dnaids::Verdict> impl;
};
struct dnaids_series {
    std::vector<dnaids::SeriesPoint> impl;
};

namespace {

thread_local std::string g_last_error;

void set_last_error(std::string message) { g_last_error = std::move(message); }

int status_of(dnaids::ErrorCode code) {
    using dnaids::ErrorCode;
    switch (code) {
        case ErrorCode::Argument: return DNAIDS_E_ARG;
        case ErrorCode::Io: return DNAIDS_E_IO;
        case ErrorCode::Parse: return DNAIDS_E_PARSE;
        case ErrorCode::Range: return DNAIDS_E_RANGE;
        case ErrorCode::Fingerprint: return DNAIDS_E_FINGERPRINT;
        case ErrorCode::Capacity: return DNAIDS_E_CAPACITY;
        case ErrorCode::Contract: return DNAIDS_E_STATE;
    }
    return DNAIDS_E_INTERNAL;
}

template <typename Fn>
int guarded(Fn&& fn) noexcept {
    try {
        fn();
        return DNAIDS_OK;
    } catch (const dnaids::Error& e) {
        set_last_error(e.what());
        return status_of(e.code());
    } catch (const std::bad_alloc&) {
        set_last_error("out of memory");
        return DNAIDS_E_INTERNAL;
    } catch (const std::exception& e) {
        set_last_error(e.what());
        return DNAIDS_E_INTERNAL;
    } catch (...) {
        set_last_error("unknown error");
        return DNAIDS_E_INTERNAL;
    }
}

int arg_error(const char* what) {
    set_last_error(what);
    return DNAIDS_E_ARG;
}

dnaids::LabelClass class_of(int cls) {
    if (cls < DNAIDS_CLASS_NORMAL || cls > DNAIDS_CLASS_U2R)
        dnaids::raise(dnaids::ErrorCode::Argument, "invalid class value");
    return static_cast<dnaids::LabelClass>(cls);
}

dnaids::MatchMode mode_of(int mode) {
    switch (mode) {
        case DNAIDS_MODE_EXACT: return dnaids::MatchMode::Exact;
        case DNAIDS_MODE_SUBSTRING: return dnaids::MatchMode::Substring;
        case DNAIDS_MODE_WEIGHTED: return dnaids::MatchMode::Weighted;
        default: dnaids::raise(dnaids::ErrorCode::Argument, "invalid match mode value");
    }
}

void fill_verdict_fields(const dnaids::Verdict& v, int* is_attack, int* cls,
                         int64_t* signature_id, double* score) {
    if (is_attack) *is_attack = v.attack ? 1 : 0;
    if (cls) *cls = static_cast<int>(v.attack ? v.cls : dnaids::LabelClass::Normal);
    if (signature_id) *signature_id = v.signature_id ? static_cast<int64_t>(*v.signature_id) : -1;
    if (score) *score = v.score;
}

} // namespace

extern "C" {

const char* dnaids_version(void) { return "1.0.0"; }

const char* dnaids_last_error(void) { return g_last_error.c_str(); }

/* --- schema and taxonomy ------------------------------------------------ */

int dnaids_schema_load(const char* path, int allow_difficulty, dnaids_schema** out) {
    if (!path || !out) return arg_error("null argument to dnaids_schema_load");
    return guarded([&] {
        *out = new dnaids_schema{dnaids::RecordSchema::load(path, allow_difficulty != 0)};
    });
}

void dnaids_schema_destroy(dnaids_schema* schema) { delete schema; }

int dnaids_taxonomy_load(const char* path, dnaids_taxonomy** out) {
    if (!path || !out) return arg_error("null argument to dnaids_taxonomy_load");
    return guarded([&] { *out = new dnaids_taxonomy{dnaids::AttackTaxonomy::load(path)}; });
}

int dnaids_taxonomy_size(const dnaids_taxonomy* taxonomy, size_t* out) {
    if (!taxonomy || !out) return arg_error("null argument to dnaids_taxonomy_size");
    *out = taxonomy->impl.size();
    return DNAIDS_OK;
}

void dnaids_taxonomy_destroy(dnaids_taxonomy* taxonomy) { delete taxonomy; }

/* --- datasets ------------------------------------------------------------ */

int dnaids_dataset_load(const char* path, const dnaids_schema* schema, int skip_bad,
                        dnaids_dataset** out) {
    if (!path || !schema || !out) return arg_error("null argument to dnaids_dataset_load");
    return guarded([&] {
        dnaids::ParseOptions options;
        options.skip_bad = skip_bad != 0;
        *out = new dnaids_dataset{dnaids::load_dataset(path, schema->impl, options)};
    });
}

int dnaids_dataset_size(const dnaids_dataset* dataset, size_t* out) {
    if (!dataset || !out) return arg_error("null argument to dnaids_dataset_size");
    *out = dataset->impl.size();
    return DNAIDS_OK;
}

int dnaids_dataset_skipped(const dnaids_dataset* dataset, size_t* out) {
    if (!dataset || !out) return arg_error("null argument to dnaids_dataset_skipped");
    *out = dataset->impl.skipped_lines();
    return DNAIDS_OK;
}

int dnaids_dataset_prefix(const dnaids_dataset* dataset, size_t n, dnaids_dataset** out) {
    if (!dataset || !out) return arg_error("null argument to dnaids_dataset_prefix");
    return guarded([&] { *out = new dnaids_dataset{dataset->impl.prefix(n)}; });
}

int dnaids_dataset_resolve_labels(dnaids_dataset* dataset, const dnaids_taxonomy* taxonomy) {
    if (!dataset || !taxonomy) return arg_error("null argument to dnaids_dataset_resolve_labels");
    return guarded([&] { dataset->impl.resolve_labels(taxonomy->impl); });
}

int dnaids_dataset_label(const dnaids_dataset* dataset, size_t index, int* out) {
    if (!dataset || !out) return arg_error("null argument to dnaids_dataset_label");
    return guarded([&] {
        if (index >= dataset->impl.size())
            dnaids::raise(dnaids::ErrorCode::Range, "record index out of range");
        const auto& rec = dataset->impl[index];
        if (!rec.label_class)
            dnaids::raise(dnaids::ErrorCode::Contract, "dataset labels are not resolved");
        *out = static_cast<int>(*rec.label_class);
    });
}

void dnaids_dataset_destroy(dnaids_dataset* dataset) { delete dataset; }

/* --- encoder ------------------------------------------------------------- */

int dnaids_encoder_fit(const dnaids_dataset* dataset, const dnaids_schema* schema, size_t levels,
                       dnaids_encoder** out) {
    if (!dataset || !schema || !out) return arg_error("null argument to dnaids_encoder_fit");
    return guarded([&] {
        auto stats = dnaids::feature_stats(dataset->impl, schema->impl);
        *out = new dnaids_encoder{dnaids::EncoderModel::fit(stats, schema->impl, levels)};
    });
}

int dnaids_encoder_save(const dnaids_encoder* encoder, const char* path) {
    if (!encoder || !path) return arg_error("null argument to dnaids_encoder_save");
    return guarded([&] { encoder->impl.save(path); });
}

int dnaids_encoder_load(const char* path, dnaids_encoder** out) {
    if (!path || !out) return arg_error("null argument to dnaids_encoder_load");
    return guarded([&] { *out = new dnaids_encoder{dnaids::EncoderModel::load(path)}; });
}

int dnaids_encoder_total_length(const dnaids_encoder* encoder, size_t* out) {
    if (!encoder || !out) return arg_error("null argument to dnaids_encoder_total_length");
    *out = encoder->impl.total_length();
    return DNAIDS_OK;
}

int dnaids_encoder_fingerprint(const dnaids_encoder* encoder, char* buf, size_t buf_len) {
    if (!encoder || !buf) return arg_error("null argument to dnaids_encoder_fingerprint");
    return guarded([&] {
        const std::string& fp = encoder->impl.fingerprint();
        if (buf_len < fp.size() + 1)
            dnaids::raise(dnaids::ErrorCode::Range, "fingerprint buffer needs 17 bytes");
        std::memcpy(buf, fp.c_str(), fp.size() + 1);
    });
}

int dnaids_encoder_encode(const dnaids_encoder* encoder, const dnaids_dataset* dataset,
                          size_t index, char* buf, size_t buf_len, size_t* unknown_count) {
    if (!encoder || !dataset || !buf) return arg_error("null argument to dnaids_encoder_encode");
    return guarded([&] {
        if (index >= dataset->impl.size())
            dnaids::raise(dnaids::ErrorCode::Range, "record index out of range");
        dnaids::EncodeResult result = encoder->impl.encode(dataset->impl[index]);
        if (buf_len < result.sequence.size() + 1)
            dnaids::raise(dnaids::ErrorCode::Range,
                          "sequence buffer needs " + std::to_string(result.sequence.size() + 1) +
                              " bytes");
        std::memcpy(buf, result.sequence.c_str(), result.sequence.size() + 1);
        if (unknown_count) *unknown_count = result.unknown_count;
    });
}

void dnaids_encoder_destroy(dnaids_encoder* encoder) { delete encoder; }

/* --- signature database --------------------------------------------------- */

int dnaids_sigdb_build(const dnaids_dataset* dataset, const dnaids_schema* schema,
                       const dnaids_encoder* encoder, int keep_conflicts, int span,
                       dnaids_sigdb** out) {
    if (!dataset || !schema || !encoder || !out)
        return arg_error("null argument to dnaids_sigdb_build");
    return guarded([&] {
        std::size_t offset = 0;
        std::size_t length = encoder->impl.total_length();
        if (span != DNAIDS_SPAN_RECORD) {
            dnaids::FeatureGroup group;
            switch (span) {
                case DNAIDS_SPAN_BASIC: group = dnaids::FeatureGroup::Basic; break;
                case DNAIDS_SPAN_CONTENT: group = dnaids::FeatureGroup::Content; break;
                case DNAIDS_SPAN_TIME_TRAFFIC: group = dnaids::FeatureGroup::TimeTraffic; break;
                case DNAIDS_SPAN_HOST_TRAFFIC: group = dnaids::FeatureGroup::HostTraffic; break;
                default: dnaids::raise(dnaids::ErrorCode::Argument, "invalid span value");
            }
            std::tie(offset, length) = dnaids::group_span(encoder->impl, schema->impl, group);
        }

        std::vector<dnaids::SignatureDatabase::LabelledSequence> encoded;
        encoded.reserve(dataset->impl.size());
        for (const auto& rec : dataset->impl.records()) {
            if (!rec.label_class)
                dnaids::raise(dnaids::ErrorCode::Contract, "dataset labels are not resolved");
            dnaids::EncodeResult result = encoder->impl.encode(rec);
            encoded.emplace_back(result.sequence.substr(offset, length), *rec.label_class);
        }
        auto policy = keep_conflicts ? dnaids::ConflictPolicy::KeepConflicts
                                     : dnaids::ConflictPolicy::DropConflicts;
        *out = new dnaids_sigdb{dnaids::SignatureDatabase::build(
            encoded, encoder->impl.fingerprint(), policy)};
    });
}

int dnaids_sigdb_save(const dnaids_sigdb* db, const char* path) {
    if (!db || !path) return arg_error("null argument to dnaids_sigdb_save");
    return guarded([&] { db->impl.save(path); });
}

int dnaids_sigdb_load(const char* path, dnaids_sigdb** out) {
    if (!path || !out) return arg_error("null argument to dnaids_sigdb_load");
    return guarded([&] { *out = new dnaids_sigdb{dnaids::SignatureDatabase::load(path)}; });
}

int dnaids_sigdb_merge(const dnaids_sigdb* a, const dnaids_sigdb* b, dnaids_sigdb** out) {
    if (!a || !b || !out) return arg_error("null argument to dnaids_sigdb_merge");
    return guarded(
        [&] { *out = new dnaids_sigdb{dnaids::SignatureDatabase::merge(a->impl, b->impl)}; });
}

int dnaids_sigdb_count(const dnaids_sigdb* db, int cls, size_t* out) {
    if (!db || !out) return arg_error("null argument to dnaids_sigdb_count");
    return guarded([&] {
        if (cls < 0) {
            *out = db->impl.size();
            return;
        }
        dnaids::LabelClass label = class_of(cls);
        if (!dnaids::is_attack_class(label))
            dnaids::raise(dnaids::ErrorCode::Argument, "signatures never carry class normal");
        *out = db->impl.count_for(label);
    });
}

int dnaids_sigdb_conflicts(const dnaids_sigdb* db, uint64_t* out) {
    if (!db || !out) return arg_error("null argument to dnaids_sigdb_conflicts");
    *out = db->impl.conflict_count();
    return DNAIDS_OK;
}

void dnaids_sigdb_destroy(dnaids_sigdb* db) { delete db; }

/* --- detection ------------------------------------------------------------ */

int dnaids_weights_load(const char* path, double* out) {
    if (!path || !out) return arg_error("null argument to dnaids_weights_load");
    return guarded([&] {
        dnaids::WeightTable table = dnaids::WeightTable::load(path);
        for (std::size_t i = 0; i < 4; ++i) out[i] = table.values()[i];
    });
}

int dnaids_engine_create(const dnaids_sigdb* db, int mode, double tau, const double* weights,
                         dnaids_engine** out) {
    if (!db || !out) return arg_error("null argument to dnaids_engine_create");
    return guarded([&] {
        dnaids::DetectionConfig config;
        config.mode = mode_of(mode);
        config.tau = tau;
        if (weights)
            config.weights = dnaids::WeightTable(weights[0], weights[1], weights[2], weights[3]);
        *out = new dnaids_engine{dnaids::MatchEngine::build(db->impl, std::move(config))};
    });
}

int dnaids_engine_signature_count(const dnaids_engine* engine, size_t* out) {
    if (!engine || !out) return arg_error("null argument to dnaids_engine_signature_count");
    *out = engine->impl.signature_count();
    return DNAIDS_OK;
}

int dnaids_engine_classify(const dnaids_engine* engine, const char* sequence, int* is_attack,
                           int* cls, int64_t* signature_id, double* score) {
    if (!engine || !sequence) return arg_error("null argument to dnaids_engine_classify");
    return guarded([&] {
        dnaids::Verdict v = engine->impl.classify(sequence);
        fill_verdict_fields(v, is_attack, cls, signature_id, score);
    });
}

void dnaids_engine_destroy(dnaids_engine* engine) { delete engine; }

int dnaids_detect(const dnaids_engine* engine, const dnaids_encoder* encoder,
                  const dnaids_dataset* dataset, unsigned workers, dnaids_verdicts** out) {
    if (!engine || !encoder || !dataset || !out)
        return arg_error("null argument to dnaids_detect");
    return guarded([&] {
        *out = new dnaids_verdicts{
            dnaids::detect(dataset->impl, encoder->impl, engine->impl, workers)};
    });
}

int dnaids_verdicts_size(const dnaids_verdicts* verdicts, size_t* out) {
    if (!verdicts || !out) return arg_error("null argument to dnaids_verdicts_size");
    *out = verdicts->impl.size();
    return DNAIDS_OK;
}

int dnaids_verdicts_get(const dnaids_verdicts* verdicts, size_t index, size_t* source_index,
                        int* is_attack, int* cls, int64_t* signature_id, double* score,
                        size_t* unknown_count) {
    if (!verdicts) return arg_error("null argument to dnaids_verdicts_get");
    return guarded([&] {
        if (index >= verdicts->impl.size())
            dnaids::raise(dnaids::ErrorCode::Range, "verdict index out of range");
        const dnaids::Verdict& v = verdicts->impl[index];
        if (source_index) *source_index = v.source_index;
        fill_verdict_fields(v, is_attack, cls, signature_id, score);
        if (unknown_count) *unknown_count = v.unknown_count;
    });
}

int dnaids_verdicts_attack_total(const dnaids_verdicts* verdicts, size_t* out) {
    if (!verdicts || !out) return arg_error("null argument to dnaids_verdicts_attack_total");
    std::size_t total = 0;
    for (const auto& v : verdicts->impl)
        if (v.attack) ++total;
    *out = total;
    return DNAIDS_OK;
}

int dnaids_verdicts_write_log(const dnaids_verdicts* verdicts, const char* path) {
    if (!verdicts || !path) return arg_error("null argument to dnaids_verdicts_write_log");
    return guarded([&] { dnaids::write_alert_log(verdicts->impl, path); });
}

void dnaids_verdicts_destroy(dnaids_verdicts* verdicts) { delete verdicts; }

/* --- evaluation ------------------------------------------------------------ */

int dnaids_score(const dnaids_verdicts* verdicts, const dnaids_dataset* dataset,
                 dnaids_confusion* out) {
    if (!verdicts || !dataset || !out) return arg_error("null argument to dnaids_score");
    return guarded([&] {
        auto truths = dataset->impl.label_classes();
        dnaids::ConfusionCounts counts = dnaids::score_run(verdicts->impl, truths);
        out->tp = counts.tp;
        out->fp = counts.fp;
        out->tn = counts.tn;
        out->fn = counts.fn;
    });
}

int dnaids_score_class(const dnaids_verdicts* verdicts, const dnaids_dataset* dataset, int cls,
                       uint64_t* detected, uint64_t* missed) {
    if (!verdicts || !dataset) return arg_error("null argument to dnaids_score_class");
    return guarded([&] {
        dnaids::LabelClass label = class_of(cls);
        auto truths = dataset->impl.label_classes();
        dnaids::ConfusionCounts counts = dnaids::score_run(verdicts->impl, truths);
        auto it = counts.per_class.find(label);
        const auto tally = it == counts.per_class.end() ? dnaids::ConfusionCounts::ClassTally{}
                                                        : it->second;
        if (detected) *detected = tally.detected_as_class;
        if (missed) *missed = tally.missed;
    });
}

int dnaids_series_compute(const dnaids_dataset* dataset, const dnaids_encoder* encoder,
                          const dnaids_engine* engine, const size_t* sizes, size_t n_sizes,
                          unsigned workers, dnaids_series** out) {
    if (!dataset || !encoder || !engine || !out || (!sizes && n_sizes > 0))
        return arg_error("null argument to dnaids_series_compute");
    return guarded([&] {
        auto truths = dataset->impl.label_classes();
        *out = new dnaids_series{dnaids::fp_series(dataset->impl, truths, encoder->impl,
                                                   engine->impl, {sizes, n_sizes}, workers)};
    });
}

int dnaids_series_size(const dnaids_series* series, size_t* out) {
    if (!series || !out) return arg_error("null argument to dnaids_series_size");
    *out = series->impl.size();
    return DNAIDS_OK;
}

int dnaids_series_get(const dnaids_series* series, size_t index, size_t* samples, uint64_t* fp,
                      uint64_t* fn) {
    if (!series) return arg_error("null argument to dnaids_series_get");
    return guarded([&] {
        if (index >= series->impl.size())
            dnaids::raise(dnaids::ErrorCode::Range, "series index out of range");
        const dnaids::SeriesPoint& point = series->impl[index];
        if (samples) *samples = point.samples;
        if (fp) *fp = point.fp;
        if (fn) *fn = point.fn;
    });
}

int dnaids_series_write_csv(const dnaids_series* series, const char* path) {
    if (!series || !path) return arg_error("null argument to dnaids_series_write_csv");
    return guarded([&] { dnaids::write_series_csv(series->impl, path); });
}

void dnaids_series_destroy(dnaids_series* series) { delete series; }

} // extern "C"
