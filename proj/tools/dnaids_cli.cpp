// Command-line front end for the dnaids shared library. Everything goes
// through the public C API.

#include "dnaids.h"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace {

// Exit codes: 0 success, 1 data error, 2 missing input, 3 fingerprint
// mismatch, 4 range error, 64 usage error.
int exit_code_of(int status) {
    switch (status) {
        case DNAIDS_OK: return 0;
        case DNAIDS_E_IO: return 2;
        case DNAIDS_E_FINGERPRINT: return 3;
        case DNAIDS_E_RANGE: return 4;
        case DNAIDS_E_ARG: return 64;
        default: return 1;
    }
}

// Thrown out of command bodies; main maps it onto an exit code.
struct ApiFailure {
    int status;
};

struct UsageFailure {
    std::string message;
};

void check(int status) {
    if (status != DNAIDS_OK) throw ApiFailure{status};
}

template <typename T>
using Handle = std::unique_ptr<T, void (*)(T*)>;

Handle<dnaids_schema> load_schema(const std::string& path) {
    dnaids_schema* raw = nullptr;
    check(dnaids_schema_load(path.c_str(), 1, &raw));
    return {raw, dnaids_schema_destroy};
}

Handle<dnaids_taxonomy> load_taxonomy(const std::string& path) {
    dnaids_taxonomy* raw = nullptr;
    check(dnaids_taxonomy_load(path.c_str(), &raw));
    return {raw, dnaids_taxonomy_destroy};
}

Handle<dnaids_dataset> load_dataset(const std::string& path, const dnaids_schema* schema,
                                    bool skip_bad) {
    dnaids_dataset* raw = nullptr;
    check(dnaids_dataset_load(path.c_str(), schema, skip_bad ? 1 : 0, &raw));
    return {raw, dnaids_dataset_destroy};
}

Handle<dnaids_encoder> load_encoder(const std::string& path) {
    dnaids_encoder* raw = nullptr;
    check(dnaids_encoder_load(path.c_str(), &raw));
    return {raw, dnaids_encoder_destroy};
}

Handle<dnaids_sigdb> load_sigdb(const std::string& path) {
    dnaids_sigdb* raw = nullptr;
    check(dnaids_sigdb_load(path.c_str(), &raw));
    return {raw, dnaids_sigdb_destroy};
}

int mode_value(const std::string& name) {
    if (name == "exact") return DNAIDS_MODE_EXACT;
    if (name == "substring") return DNAIDS_MODE_SUBSTRING;
    if (name == "weighted") return DNAIDS_MODE_WEIGHTED;
    throw UsageFailure{"unknown mode: " + name};
}

int span_value(const std::string& name) {
    if (name == "record") return DNAIDS_SPAN_RECORD;
    if (name == "basic") return DNAIDS_SPAN_BASIC;
    if (name == "content") return DNAIDS_SPAN_CONTENT;
    if (name == "time_traffic") return DNAIDS_SPAN_TIME_TRAFFIC;
    if (name == "host_traffic") return DNAIDS_SPAN_HOST_TRAFFIC;
    throw UsageFailure{"unknown span: " + name};
}

Handle<dnaids_engine> make_engine(const dnaids_sigdb* db, const std::string& mode, double tau,
                                  const std::string& weights_path) {
    double weights[4];
    const double* weights_ptr = nullptr;
    if (!weights_path.empty()) {
        check(dnaids_weights_load(weights_path.c_str(), weights));
        weights_ptr = weights;
    }
    dnaids_engine* raw = nullptr;
    check(dnaids_engine_create(db, mode_value(mode), tau, weights_ptr, &raw));
    size_t count = 0;
    check(dnaids_engine_signature_count(raw, &count));
    if (count == 0)
        std::fprintf(stderr,
                     "warning: signature database is empty; everything classifies as normal\n");
    return {raw, dnaids_engine_destroy};
}

struct CommonOptions {
    std::string config;
    std::string schema;
    std::string taxonomy;
    std::string train;
    std::string test;
    std::string encoder;
    std::string db;
    std::string weights;
    std::string mode = "exact";
    std::string policy = "drop_conflicts";
    std::string span = "record";
    std::string out_log = "alerts.log";
    std::string out_series = "series.csv";
    std::string tau = "0";
    std::string levels = "256";
    std::string sizes;
    std::string index;
    bool skip_bad = false;
    std::string workers = "1";

    double tau_value() const { return parse_real("tau", tau); }
    std::size_t levels_value() const { return parse_count("levels", levels); }
    unsigned workers_value() const {
        return static_cast<unsigned>(parse_count("workers", workers));
    }
    std::size_t index_value() const { return parse_count("index", index); }

    std::vector<std::size_t> sizes_value() const {
        std::vector<std::size_t> out;
        if (sizes.empty()) return out;
        std::size_t start = 0;
        while (start <= sizes.size()) {
            const std::size_t comma = sizes.find(',', start);
            const std::string part =
                sizes.substr(start, comma == std::string::npos ? std::string::npos
                                                               : comma - start);
            out.push_back(parse_count("sizes", part));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        return out;
    }

private:
    static double parse_real(const char* key, const std::string& value) {
        try {
            std::size_t used = 0;
            const double v = std::stod(value, &used);
            if (used == value.size()) return v;
        } catch (...) {
        }
        throw UsageFailure{std::string("bad value for --") + key + ": " + value};
    }
    static std::size_t parse_count(const char* key, const std::string& value) {
        try {
            std::size_t used = 0;
            const unsigned long long v = std::stoull(value, &used);
            if (used == value.size()) return static_cast<std::size_t>(v);
        } catch (...) {
        }
        throw UsageFailure{std::string("bad value for --") + key + ": " + value};
    }
};

// Settable option slots by config-file key. Flags given on the command line
// win over file values.
std::map<std::string, std::string*> option_slots(CommonOptions& opt) {
    return {{"schema", &opt.schema},     {"taxonomy", &opt.taxonomy},
            {"train", &opt.train},       {"test", &opt.test},
            {"encoder", &opt.encoder},   {"db", &opt.db},
            {"weights", &opt.weights},   {"mode", &opt.mode},
            {"policy", &opt.policy},     {"span", &opt.span},
            {"out-log", &opt.out_log},   {"out-series", &opt.out_series},
            {"tau", &opt.tau},           {"levels", &opt.levels},
            {"sizes", &opt.sizes},       {"index", &opt.index},
            {"workers", &opt.workers}};
}

void merge_config_file(CLI::App* cmd, CommonOptions& opt) {
    if (opt.config.empty()) return;
    std::ifstream in(opt.config);
    if (!in) throw UsageFailure{"cannot open config file: " + opt.config};

    auto slots = option_slots(opt);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageFailure{opt.config + ":" + std::to_string(line_no) +
                               ": expected key=value"};
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);

        if (key == "skip-bad") {
            if (cmd->count("--skip-bad") == 0) opt.skip_bad = value == "true" || value == "1";
            continue;
        }
        auto slot = slots.find(key);
        if (slot == slots.end())
            throw UsageFailure{opt.config + ":" + std::to_string(line_no) + ": unknown key " +
                               key};
        const CLI::Option* flag = cmd->get_option_no_throw("--" + key);
        if (flag == nullptr)
            throw UsageFailure{opt.config + ":" + std::to_string(line_no) + ": key " + key +
                               " does not apply to this command"};
        if (flag->count() == 0) *slot->second = value;
    }
}

void require_all(const std::vector<std::pair<const char*, const std::string*>>& required) {
    for (const auto& [name, value] : required) {
        if (value->empty()) throw UsageFailure{std::string("--") + name + " is required"};
    }
}

int run_build(const CommonOptions& opt) {
    require_all({{"schema", &opt.schema},
                 {"taxonomy", &opt.taxonomy},
                 {"train", &opt.train},
                 {"encoder", &opt.encoder},
                 {"db", &opt.db}});
    if (opt.policy != "keep_conflicts" && opt.policy != "drop_conflicts")
        throw UsageFailure{"unknown policy: " + opt.policy};

    auto schema = load_schema(opt.schema);
    auto taxonomy = load_taxonomy(opt.taxonomy);
    auto train = load_dataset(opt.train, schema.get(), opt.skip_bad);
    check(dnaids_dataset_resolve_labels(train.get(), taxonomy.get()));

    dnaids_encoder* enc_raw = nullptr;
    check(dnaids_encoder_fit(train.get(), schema.get(), opt.levels_value(), &enc_raw));
    Handle<dnaids_encoder> encoder{enc_raw, dnaids_encoder_destroy};

    dnaids_sigdb* db_raw = nullptr;
    check(dnaids_sigdb_build(train.get(), schema.get(), encoder.get(),
                             opt.policy == "keep_conflicts" ? 1 : 0, span_value(opt.span),
                             &db_raw));
    Handle<dnaids_sigdb> db{db_raw, dnaids_sigdb_destroy};

    check(dnaids_encoder_save(encoder.get(), opt.encoder.c_str()));
    check(dnaids_sigdb_save(db.get(), opt.db.c_str()));

    size_t skipped = 0;
    check(dnaids_dataset_skipped(train.get(), &skipped));
    if (skipped > 0) std::fprintf(stderr, "warning: skipped %zu malformed lines\n", skipped);

    size_t n_records = 0;
    check(dnaids_dataset_size(train.get(), &n_records));
    size_t length = 0;
    check(dnaids_encoder_total_length(encoder.get(), &length));
    char fp[17];
    check(dnaids_encoder_fingerprint(encoder.get(), fp, sizeof fp));

    static const char* kClassNames[] = {"normal", "dos", "probe", "r2l", "u2r"};
    std::printf("records: %zu\n", n_records);
    std::printf("encoder: fp=%s length=%zu levels=%zu\n", fp, length, opt.levels_value());
    size_t total = 0;
    check(dnaids_sigdb_count(db.get(), -1, &total));
    std::printf("signatures: total=%zu", total);
    for (int cls = DNAIDS_CLASS_DOS; cls <= DNAIDS_CLASS_U2R; ++cls) {
        size_t count = 0;
        check(dnaids_sigdb_count(db.get(), cls, &count));
        std::printf(" %s=%zu", kClassNames[cls], count);
    }
    std::printf("\n");
    uint64_t conflicts = 0;
    check(dnaids_sigdb_conflicts(db.get(), &conflicts));
    std::printf("conflicts: %llu\n", static_cast<unsigned long long>(conflicts));
    return 0;
}

int run_detect(const CommonOptions& opt) {
    require_all({{"schema", &opt.schema},
                 {"encoder", &opt.encoder},
                 {"db", &opt.db},
                 {"test", &opt.test},
                 {"out-log", &opt.out_log}});

    auto schema = load_schema(opt.schema);
    auto encoder = load_encoder(opt.encoder);
    auto db = load_sigdb(opt.db);
    auto engine = make_engine(db.get(), opt.mode, opt.tau_value(), opt.weights);
    auto test = load_dataset(opt.test, schema.get(), opt.skip_bad);

    dnaids_verdicts* raw = nullptr;
    check(dnaids_detect(engine.get(), encoder.get(), test.get(), opt.workers_value(), &raw));
    Handle<dnaids_verdicts> verdicts{raw, dnaids_verdicts_destroy};

    check(dnaids_verdicts_write_log(verdicts.get(), opt.out_log.c_str()));

    size_t total = 0;
    size_t attacks = 0;
    check(dnaids_verdicts_size(verdicts.get(), &total));
    check(dnaids_verdicts_attack_total(verdicts.get(), &attacks));
    std::printf("records: %zu\nattack: %zu\nnormal: %zu\n", total, attacks, total - attacks);
    return 0;
}

int run_evaluate(const CommonOptions& opt) {
    require_all({{"schema", &opt.schema},
                 {"taxonomy", &opt.taxonomy},
                 {"encoder", &opt.encoder},
                 {"db", &opt.db},
                 {"test", &opt.test},
                 {"out-series", &opt.out_series}});

    auto schema = load_schema(opt.schema);
    auto taxonomy = load_taxonomy(opt.taxonomy);
    auto encoder = load_encoder(opt.encoder);
    auto db = load_sigdb(opt.db);
    auto engine = make_engine(db.get(), opt.mode, opt.tau_value(), opt.weights);
    auto test = load_dataset(opt.test, schema.get(), opt.skip_bad);
    check(dnaids_dataset_resolve_labels(test.get(), taxonomy.get()));

    size_t n_records = 0;
    check(dnaids_dataset_size(test.get(), &n_records));
    std::vector<std::size_t> sizes = opt.sizes_value();
    if (sizes.empty()) sizes.push_back(n_records);
    for (std::size_t i = 1; i < sizes.size(); ++i)
        if (sizes[i] < sizes[i - 1]) throw UsageFailure{"--sizes must be ascending"};

    dnaids_series* series_raw = nullptr;
    check(dnaids_series_compute(test.get(), encoder.get(), engine.get(), sizes.data(),
                                sizes.size(), opt.workers_value(), &series_raw));
    Handle<dnaids_series> series{series_raw, dnaids_series_destroy};
    check(dnaids_series_write_csv(series.get(), opt.out_series.c_str()));

    // Final counts cover the largest requested prefix.
    dnaids_dataset* prefix_raw = nullptr;
    check(dnaids_dataset_prefix(test.get(), sizes.back(), &prefix_raw));
    Handle<dnaids_dataset> prefix{prefix_raw, dnaids_dataset_destroy};

    dnaids_verdicts* verdicts_raw = nullptr;
    check(dnaids_detect(engine.get(), encoder.get(), prefix.get(), opt.workers_value(),
                        &verdicts_raw));
    Handle<dnaids_verdicts> verdicts{verdicts_raw, dnaids_verdicts_destroy};

    dnaids_confusion counts{};
    check(dnaids_score(verdicts.get(), prefix.get(), &counts));
    std::printf("samples: %zu\n", sizes.back());
    std::printf("tp: %llu\nfp: %llu\ntn: %llu\nfn: %llu\n",
                static_cast<unsigned long long>(counts.tp),
                static_cast<unsigned long long>(counts.fp),
                static_cast<unsigned long long>(counts.tn),
                static_cast<unsigned long long>(counts.fn));

    static const char* kClassNames[] = {"normal", "dos", "probe", "r2l", "u2r"};
    for (int cls = DNAIDS_CLASS_NORMAL; cls <= DNAIDS_CLASS_U2R; ++cls) {
        uint64_t detected = 0;
        uint64_t missed = 0;
        check(dnaids_score_class(verdicts.get(), prefix.get(), cls, &detected, &missed));
        std::printf("class %s: detected=%llu missed=%llu\n", kClassNames[cls],
                    static_cast<unsigned long long>(detected),
                    static_cast<unsigned long long>(missed));
    }
    return 0;
}

int run_encode(const CommonOptions& opt) {
    require_all({{"schema", &opt.schema}, {"encoder", &opt.encoder}, {"test", &opt.test}});

    auto schema = load_schema(opt.schema);
    auto encoder = load_encoder(opt.encoder);
    auto test = load_dataset(opt.test, schema.get(), opt.skip_bad);

    size_t n_records = 0;
    check(dnaids_dataset_size(test.get(), &n_records));
    size_t length = 0;
    check(dnaids_encoder_total_length(encoder.get(), &length));

    std::vector<char> buf(length + 1);
    auto print_one = [&](size_t i) {
        size_t unknown = 0;
        check(dnaids_encoder_encode(encoder.get(), test.get(), i, buf.data(), buf.size(),
                                    &unknown));
        std::printf("%zu\t%s\t%zu\n", i, buf.data(), unknown);
    };
    if (!opt.index.empty()) {
        print_one(opt.index_value());
    } else {
        for (size_t i = 0; i < n_records; ++i) print_one(i);
    }
    return 0;
}

void add_common_flags(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--config", opt.config,
                    "key=value defaults; flags given on the command line win");
    cmd->add_flag("--skip-bad", opt.skip_bad, "Skip malformed input lines instead of failing");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Signature-based intrusion detection over nucleotide-encoded connection records"};
    app.require_subcommand(1);

    CommonOptions opt;

    CLI::App* build = app.add_subcommand(
        "build", "Fit the encoder and build the signature database from labelled training data");
    build->add_option("--schema", opt.schema, "Record schema file");
    build->add_option("--taxonomy", opt.taxonomy, "Attack subtype taxonomy file");
    build->add_option("--train", opt.train, "Labelled training data");
    build->add_option("--encoder", opt.encoder, "Encoder model output path");
    build->add_option("--db", opt.db, "Signature database output path");
    build->add_option("--levels", opt.levels, "Continuous quantization levels (default 256)");
    build->add_option("--policy", opt.policy, "drop_conflicts | keep_conflicts");
    build->add_option("--span", opt.span,
                      "record | basic | content | time_traffic | host_traffic");
    add_common_flags(build, opt);

    CLI::App* detect = app.add_subcommand(
        "detect", "Classify records against a signature database and write the alert log");
    detect->add_option("--schema", opt.schema, "Record schema file");
    detect->add_option("--encoder", opt.encoder, "Encoder model file");
    detect->add_option("--db", opt.db, "Signature database file");
    detect->add_option("--test", opt.test, "Records to classify");
    detect->add_option("--mode", opt.mode, "exact | substring | weighted");
    detect->add_option("--tau", opt.tau, "Weighted-mode attack threshold (default 0)");
    detect->add_option("--weights", opt.weights, "Weight table override file");
    detect->add_option("--out-log", opt.out_log, "Alert log output path");
    detect->add_option("--workers", opt.workers, "Detection worker threads");
    add_common_flags(detect, opt);

    CLI::App* evaluate = app.add_subcommand(
        "evaluate", "Score labelled records and emit the false-positive series");
    evaluate->add_option("--schema", opt.schema, "Record schema file");
    evaluate->add_option("--taxonomy", opt.taxonomy, "Attack subtype taxonomy file");
    evaluate->add_option("--encoder", opt.encoder, "Encoder model file");
    evaluate->add_option("--db", opt.db, "Signature database file");
    evaluate->add_option("--test", opt.test, "Labelled records to score");
    evaluate->add_option("--mode", opt.mode, "exact | substring | weighted");
    evaluate->add_option("--tau", opt.tau, "Weighted-mode attack threshold (default 0)");
    evaluate->add_option("--weights", opt.weights, "Weight table override file");
    evaluate->add_option("--sizes", opt.sizes, "Ascending prefix sizes, e.g. 10000,20000,30000");
    evaluate->add_option("--out-series", opt.out_series, "Series CSV output path");
    evaluate->add_option("--workers", opt.workers, "Detection worker threads");
    add_common_flags(evaluate, opt);

    CLI::App* encode =
        app.add_subcommand("encode", "Print nucleotide sequences of records (debug)");
    encode->add_option("--schema", opt.schema, "Record schema file");
    encode->add_option("--encoder", opt.encoder, "Encoder model file");
    encode->add_option("--test", opt.test, "Records to encode");
    encode->add_option("--index", opt.index, "Encode only this record");
    add_common_flags(encode, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;
    }

    try {
        if (build->parsed()) {
            merge_config_file(build, opt);
            return run_build(opt);
        }
        if (detect->parsed()) {
            merge_config_file(detect, opt);
            return run_detect(opt);
        }
        if (evaluate->parsed()) {
            merge_config_file(evaluate, opt);
            return run_evaluate(opt);
        }
        if (encode->parsed()) {
            merge_config_file(encode, opt);
            return run_encode(opt);
        }
    } catch (const UsageFailure& failure) {
        std::fprintf(stderr, "error: %s\n", failure.message.c_str());
        return 64;
    } catch (const ApiFailure& failure) {
        std::fprintf(stderr, "error: %s\n", dnaids_last_error());
        return exit_code_of(failure.status);
    }
    return 64;
}
