#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/errors.hpp"
#include "core/report.hpp"

#include "support/tempdir.hpp"

#include <random>

using namespace dnaids;

namespace {

Verdict attack_verdict(std::size_t source, LabelClass cls, std::uint32_t id, double score = 0) {
    Verdict v;
    v.source_index = source;
    v.attack = true;
    v.cls = cls;
    v.signature_id = id;
    v.score = score;
    return v;
}

Verdict normal_verdict(std::size_t source, double score = 0) {
    Verdict v;
    v.source_index = source;
    v.score = score;
    return v;
}

// Shared fixture pipeline: exact-mode engine over the tiny train split. The
// test file places one false positive at record 2 (a normal record replaying
// the neptune template) and one false negative at record 4.
struct Pipeline {
    RecordSchema schema = RecordSchema::load(std::string(DNAIDS_DATA_DIR) + "/kdd_schema.txt");
    AttackTaxonomy taxonomy =
        AttackTaxonomy::load(std::string(DNAIDS_DATA_DIR) + "/attack_taxonomy.txt");
    Dataset train;
    Dataset test;
    EncoderModel model;
    SignatureDatabase db;
    MatchEngine engine;

    Pipeline()
        : train(load_dataset(std::string(DNAIDS_FIXTURE_DIR) + "/tiny_train.txt", schema)),
          test(load_dataset(std::string(DNAIDS_FIXTURE_DIR) + "/tiny_test.txt", schema)),
          model(EncoderModel::fit(feature_stats(train, schema), schema)),
          db(build_db()),
          engine(MatchEngine::build(db, DetectionConfig{})) {
        test.resolve_labels(taxonomy);
    }

    SignatureDatabase build_db() {
        train.resolve_labels(taxonomy);
        std::vector<SignatureDatabase::LabelledSequence> encoded;
        for (std::size_t i = 0; i < train.size(); ++i)
            encoded.emplace_back(model.encode(train[i]).sequence, *train[i].label_class);
        return SignatureDatabase::build(encoded, model.fingerprint(),
                                        ConflictPolicy::DropConflicts);
    }
};

} // namespace

TEST_CASE("score_run tallies the documented example") {
    std::vector<LabelClass> truths = {LabelClass::Normal, LabelClass::Dos, LabelClass::Probe};
    std::vector<Verdict> verdicts = {attack_verdict(0, LabelClass::Dos, 0),
                                     attack_verdict(1, LabelClass::Dos, 0),
                                     normal_verdict(2)};
    ConfusionCounts counts = score_run(verdicts, truths);
    CHECK(counts.tp == 1);
    CHECK(counts.fp == 1);
    CHECK(counts.fn == 1);
    CHECK(counts.tn == 0);
    CHECK(counts.total() == 3);

    // Exact-class agreement: the DoS record was named dos, the Probe one missed.
    CHECK(counts.per_class[LabelClass::Dos].detected_as_class == 1);
    CHECK(counts.per_class[LabelClass::Dos].missed == 0);
    CHECK(counts.per_class[LabelClass::Probe].detected_as_class == 0);
    CHECK(counts.per_class[LabelClass::Probe].missed == 1);
    CHECK(counts.per_class[LabelClass::Normal].missed == 1);
}

TEST_CASE("score_run edge cases") {
    CHECK(score_run({}, {}).total() == 0);

    std::vector<LabelClass> truths = {LabelClass::Dos};
    std::vector<Verdict> verdicts = {attack_verdict(0, LabelClass::Dos, 0),
                                     normal_verdict(1)};
    CHECK_THROWS_WITH_AS(score_run(verdicts, truths), doctest::Contains("length mismatch"),
                         Error);

    SUBCASE("all verdicts correct means no false counts") {
        std::vector<LabelClass> t = {LabelClass::Normal, LabelClass::Dos};
        std::vector<Verdict> v = {normal_verdict(0), attack_verdict(1, LabelClass::Dos, 0)};
        ConfusionCounts counts = score_run(v, t);
        CHECK(counts.fp == 0);
        CHECK(counts.fn == 0);
    }
}

TEST_CASE("conservation: tp+fn and fp+tn recover the ground truth totals") {
    std::mt19937 rng(7);
    for (int round = 0; round < 50; ++round) {
        const std::size_t n = rng() % 200;
        std::vector<LabelClass> truths;
        std::vector<Verdict> verdicts;
        std::size_t attacks = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const bool truth_attack = rng() % 2 == 0;
            attacks += truth_attack;
            truths.push_back(truth_attack ? kAttackClasses[rng() % 4] : LabelClass::Normal);
            if (rng() % 2 == 0)
                verdicts.push_back(attack_verdict(i, kAttackClasses[rng() % 4], 0));
            else
                verdicts.push_back(normal_verdict(i));
        }
        ConfusionCounts counts = score_run(verdicts, truths);
        CHECK(counts.tp + counts.fn == attacks);
        CHECK(counts.fp + counts.tn == n - attacks);
        CHECK(counts.total() == n);

        std::uint64_t per_class_total = 0;
        for (const auto& [cls, tally] : counts.per_class)
            per_class_total += tally.detected_as_class + tally.missed;
        CHECK(per_class_total == n);
    }
}

TEST_CASE("fp_series counts cumulatively over the fixture") {
    Pipeline p;
    auto truths = p.test.label_classes();

    // Record 0: neptune replay -> TP. Record 2: normal with attack values ->
    // FP. Record 4: warezclient unseen in training -> FN.
    std::vector<std::size_t> sizes = {1, 3, 5};
    auto series = fp_series(p.test, truths, p.model, p.engine, sizes);
    REQUIRE(series.size() == 3);
    CHECK(series[0] == SeriesPoint{1, 0, 0});
    CHECK(series[1] == SeriesPoint{3, 1, 0});
    CHECK(series[2] == SeriesPoint{5, 1, 1});

    SUBCASE("single zero size gives the zero point") {
        std::vector<std::size_t> zero = {0};
        auto s = fp_series(p.test, truths, p.model, p.engine, zero);
        REQUIRE(s.size() == 1);
        CHECK(s[0] == SeriesPoint{0, 0, 0});
    }
    SUBCASE("last point equals a full score_run") {
        std::vector<std::size_t> full = {p.test.size()};
        auto s = fp_series(p.test, truths, p.model, p.engine, full);
        auto verdicts = detect(p.test, p.model, p.engine);
        ConfusionCounts counts = score_run(verdicts, truths);
        REQUIRE(s.size() == 1);
        CHECK(s[0].fp == counts.fp);
        CHECK(s[0].fn == counts.fn);
    }
    SUBCASE("fp and fn are non-decreasing in the prefix size") {
        std::vector<std::size_t> all = {0, 1, 2, 3, 4, 5};
        auto s = fp_series(p.test, truths, p.model, p.engine, all);
        for (std::size_t i = 1; i < s.size(); ++i) {
            CHECK(s[i].fp >= s[i - 1].fp);
            CHECK(s[i].fn >= s[i - 1].fn);
        }
    }
    SUBCASE("oversized request is out of range") {
        std::vector<std::size_t> oversized = {99};
        try {
            fp_series(p.test, truths, p.model, p.engine, oversized);
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::Range);
        }
    }
    SUBCASE("workers do not change the series") {
        std::vector<std::size_t> all = {2, 4, 5};
        auto s1 = fp_series(p.test, truths, p.model, p.engine, all, 1);
        auto s4 = fp_series(p.test, truths, p.model, p.engine, all, 4);
        CHECK(s1 == s4);
    }
}

TEST_CASE("alert log lines are bit-exact") {
    CHECK(render_alert_log({}).empty());

    std::vector<Verdict> verdicts = {normal_verdict(0),
                                     attack_verdict(1, LabelClass::Dos, 4)};
    CHECK(render_alert_log(verdicts) == "0\tnormal\t-\t-\t0\n1\tattack\tdos\t4\t0\n");

    SUBCASE("scores print with up to 12 significant digits, zeros trimmed") {
        std::vector<Verdict> scored = {attack_verdict(0, LabelClass::Probe, 7, 0.00889),
                                       normal_verdict(1, 0.10770),
                                       attack_verdict(2, LabelClass::U2r, 9, 0.5)};
        CHECK(render_alert_log(scored) ==
              "0\tattack\tprobe\t7\t0.00889\n"
              "1\tnormal\t-\t-\t0.1077\n"
              "2\tattack\tu2r\t9\t0.5\n");
    }
    SUBCASE("files are written byte-identically") {
        testutil::TempDir dir;
        write_alert_log(verdicts, dir.file("a.log"));
        write_alert_log(verdicts, dir.file("b.log"));
        CHECK(testutil::slurp(dir.file("a.log")) == testutil::slurp(dir.file("b.log")));
        CHECK(testutil::slurp(dir.file("a.log")) == render_alert_log(verdicts));
    }
}

TEST_CASE("series csv is pinned to the documented shape") {
    CHECK(render_series_csv({}) == "samples,false_positives,false_negatives\n");

    std::vector<SeriesPoint> series = {{10000, 9, 120}, {20000, 26, 250}};
    CHECK(render_series_csv(series) ==
          "samples,false_positives,false_negatives\n"
          "10000,9,120\n"
          "20000,26,250\n");

    testutil::TempDir dir;
    write_series_csv(series, dir.file("series.csv"));
    CHECK(testutil::slurp(dir.file("series.csv")) == render_series_csv(series));
}

TEST_CASE("format_score edge cases") {
    CHECK(format_score(0.0) == "0");
    CHECK(format_score(0.00889) == "0.00889");
    CHECK(format_score(0.1077) == "0.1077");
    CHECK(format_score(1.0) == "1");
    CHECK(format_score(0.123456789012345) == "0.123456789012");
}
