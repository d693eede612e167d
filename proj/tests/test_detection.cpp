#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/aho_corasick.hpp"
#include "core/dataset.hpp"
#include "core/engine.hpp"
#include "core/errors.hpp"
#include "core/weights.hpp"

#include "support/oracles.hpp"
#include "support/tempdir.hpp"

#include <algorithm>
#include <random>

using namespace dnaids;

namespace {

constexpr const char* kFp = "0123456789abcdef";
constexpr double kTol = 1e-12;

SignatureDatabase db_of(std::vector<SignatureDatabase::LabelledSequence> entries,
                        ConflictPolicy policy = ConflictPolicy::KeepConflicts) {
    return SignatureDatabase::build(entries, kFp, policy);
}

MatchEngine engine_of(const SignatureDatabase& db, MatchMode mode, double tau = 0) {
    DetectionConfig config;
    config.mode = mode;
    config.tau = tau;
    return MatchEngine::build(db, config);
}

std::string random_sequence(std::mt19937& rng, std::size_t length) {
    std::string out;
    out.reserve(length);
    for (std::size_t i = 0; i < length; ++i) out += kNucleotides[rng() % 4];
    return out;
}

} // namespace

TEST_CASE("weight table defaults and validation") {
    WeightTable w = WeightTable::defaults();
    CHECK(w.of('A') == 0.08167);
    CHECK(w.of('C') == 0.02782);
    CHECK(w.of('G') == 0.02015);
    CHECK(w.of('T') == 0.09056);

    CHECK_THROWS_AS(WeightTable(0.1, 0.1, 0.2, 0.3), Error);   // not distinct
    CHECK_THROWS_AS(WeightTable(0.1, -0.2, 0.3, 0.4), Error);  // not positive
    CHECK_THROWS_AS(WeightTable(0.1, 0.0, 0.3, 0.4), Error);
}

TEST_CASE("weight table files load and reject bad content") {
    testutil::TempDir dir;
    const std::string path = dir.file("weights.txt");

    testutil::spit(path, "# override\nT=0.4\nA=0.1\nC=0.2\nG=0.3\n");
    WeightTable w = WeightTable::load(path);
    CHECK(w.of('A') == 0.1);
    CHECK(w.of('T') == 0.4);

    testutil::spit(path, "A=0.1\nC=0.2\nG=0.3\n");
    CHECK_THROWS_WITH_AS(WeightTable::load(path), doctest::Contains("must define"), Error);

    testutil::spit(path, "A=0.1\nC=0.1\nG=0.3\nT=0.4\n");
    CHECK_THROWS_WITH_AS(WeightTable::load(path), doctest::Contains("distinct"), Error);

    testutil::spit(path, "A=0.1\nA=0.2\nC=0.2\nG=0.3\nT=0.4\n");
    CHECK_THROWS_WITH_AS(WeightTable::load(path), doctest::Contains("duplicate"), Error);
}

TEST_CASE("weight profiles map sequences elementwise") {
    WeightTable w = WeightTable::defaults();
    CHECK(weight_profile("", w).empty());
    CHECK(weight_profile("A", w) == std::vector<double>{0.08167});
    CHECK(weight_profile("AT", w) == std::vector<double>{0.08167, 0.09056});
}

TEST_CASE("weight distance agrees with the hand computations") {
    WeightTable w = WeightTable::defaults();
    CHECK(weight_distance("ACGT", "ACGT", w) == 0.0);
    CHECK(std::abs(weight_distance("A", "T", w) - 0.00889) < kTol);
    CHECK(std::abs(weight_distance("AC", "CA", w) - 0.10770) < kTol);

    CHECK_THROWS_WITH_AS(weight_distance("ACG", "AC", w), doctest::Contains("length mismatch"),
                         Error);
}

TEST_CASE("weight distance is a metric on equal-length sequences") {
    WeightTable w = WeightTable::defaults();
    std::mt19937 rng(41);
    const double weights[4] = {0.08167, 0.02782, 0.02015, 0.09056};
    for (int round = 0; round < 300; ++round) {
        const std::size_t len = 1 + rng() % 24;
        std::string a = random_sequence(rng, len);
        std::string b = random_sequence(rng, len);
        std::string c = random_sequence(rng, len);

        const double ab = weight_distance(a, b, w);
        CHECK(std::abs(ab - oracles::naive_weight_distance(a, b, weights)) < kTol);
        CHECK(std::abs(ab - weight_distance(b, a, w)) < kTol);          // symmetry
        CHECK((a == b ? ab == 0.0 : ab > 0.0));                          // identity
        CHECK(ab <= weight_distance(a, c, w) + weight_distance(c, b, w) + kTol);  // triangle
    }
}

TEST_CASE("empty database classifies everything normal") {
    MatchEngine engine = engine_of(db_of({}), MatchMode::Exact);
    CHECK(engine.empty());
    for (const char* probe : {"ACGT", "A", ""}) {
        Verdict v = engine.classify(probe);
        CHECK_FALSE(v.attack);
        CHECK_FALSE(v.signature_id.has_value());
    }
}

TEST_CASE("exact mode matches whole sequences only") {
    MatchEngine engine = engine_of(db_of({{"ACGT", LabelClass::Dos}}), MatchMode::Exact);

    Verdict hit = engine.classify("ACGT");
    CHECK(hit.attack);
    CHECK(hit.cls == LabelClass::Dos);
    CHECK(hit.signature_id == 0);
    CHECK(hit.score == 0.0);

    Verdict miss = engine.classify("ACGA");
    CHECK_FALSE(miss.attack);
    CHECK_FALSE(miss.signature_id.has_value());

    CHECK_THROWS_WITH_AS(engine.classify("ACG"), doctest::Contains("length mismatch"), Error);
}

TEST_CASE("weighted mode thresholds the minimum weight distance") {
    SignatureDatabase db = db_of({{"ACGT", LabelClass::Dos}});

    // |w(T) - w(A)| = 0.00889 is the only differing position of ACGA vs ACGT.
    MatchEngine tight = engine_of(db, MatchMode::Weighted, 0.005);
    Verdict rejected = tight.classify("ACGA");
    CHECK_FALSE(rejected.attack);
    CHECK(std::abs(rejected.score - 0.00889) < kTol);

    MatchEngine loose = engine_of(db, MatchMode::Weighted, 0.01);
    Verdict accepted = loose.classify("ACGA");
    CHECK(accepted.attack);
    CHECK(accepted.cls == LabelClass::Dos);
    CHECK(accepted.signature_id == 0);
    CHECK(std::abs(accepted.score - 0.00889) < kTol);

    CHECK_THROWS_AS(tight.classify("ACGTA"), Error);
}

TEST_CASE("substring mode finds group signatures inside full sequences") {
    MatchEngine engine = engine_of(db_of({{"CG", LabelClass::Probe}}), MatchMode::Substring);
    Verdict v = engine.classify("ACGT");
    CHECK(v.attack);
    CHECK(v.cls == LabelClass::Probe);

    CHECK_FALSE(engine.classify("ATAT").attack);
    // Substring mode accepts any query length.
    CHECK_FALSE(engine.classify("C").attack);
    CHECK(engine.classify("ACGACG").attack);
}

TEST_CASE("automaton reproduces the classic four-pattern example") {
    // he, she, his, hers over "ushers", letters mapped onto the nucleotide
    // alphabet as h=A, e=C, s=G, r=T, i=C, u=T.
    const std::vector<std::string> patterns = {"AC", "GAC", "ACG", "ACTG"};
    const std::string text = "TGACTG";

    AhoCorasick automaton;
    for (std::size_t i = 0; i < patterns.size(); ++i)
        automaton.add(patterns[i], static_cast<std::uint32_t>(i));
    automaton.build();

    auto matches = automaton.find_all(text);
    std::sort(matches.begin(), matches.end(),
              [](const auto& a, const auto& b) { return a.end < b.end || (a.end == b.end && a.pattern_id < b.pattern_id); });

    // she and he end at 4, hers ends at 6; his never occurs.
    REQUIRE(matches.size() == 3);
    CHECK(matches[0].pattern_id == 0);  // he
    CHECK(matches[0].end == 4);
    CHECK(matches[1].pattern_id == 1);  // she
    CHECK(matches[1].end == 4);
    CHECK(matches[2].pattern_id == 3);  // hers
    CHECK(matches[2].end == 6);

    // The naive scan agrees.
    auto expected = oracles::naive_find_all(patterns, text);
    std::vector<oracles::Match> got;
    for (const auto& m : matches) got.push_back({m.pattern_id, m.end});
    std::sort(got.begin(), got.end());
    CHECK(got == expected);
}

TEST_CASE("automaton equals the naive scan on random pattern sets") {
    std::mt19937 rng(57);
    for (int round = 0; round < 60; ++round) {
        const std::size_t n_patterns = 1 + rng() % 20;
        std::vector<std::string> patterns;
        for (std::size_t i = 0; i < n_patterns; ++i)
            patterns.push_back(random_sequence(rng, 1 + rng() % 8));

        AhoCorasick automaton;
        for (std::size_t i = 0; i < patterns.size(); ++i)
            automaton.add(patterns[i], static_cast<std::uint32_t>(i));
        automaton.build();

        const std::string text = random_sequence(rng, rng() % 400);
        std::vector<oracles::Match> got;
        automaton.scan(text, [&](std::uint32_t id, std::size_t end) { got.push_back({id, end}); });
        std::sort(got.begin(), got.end());
        CHECK(got == oracles::naive_find_all(patterns, text));
    }
}

TEST_CASE("exact mode equals a naive linear scan on random instances") {
    std::mt19937 rng(71);
    for (int round = 0; round < 40; ++round) {
        const std::size_t length = 4 + rng() % 12;
        std::vector<SignatureDatabase::LabelledSequence> entries;
        const std::size_t n = 1 + rng() % 80;
        for (std::size_t i = 0; i < n; ++i)
            entries.emplace_back(random_sequence(rng, length),
                                 kAttackClasses[rng() % 4]);
        SignatureDatabase db = db_of(entries);
        MatchEngine engine = engine_of(db, MatchMode::Exact);

        std::vector<oracles::NaiveSignature> naive;
        for (const auto& sig : db.signatures())
            naive.push_back({attack_rank(sig.cls), sig.id, sig.sequence});

        for (int probe_round = 0; probe_round < 50; ++probe_round) {
            // Half the probes replay a known signature.
            std::string probe = (rng() % 2 == 0 && !db.empty())
                                    ? db.signatures()[rng() % db.size()].sequence
                                    : random_sequence(rng, length);
            Verdict v = engine.classify(probe);
            auto expected = oracles::naive_exact_match(naive, probe);
            CHECK(v.attack == expected.has_value());
            if (expected) CHECK(v.signature_id == *expected);
        }
    }
}

TEST_CASE("multi-class hits resolve by class priority then id") {
    SignatureDatabase db = db_of({{"ACGT", LabelClass::U2r},
                                  {"ACGT", LabelClass::Probe},
                                  {"ACGT", LabelClass::Dos}});

    SUBCASE("default priority prefers DoS") {
        MatchEngine engine = engine_of(db, MatchMode::Exact);
        Verdict v = engine.classify("ACGT");
        CHECK(v.cls == LabelClass::Dos);
        CHECK(v.signature_id == 2);
    }
    SUBCASE("custom priority is honored") {
        DetectionConfig config;
        config.mode = MatchMode::Exact;
        config.class_priority = {LabelClass::U2r, LabelClass::R2l, LabelClass::Probe,
                                 LabelClass::Dos};
        Verdict v = MatchEngine::build(db, config).classify("ACGT");
        CHECK(v.cls == LabelClass::U2r);
        CHECK(v.signature_id == 0);
    }
    SUBCASE("weighted ties use the same arbitration") {
        MatchEngine engine = engine_of(db, MatchMode::Weighted, 1.0);
        Verdict v = engine.classify("ACGA");
        CHECK(v.attack);
        CHECK(v.cls == LabelClass::Dos);
        CHECK(v.signature_id == 2);
    }
    SUBCASE("same class falls back to the lowest id") {
        SignatureDatabase two = db_of({{"AAAA", LabelClass::Dos}, {"ACGT", LabelClass::Dos}});
        MatchEngine engine = engine_of(two, MatchMode::Weighted, 1.0);
        // AATA is distance 0.00889 from AAAA and farther from ACGT.
        Verdict v = engine.classify("AATA");
        CHECK(v.signature_id == 0);
    }
    SUBCASE("invalid priority permutations are rejected") {
        DetectionConfig config;
        config.class_priority = {LabelClass::Dos, LabelClass::Dos, LabelClass::R2l,
                                 LabelClass::U2r};
        CHECK_THROWS_AS(MatchEngine::build(db, config), Error);
    }
}

TEST_CASE("weighted mode with tau=0 coincides with exact mode") {
    std::mt19937 rng(83);
    std::vector<SignatureDatabase::LabelledSequence> entries;
    for (std::size_t i = 0; i < 60; ++i)
        entries.emplace_back(random_sequence(rng, 10), kAttackClasses[rng() % 4]);
    SignatureDatabase db = db_of(entries);

    MatchEngine exact = engine_of(db, MatchMode::Exact);
    MatchEngine weighted = engine_of(db, MatchMode::Weighted, 0);
    MatchEngine loose = engine_of(db, MatchMode::Weighted, 0.01);

    int attacks_tau0 = 0;
    int attacks_tau1 = 0;
    for (int i = 0; i < 3000; ++i) {
        std::string probe = (rng() % 2 == 0) ? db.signatures()[rng() % db.size()].sequence
                                             : random_sequence(rng, 10);
        Verdict ve = exact.classify(probe);
        Verdict vw = weighted.classify(probe);
        CHECK(ve.attack == vw.attack);
        if (ve.attack) {
            CHECK(ve.cls == vw.cls);
            CHECK(ve.signature_id == vw.signature_id);
        }
        Verdict vl = loose.classify(probe);
        attacks_tau0 += vw.attack;
        attacks_tau1 += vl.attack;
        if (vw.attack) CHECK(vl.attack);  // monotonicity in tau
    }
    CHECK(attacks_tau0 <= attacks_tau1);
}

TEST_CASE("scaling all weights scales distances and keeps verdicts") {
    std::mt19937 rng(97);
    std::vector<SignatureDatabase::LabelledSequence> entries;
    for (std::size_t i = 0; i < 30; ++i)
        entries.emplace_back(random_sequence(rng, 8), kAttackClasses[rng() % 4]);
    SignatureDatabase db = db_of(entries);

    DetectionConfig base;
    base.mode = MatchMode::Weighted;
    DetectionConfig scaled = base;
    scaled.weights = WeightTable(0.08167 * 3, 0.02782 * 3, 0.02015 * 3, 0.09056 * 3);

    MatchEngine a = MatchEngine::build(db, base);
    MatchEngine b = MatchEngine::build(db, scaled);
    for (int i = 0; i < 500; ++i) {
        std::string probe = (rng() % 2 == 0) ? db.signatures()[rng() % db.size()].sequence
                                             : random_sequence(rng, 8);
        Verdict va = a.classify(probe);
        Verdict vb = b.classify(probe);
        CHECK(va.attack == vb.attack);
        if (va.attack) CHECK(va.signature_id == vb.signature_id);
        CHECK(std::abs(vb.score - 3.0 * va.score) < 1e-9);
    }
}

TEST_CASE("engine construction is deterministic") {
    std::mt19937 rng(113);
    std::vector<SignatureDatabase::LabelledSequence> entries;
    for (std::size_t i = 0; i < 50; ++i)
        entries.emplace_back(random_sequence(rng, 12), kAttackClasses[rng() % 4]);
    SignatureDatabase db = db_of(entries);

    MatchEngine e1 = engine_of(db, MatchMode::Exact);
    MatchEngine e2 = engine_of(db, MatchMode::Exact);
    for (int i = 0; i < 500; ++i) {
        std::string probe = (rng() % 2 == 0) ? db.signatures()[rng() % db.size()].sequence
                                             : random_sequence(rng, 12);
        Verdict v1 = e1.classify(probe);
        Verdict v2 = e2.classify(probe);
        CHECK(v1.attack == v2.attack);
        CHECK(v1.signature_id == v2.signature_id);
    }
}

TEST_CASE("detect streams verdicts in input order with matching fingerprints") {
    const std::string schema_path = std::string(DNAIDS_DATA_DIR) + "/kdd_schema.txt";
    const std::string train_path = std::string(DNAIDS_FIXTURE_DIR) + "/tiny_train.txt";
    const std::string taxonomy_path = std::string(DNAIDS_DATA_DIR) + "/attack_taxonomy.txt";

    RecordSchema schema = RecordSchema::load(schema_path);
    AttackTaxonomy taxonomy = AttackTaxonomy::load(taxonomy_path);
    Dataset data = load_dataset(train_path, schema);
    data.resolve_labels(taxonomy);

    EncoderModel model = EncoderModel::fit(feature_stats(data, schema), schema);

    std::vector<SignatureDatabase::LabelledSequence> encoded;
    for (std::size_t i = 0; i < data.size(); ++i)
        encoded.emplace_back(model.encode(data[i]).sequence, *data[i].label_class);
    SignatureDatabase db =
        SignatureDatabase::build(encoded, model.fingerprint(), ConflictPolicy::KeepConflicts);
    MatchEngine engine = engine_of(db, MatchMode::Exact);

    std::vector<Verdict> verdicts = detect(data, model, engine);
    REQUIRE(verdicts.size() == data.size());
    for (std::size_t i = 0; i < verdicts.size(); ++i) {
        CHECK(verdicts[i].source_index == data[i].source_index);
        Verdict direct = engine.classify(model.encode(data[i]).sequence);
        CHECK(verdicts[i].attack == direct.attack);
        CHECK(verdicts[i].signature_id == direct.signature_id);
    }
    // Every attack training record matches its own signature.
    for (std::size_t i = 0; i < verdicts.size(); ++i)
        if (is_attack_class(*data[i].label_class)) CHECK(verdicts[i].attack);

    SUBCASE("worker counts do not change the verdict sequence") {
        for (unsigned workers : {2u, 4u, 7u}) {
            std::vector<Verdict> parallel = detect(data, model, engine, workers);
            REQUIRE(parallel.size() == verdicts.size());
            for (std::size_t i = 0; i < verdicts.size(); ++i) {
                CHECK(parallel[i].attack == verdicts[i].attack);
                CHECK(parallel[i].signature_id == verdicts[i].signature_id);
                CHECK(parallel[i].source_index == verdicts[i].source_index);
            }
        }
    }
    SUBCASE("fingerprint mismatch fails before any record") {
        EncoderModel other = EncoderModel::fit(feature_stats(data, schema), schema, 128);
        REQUIRE(other.fingerprint() != model.fingerprint());
        try {
            detect(data, other, engine);
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::Fingerprint);
        }
    }
    SUBCASE("empty stream detects to an empty verdict list") {
        CHECK(detect(data.prefix(0), model, engine).empty());
    }
}
