#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "seqjcig/error.hpp"
#include "seqjcig/serialize.hpp"

#include "support/fixtures.hpp"
#include "support/golden.hpp"
#include "support/schema.hpp"

using namespace seqjcig;

namespace {

const std::filesystem::path kData = SEQJCIG_TEST_DATA;

schema::Validator graph_schema() {
    std::ifstream in(SEQJCIG_SCHEMA);
    return schema::Validator(schema::Json::parse(in));
}

std::string joined(const std::vector<std::string>& errors) {
    std::string out;
    for (const auto& e : errors) out += e + "\n";
    return out;
}

const Variant kAll[] = {Variant::i_sgs, Variant::c_sgs, Variant::i_hp, Variant::c_hp,
                        Variant::undirected};

}  // namespace

TEST(Params, DefaultsRoundTrip) {
    const PipelineParams p;
    EXPECT_NO_THROW(p.validate());
    EXPECT_EQ(params_from_json(params_to_json(p)), p);
    const auto j = params_to_json(p);
    EXPECT_TRUE(j["top_k"].is_null());
    EXPECT_EQ(j["window"], 3);
    EXPECT_EQ(j["damping"], 0.85);
    EXPECT_EQ(j["sim_thresh"], 0.15);
    EXPECT_EQ(j["w_thresh"], 0.05);
    EXPECT_EQ(j["variant"], "c_hp");
    EXPECT_EQ(j["community_algorithm"], "louvain");
}

TEST(Params, PartialConfigStartsFromDefaults) {
    const auto p = params_from_json(Json::parse(R"({"window": 4, "top_k": 9,
        "community_algorithm": "greedy_modularity", "variant": "i_sgs",
        "stopwords": ["screw"]})"));
    EXPECT_EQ(p.window, 4u);
    EXPECT_EQ(p.top_k, 9u);
    EXPECT_EQ(p.community_algorithm, CommunityAlgorithm::greedy_modularity);
    EXPECT_EQ(p.variant, Variant::i_sgs);
    EXPECT_TRUE(p.stopword_set().contains("screw"));
    EXPECT_FALSE(p.stopword_set().contains("the"));
    EXPECT_EQ(p.damping, 0.85);
    EXPECT_EQ(params_from_json(params_to_json(p)), p);
}

TEST(Params, RejectsBadValues) {
    for (const char* bad : {R"({"window": 1})", R"({"damping": 1.0})", R"({"damping": 0})",
                            R"({"top_k": 0})", R"({"sim_thresh": 1.5})", R"({"w_thresh": -0.1})",
                            R"({"max_iter": 0})", R"({"pagerank_tol": 0})",
                            R"({"negative_ratio": 0})", R"({"variant": "x"})",
                            R"({"community_algorithm": "leiden"})", R"({"window": "3"})",
                            R"({"unknown": 1})", R"([1, 2])", R"({"seed": -1})",
                            R"({"resolution": 0})"}) {
        EXPECT_THROW(params_from_json(Json::parse(bad)), ValidationError) << bad;
    }
}

TEST(Params, LoadFile) {
    const auto p = load_params(kData / "config.json");
    EXPECT_EQ(p.seed, 7u);
    EXPECT_THROW(load_params(kData / "missing.json"), IoError);
    const auto dir = fixture::temp_dir("params");
    fixture::write_text(dir / "bad.json", "{ nope");
    EXPECT_THROW(load_params(dir / "bad.json"), ValidationError);
    std::filesystem::remove_all(dir);
}

TEST(Pairs, JsonRoundTripAndErrors) {
    const std::vector<DocumentPair> pairs = {{"a", "b", PairLabel::similar},
                                             {"c", "a", PairLabel::dissimilar}};
    const auto j = pairs_to_json(pairs);
    EXPECT_EQ(j.dump(), R"([{"a":"a","b":"b","label":1},{"a":"c","b":"a","label":0}])");
    EXPECT_EQ(pairs_from_json(j), pairs);
    for (const char* bad : {R"({})", R"([{"a": "x", "b": "x", "label": 1}])",
                            R"([{"a": "x", "b": "y", "label": 2}])", R"([{"a": "x", "label": 1}])",
                            R"([{"a": "x", "b": 3, "label": 1}])"}) {
        EXPECT_THROW(pairs_from_json(Json::parse(bad)), ValidationError) << bad;
    }
}

TEST(Keywords, JsonShape) {
    const auto j = keywords_to_json({{"d1", {{"filter", 0.5}, {"cap", 0.25}}}, {"d2", {}}});
    EXPECT_EQ(j.dump(), R"({"d1":[["filter",0.5],["cap",0.25]],"d2":[]})");
}

TEST(Graph, RoundTripAndSchemaForEveryVariant) {
    const auto validator = graph_schema();
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const auto pair = fixture::random_doc_pair(seed, 3 + seed % 5, 2 + seed % 4, seed % 3);
        for (const auto v : kAll) {
            PipelineParams p;
            p.variant = v;
            p.top_k = 8;
            const auto g = build_seq_jcig(pair.a, pair.b, v, p);
            const auto j = graph_to_json(g, p);
            const auto errors = validator.validate(schema::Json::parse(dump(j)));
            EXPECT_TRUE(errors.empty()) << joined(errors);

            const auto back = graph_from_json(Json::parse(dump(j)));
            EXPECT_EQ(back.graph, g);
            EXPECT_EQ(back.params, p);
            EXPECT_EQ(back.stats, compute_stats(g));
            EXPECT_EQ(dump(graph_to_json(back.graph, back.params)), dump(j));
        }
    }
}

TEST(Graph, DocumentShape) {
    const auto corpus = load_corpus(kData / "corpus");
    const PipelineParams p;
    const auto g = build_seq_jcig(corpus[0], corpus[1], Variant::c_hp, p);
    const auto j = graph_to_json(g, p);
    EXPECT_EQ(j["schema_version"], 1);
    EXPECT_EQ(j["variant"], "c_hp");
    EXPECT_EQ(j["documents"][0]["id"], "phone_battery");
    EXPECT_EQ(j["documents"][0]["sentences"].size(), corpus[0].sentences.size());
    EXPECT_EQ(j["documents"][0]["sentences"][0], corpus[0].sentences[0].text);
    const auto& dummy = j["vertices"].back();
    EXPECT_TRUE(dummy["dummy"].get<bool>());
    EXPECT_TRUE(dummy["keywords"].empty());
    EXPECT_EQ(j["params"], params_to_json(p));
}

TEST(Graph, SchemaRejectsBrokenFiles) {
    const auto validator = graph_schema();
    const auto corpus = load_corpus(kData / "corpus");
    const auto good = graph_to_json(build_seq_jcig(corpus[0], corpus[2], Variant::c_sgs, {}), {});
    auto parsed = schema::Json::parse(dump(good));
    EXPECT_TRUE(validator.validate(parsed).empty());

    auto missing = parsed;
    missing.erase("edges");
    EXPECT_FALSE(validator.validate(missing).empty());
    auto version = parsed;
    version["schema_version"] = 2;
    EXPECT_FALSE(validator.validate(version).empty());
    auto extra = parsed;
    extra["vertices"][0]["colour"] = "red";
    EXPECT_FALSE(validator.validate(extra).empty());
    auto variant = parsed;
    variant["variant"] = "hp";
    EXPECT_FALSE(validator.validate(variant).empty());
}

TEST(Graph, ParserRejectsBrokenFiles) {
    const auto corpus = load_corpus(kData / "corpus");
    const auto good = graph_to_json(build_seq_jcig(corpus[0], corpus[1], Variant::i_hp, {}), {});
    EXPECT_NO_THROW(graph_from_json(good));

    auto version = good;
    version["schema_version"] = 2;
    EXPECT_THROW(graph_from_json(version), ValidationError);
    auto missing = good;
    missing.erase("stats");
    EXPECT_THROW(graph_from_json(missing), ValidationError);
    auto loop = good;
    loop["edges"] = Json::array({{{"from", 0}, {"to", 0}, {"weight", 0.5}, {"bidirectional", false},
                                  {"completion", false}}});
    EXPECT_THROW(graph_from_json(loop), ValidationError);
    auto ids = good;
    ids["vertices"][0]["id"] = 5;
    EXPECT_THROW(graph_from_json(ids), ValidationError);
    EXPECT_THROW(graph_from_json(Json::array()), ValidationError);
}

TEST(Golden, FixturePairEveryVariant) {
    const auto corpus = load_corpus(kData / "corpus");
    for (const auto v : kAll) {
        PipelineParams p;
        p.variant = v;
        const auto j = graph_to_json(build_seq_jcig(corpus[0], corpus[1], v, p), p);
        const auto file = kData / "golden" /
                          ("phone_battery__phone_camera." + std::string(to_string(v)) + ".json");
        const auto d = golden::check(file, golden::Json::parse(dump(j)));
        EXPECT_TRUE(d.empty()) << to_string(v) << ": " << d;
    }
}

TEST(Files, AtomicWriteAndRead) {
    const auto dir = fixture::temp_dir("files");
    write_file_atomic(dir / "x.json", "one\n");
    write_file_atomic(dir / "x.json", "two\n");
    EXPECT_EQ(read_text_file(dir / "x.json"), "two\n");
    std::size_t entries = 0;
    for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir)) ++entries;
    EXPECT_EQ(entries, 1u);
    EXPECT_THROW(read_text_file(dir / "none"), IoError);
    EXPECT_THROW(write_file_atomic(dir / "no" / "such" / "x.json", "z"), IoError);
    EXPECT_EQ(dump(Json::parse(R"({"a":1})")), "{\n  \"a\": 1\n}\n");
    std::filesystem::remove_all(dir);
}
