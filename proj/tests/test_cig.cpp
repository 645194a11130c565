#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>

#include "seqjcig/cig.hpp"
#include "seqjcig/error.hpp"

#include "support/fixtures.hpp"
#include "support/golden.hpp"

using namespace seqjcig;

namespace {

const std::filesystem::path kData = SEQJCIG_TEST_DATA;

Document doc(const std::string& id, const std::string& text) {
    return make_document(id, id, "s", {}, text);
}

std::vector<Concept> with_dummy(std::vector<std::vector<std::string>> keyword_sets) {
    std::vector<Concept> out;
    for (auto& k : keyword_sets) out.push_back({static_cast<VertexId>(out.size()), std::move(k), false});
    out.push_back({static_cast<VertexId>(out.size()), {}, true});
    return out;
}

AssignmentResult assign(const Document& d, const std::vector<Concept>& concepts, double thresh) {
    const Document* docs[] = {&d};
    return assign_sentences(docs, concepts, thresh, StopwordSet());
}

void expect_total_and_exclusive(const ConceptGraph& g) {
    ASSERT_EQ(g.assignment.size(), g.doc_ids.size());
    for (const auto& per_doc : g.assignment) {
        for (const auto& targets : per_doc) {
            ASSERT_FALSE(targets.empty());
            EXPECT_TRUE(std::is_sorted(targets.begin(), targets.end()));
            if (std::find(targets.begin(), targets.end(), g.dummy()) != targets.end()) {
                EXPECT_EQ(targets.size(), 1u);
            }
        }
    }
}

void expect_edges_valid(const ConceptGraph& g, double w_thresh) {
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        const auto& e = g.edges[i];
        EXPECT_LT(e.u, e.v);
        EXPECT_LT(e.v, g.vertices.size());
        EXPECT_GE(e.weight, w_thresh);
        EXPECT_GT(e.weight, 0.0);
        EXPECT_LE(e.weight, 1.0);
        if (i > 0) EXPECT_LT(std::pair(g.edges[i - 1].u, g.edges[i - 1].v), std::pair(e.u, e.v));
    }
}

// Vectors recomputed from scratch out of the stored assignment.
void expect_vectors_consistent(const ConceptGraph& g, const std::vector<const Document*>& docs) {
    const StopwordSet stop;
    std::vector<TokenBag> bags(g.vertices.size());
    for (std::size_t d = 0; d < docs.size(); ++d) {
        for (std::size_t s = 0; s < docs[d]->sentences.size(); ++s) {
            const auto bag = stop.filter(docs[d]->sentences[s].tokens);
            for (const auto v : g.assignment[d][s]) bags[v].insert(bags[v].end(), bag.begin(), bag.end());
        }
    }
    const auto vocab = Vocabulary::build(bags);
    EXPECT_EQ(vocab, g.vocabulary);
    for (std::size_t v = 0; v < bags.size(); ++v) EXPECT_EQ(tfidf(bags[v], vocab), g.vertex_vectors[v]);
}

golden::Json graph_json(const ConceptGraph& g) {
    golden::Json j;
    j["kind"] = g.kind == GraphKind::cig ? "cig" : "jcig";
    j["doc_ids"] = g.doc_ids;
    j["vertices"] = golden::Json::array();
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        j["vertices"].push_back({{"keywords", g.vertices[v].keywords},
                                 {"dummy", g.vertices[v].is_dummy},
                                 {"sources", g.vertex_sources[v]}});
    }
    j["assignment"] = g.assignment;
    j["edges"] = golden::Json::array();
    for (const auto& e : g.edges) j["edges"].push_back({e.u, e.v, e.weight});
    return j;
}

}  // namespace

TEST(Assign, SentenceMatchingOneConcept) {
    const auto d = doc("d", "Lift the hook and the pin. Turn the lever.");
    const auto r = assign(d, with_dummy({{"hook", "pin"}, {"lever"}}), 0.1);
    EXPECT_EQ(r.assignment[0][0], (std::vector<VertexId>{0}));
    EXPECT_EQ(r.assignment[0][1], (std::vector<VertexId>{1}));
}

TEST(Assign, PartialOverlapFollowsThreshold) {
    // Keyword vocabulary over {hook,pin} and {lever}: every idf equals w, so
    // cos(s, {hook,pin}) = w^2 / (sqrt(2) w * sqrt(2) w) = 0.5 and
    // cos(s, {lever}) = w^2 / (sqrt(2) w * w) = 1/sqrt(2).
    const auto d = doc("d", "Hook the lever.");
    const auto concepts = with_dummy({{"hook", "pin"}, {"lever"}});
    EXPECT_EQ(assign(d, concepts, 0.6).assignment[0][0], (std::vector<VertexId>{1}));
    EXPECT_EQ(assign(d, concepts, 0.5).assignment[0][0], (std::vector<VertexId>{0, 1}));
    EXPECT_EQ(assign(d, concepts, 1.0 / std::sqrt(2.0) + 1e-9).assignment[0][0],
              (std::vector<VertexId>{2}));
}

TEST(Assign, NoOverlapGoesToDummy) {
    const auto d = doc("d", "Clean the fan.");
    EXPECT_EQ(assign(d, with_dummy({{"hook"}}), 0.15).assignment[0][0], (std::vector<VertexId>{1}));
}

TEST(Assign, ZeroThresholdUsesAnyOverlap) {
    const auto d = doc("d", "Hook the lever. Clean the fan.");
    const auto r = assign(d, with_dummy({{"hook", "pin"}, {"lever"}, {"screw"}}), 0.0);
    EXPECT_EQ(r.assignment[0][0], (std::vector<VertexId>{0, 1}));
    EXPECT_EQ(r.assignment[0][1], (std::vector<VertexId>{3}));
}

TEST(Assign, OnlyDummy) {
    const auto d = doc("d", "Hook the lever. Clean the fan.");
    const auto r = assign(d, with_dummy({}), 0.15);
    EXPECT_EQ(r.assignment[0][0], (std::vector<VertexId>{0}));
    EXPECT_EQ(r.assignment[0][1], (std::vector<VertexId>{0}));
    ASSERT_EQ(r.vertex_vectors.size(), 1u);
    EXPECT_FALSE(r.vertex_vectors[0].empty());
}

TEST(Assign, RequiresTrailingDummy) {
    const auto d = doc("d", "Hook.");
    EXPECT_THROW(assign(d, {{0, {"hook"}, false}}, 0.1), ValidationError);
    EXPECT_THROW(assign(d, {}, 0.1), ValidationError);
}

TEST(Assign, PhaseTwoVectorsComeFromSentences) {
    const auto d = doc("d", "Lift the hook and the pin. Turn the lever slowly.");
    const auto r = assign(d, with_dummy({{"hook", "pin"}, {"lever"}}), 0.1);
    // Vertex 1 holds "turn lever slowly": three terms, each in one of three bags.
    ASSERT_EQ(r.vocabulary.n_docs(), 3u);
    EXPECT_EQ(r.vertex_vectors[1].size(), 3u);
    EXPECT_TRUE(r.vertex_vectors[2].empty());  // dummy without sentences
    const double idf = 1.0 + std::log(4.0 / 2.0);
    for (const auto& [i, w] : r.vertex_vectors[1].entries()) EXPECT_DOUBLE_EQ(w, idf);
}

TEST(Cig, OneConceptHasAtMostOneEdge) {
    PipelineParams p;
    p.top_k = 1;
    const auto g = build_cig(doc("d", "Filter the water. Filter the oil. Wipe the counter."), p);
    ASSERT_EQ(g.vertices.size(), 2u);
    EXPECT_LE(g.edges.size(), 1u);
    expect_total_and_exclusive(g);
}

TEST(Cig, DisjointVocabulariesHaveNoEdge) {
    PipelineParams p;
    p.sim_thresh = 0.5;
    const auto g = build_cig(doc("d", "Alpha beta alpha beta. Gamma delta gamma delta."), p);
    ASSERT_EQ(g.vertices.size(), 3u);  // {alpha,beta}, {gamma,delta}, dummy
    EXPECT_FALSE(g.edge_weight(0, 1).has_value());
}

TEST(Cig, InvariantsOnRandomDocuments) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        PipelineParams p;
        p.w_thresh = 0.02 * static_cast<double>(seed % 5);
        p.sim_thresh = 0.05 * static_cast<double>(seed % 7);
        p.top_k = 4 + seed % 20;
        const auto pair = fixture::random_doc_pair(seed, 2 + seed % 8, 2 + seed % 5, seed % 3);
        const auto g = build_cig(pair.a, p);
        EXPECT_EQ(g.kind, GraphKind::cig);
        EXPECT_TRUE(g.vertices.back().is_dummy);
        for (VertexId v = 0; v + 1 < g.vertices.size(); ++v) EXPECT_FALSE(g.vertices[v].is_dummy);
        expect_total_and_exclusive(g);
        expect_edges_valid(g, p.w_thresh);
        expect_vectors_consistent(g, {&pair.a});

        std::set<std::string> seen;
        for (VertexId v = 0; v < g.dummy(); ++v) {
            for (const auto& kw : g.vertices[v].keywords) EXPECT_TRUE(seen.insert(kw).second);
        }
    }
}

TEST(Jcig, IdenticalDocumentsMergeEveryConcept) {
    const auto corpus = load_corpus(kData / "corpus");
    const PipelineParams p;
    for (const auto& d : corpus) {
        const auto cig = build_cig(d, p);
        const auto jcig = build_jcig(d, d, p);
        EXPECT_EQ(jcig.kind, GraphKind::jcig);
        ASSERT_EQ(jcig.vertices.size(), cig.vertices.size());
        for (VertexId v = 0; v < cig.vertices.size(); ++v) {
            EXPECT_EQ(jcig.vertices[v].keywords, cig.vertices[v].keywords);
        }
        for (VertexId v = 0; v < jcig.dummy(); ++v) {
            EXPECT_EQ(jcig.vertex_sources[v], (std::vector<std::size_t>{0, 1}));
        }
        EXPECT_EQ(jcig.assignment[0], jcig.assignment[1]);
    }
}

TEST(Jcig, DisjointDocumentsGiveDisjointUnion) {
    const PipelineParams p;
    const auto pair = fixture::random_doc_pair(12, 4, 3, 0);
    const auto a = build_cig(pair.a, p);
    const auto b = build_cig(pair.b, p);
    const auto j = build_jcig(pair.a, pair.b, p);
    EXPECT_EQ(j.vertices.size(), (a.vertices.size() - 1) + (b.vertices.size() - 1) + 1);
    for (VertexId v = 0; v < j.dummy(); ++v) EXPECT_EQ(j.vertex_sources[v].size(), 1u);
    EXPECT_EQ(j.vertex_sources[j.dummy()], (std::vector<std::size_t>{0, 1}));
}

TEST(Jcig, InvariantsAndSymmetry) {
    for (std::uint64_t seed = 100; seed < 140; ++seed) {
        PipelineParams p;
        p.top_k = 5 + seed % 15;
        const auto pair = fixture::random_doc_pair(seed, 2 + seed % 9, 2 + seed % 6, seed % 4);
        const auto ab = build_jcig(pair.a, pair.b, p);
        const auto ba = build_jcig(pair.b, pair.a, p);
        expect_total_and_exclusive(ab);
        expect_edges_valid(ab, p.w_thresh);
        expect_vectors_consistent(ab, {&pair.a, &pair.b});

        // Vertices are sorted by keyword list, so both orders agree directly.
        ASSERT_EQ(ab.vertices, ba.vertices);
        EXPECT_EQ(ab.edges, ba.edges);
        EXPECT_EQ(ab.vertex_vectors, ba.vertex_vectors);
        EXPECT_EQ(ab.assignment[0], ba.assignment[1]);
        EXPECT_EQ(ab.assignment[1], ba.assignment[0]);
        for (VertexId v = 0; v < ab.vertices.size(); ++v) {
            std::vector<std::size_t> swapped;
            for (const auto s : ba.vertex_sources[v]) swapped.push_back(1 - s);
            std::sort(swapped.begin(), swapped.end());
            EXPECT_EQ(ab.vertex_sources[v], swapped);
        }
    }
}

TEST(Jcig, EdgeWeightLookup) {
    const auto pair = fixture::random_doc_pair(7, 5, 4, 2);
    const auto g = build_jcig(pair.a, pair.b, PipelineParams{});
    for (const auto& e : g.edges) {
        EXPECT_EQ(g.edge_weight(e.u, e.v), e.weight);
        EXPECT_EQ(g.edge_weight(e.v, e.u), e.weight);
    }
    EXPECT_EQ(g.doc_position(pair.b.id), 1u);
    EXPECT_THROW(g.doc_position("nope"), ValidationError);
}

TEST(Golden, RecipeCig) {
    const auto corpus = load_corpus(kData / "corpus");
    const auto& bread = corpus[2];
    ASSERT_EQ(bread.sentences.size(), 6u);
    const auto g = build_cig(bread, PipelineParams{});
    const auto d = golden::check(kData / "golden" / "bread.cig.json", graph_json(g));
    EXPECT_TRUE(d.empty()) << d;
}

TEST(Golden, FixturePairJcig) {
    const auto corpus = load_corpus(kData / "corpus");
    const auto g = build_jcig(corpus[0], corpus[1], PipelineParams{});
    const auto d =
        golden::check(kData / "golden" / "phone_battery__phone_camera.jcig.json", graph_json(g));
    EXPECT_TRUE(d.empty()) << d;
}
