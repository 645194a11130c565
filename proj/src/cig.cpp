#include "seqjcig/cig.hpp"

#include <algorithm>
#include <map>

#include "seqjcig/error.hpp"

namespace seqjcig {

namespace {

ConceptGraph assemble(GraphKind kind, std::span<const Document* const> docs,
                      std::vector<Concept> concepts,
                      std::vector<std::vector<std::size_t>> sources,
                      const PipelineParams& params) {
    std::vector<std::size_t> all_docs(docs.size());
    for (std::size_t i = 0; i < docs.size(); ++i) all_docs[i] = i;
    concepts.push_back({static_cast<VertexId>(concepts.size()), {}, true});
    sources.push_back(all_docs);

    auto assigned = assign_sentences(docs, concepts, params.sim_thresh, params.stopword_set());

    ConceptGraph g;
    g.kind = kind;
    for (const auto* doc : docs) g.doc_ids.push_back(doc->id);
    g.vertices = std::move(concepts);
    g.vertex_sources = std::move(sources);
    g.assignment = std::move(assigned.assignment);
    g.vocabulary = std::move(assigned.vocabulary);
    g.vertex_vectors = std::move(assigned.vertex_vectors);
    g.edges = similarity_edges(g.vertex_vectors, params.w_thresh);
    return g;
}

}  // namespace

std::size_t ConceptGraph::doc_position(const std::string& doc_id) const {
    const auto it = std::find(doc_ids.begin(), doc_ids.end(), doc_id);
    if (it == doc_ids.end()) {
        throw ValidationError("document '" + doc_id + "' is not part of this graph");
    }
    return static_cast<std::size_t>(it - doc_ids.begin());
}

std::optional<double> ConceptGraph::edge_weight(VertexId a, VertexId b) const {
    if (a > b) std::swap(a, b);
    const auto it = std::lower_bound(edges.begin(), edges.end(), std::pair{a, b},
                                     [](const WeightedEdge& e, const std::pair<VertexId, VertexId>& k) {
                                         return std::pair{e.u, e.v} < k;
                                     });
    if (it == edges.end() || it->u != a || it->v != b) return std::nullopt;
    return it->weight;
}

TokenBag sentence_bag(const Sentence& sentence, const StopwordSet& stopwords) {
    return stopwords.filter(sentence.tokens);
}

AssignmentResult assign_sentences(std::span<const Document* const> docs,
                                  const std::vector<Concept>& concepts, double sim_thresh,
                                  const StopwordSet& stopwords) {
    if (concepts.empty() || !concepts.back().is_dummy) {
        throw ValidationError("concept list must end with the dummy concept");
    }
    const std::size_t n_vertices = concepts.size();
    const auto dummy = static_cast<VertexId>(n_vertices - 1);

    std::vector<TokenBag> keyword_bags;
    for (VertexId c = 0; c < dummy; ++c) keyword_bags.push_back(concepts[c].keywords);

    // Phase one: sentence vs. keyword-bag similarity.
    std::vector<TfIdfVector> keyword_vectors;
    Vocabulary keyword_vocab;
    if (!keyword_bags.empty()) {
        keyword_vocab = Vocabulary::build(keyword_bags);
        for (const auto& bag : keyword_bags) keyword_vectors.push_back(tfidf(bag, keyword_vocab));
    }

    AssignmentResult result;
    std::vector<TokenBag> vertex_bags(n_vertices);
    result.assignment.resize(docs.size());
    for (std::size_t d = 0; d < docs.size(); ++d) {
        const auto& sentences = docs[d]->sentences;
        auto& per_doc = result.assignment[d];
        per_doc.resize(sentences.size());
        for (std::size_t s = 0; s < sentences.size(); ++s) {
            const auto bag = sentence_bag(sentences[s], stopwords);
            auto& targets = per_doc[s];
            if (!keyword_vectors.empty()) {
                const auto vec = tfidf(bag, keyword_vocab);
                for (VertexId c = 0; c < dummy; ++c) {
                    const double sim = cosine(vec, keyword_vectors[c]);
                    if (sim > 0.0 && sim >= sim_thresh) targets.push_back(c);
                }
            }
            if (targets.empty()) targets.push_back(dummy);
            for (const auto v : targets) {
                vertex_bags[v].insert(vertex_bags[v].end(), bag.begin(), bag.end());
            }
        }
    }

    // Phase two: vertex vectors from assigned sentences.
    result.vocabulary = Vocabulary::build(vertex_bags);
    result.vertex_vectors.reserve(n_vertices);
    for (const auto& bag : vertex_bags) result.vertex_vectors.push_back(tfidf(bag, result.vocabulary));
    return result;
}

std::vector<WeightedEdge> similarity_edges(const std::vector<TfIdfVector>& vectors,
                                           double w_thresh) {
    std::vector<WeightedEdge> edges;
    for (VertexId u = 0; u < vectors.size(); ++u) {
        for (VertexId v = u + 1; v < vectors.size(); ++v) {
            const double w = cosine(vectors[u], vectors[v]);
            if (w > 0.0 && w >= w_thresh) edges.push_back({u, v, w});
        }
    }
    return edges;
}

KeywordSet document_keywords(const Document& doc, const PipelineParams& params) {
    const auto stopwords = params.stopword_set();
    std::size_t top_k = 0;
    if (params.top_k) {
        top_k = *params.top_k;
    } else {
        std::size_t filtered = 0;
        for (const auto& s : doc.sentences) filtered += stopwords.filter(s.tokens).size();
        top_k = default_top_k(filtered);
    }
    return extract_keywords(doc, top_k, params.window, stopwords, params.pagerank_options());
}

std::vector<Concept> document_concepts(const Document& doc, const PipelineParams& params) {
    const auto kg = build_keyword_graph(document_keywords(doc, params), doc);
    return detect_communities(kg, params.community_algorithm, params.community_seed,
                              params.resolution);
}

ConceptGraph build_cig(const Document& doc, const PipelineParams& params) {
    auto concepts = document_concepts(doc, params);
    std::vector<std::vector<std::size_t>> sources(concepts.size(), std::vector<std::size_t>{0});
    const Document* docs[] = {&doc};
    return assemble(GraphKind::cig, docs, std::move(concepts), std::move(sources), params);
}

ConceptGraph build_jcig(const Document& doc_a, const Document& doc_b,
                        const PipelineParams& params) {
    std::map<std::vector<std::string>, std::vector<std::size_t>> merged;
    const Document* docs[] = {&doc_a, &doc_b};
    for (std::size_t d = 0; d < 2; ++d) {
        for (auto& c : document_concepts(*docs[d], params)) {
            auto& src = merged[std::move(c.keywords)];
            if (src.empty() || src.back() != d) src.push_back(d);
        }
    }
    std::vector<Concept> concepts;
    std::vector<std::vector<std::size_t>> sources;
    for (auto& [keywords, src] : merged) {
        concepts.push_back({static_cast<VertexId>(concepts.size()), keywords, false});
        sources.push_back(src);
    }
    return assemble(GraphKind::jcig, docs, std::move(concepts), std::move(sources), params);
}

}  // namespace seqjcig
