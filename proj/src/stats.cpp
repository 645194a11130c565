#include "seqjcig/stats.hpp"

#include <algorithm>

namespace seqjcig {

GraphStats compute_stats(const SeqGraph& g) {
    GraphStats s;
    s.vertex_count = g.vertices.size();
    s.edge_count = g.edges.size();
    s.completion_edge_count = g.completion_edge_count;
    for (const auto& e : g.edges) {
        if (e.bidirectional) ++s.bidirectional_edge_count;
    }

    std::size_t sentences = 0;
    for (const auto& d : g.documents) sentences += d.sentences.size();
    std::size_t dummy_sentences = 0;
    for (const auto& v : g.vertices) {
        if (!v.node.is_dummy) continue;
        for (const auto& per_doc : v.sentences) dummy_sentences += per_doc.size();
    }
    if (sentences > 0) {
        s.dummy_sentence_fraction =
            static_cast<double>(dummy_sentences) / static_cast<double>(sentences);
    }

    const double n = static_cast<double>(s.vertex_count);
    double max_edges = n * (n - 1.0);
    if (g.variant == Variant::undirected) max_edges /= 2.0;
    if (max_edges > 0.0) {
        s.sparsity_ratio = std::min(1.0, static_cast<double>(s.edge_count) / max_edges);
    }
    return s;
}

std::optional<std::string> hp_bound_violation(const SeqGraph& g) {
    const std::size_t n = g.vertices.size();
    if (g.variant == Variant::c_hp) {
        if (n > 0 && g.edges.size() > n - 1) {
            return "c_hp graph has " + std::to_string(g.edges.size()) + " edges for " +
                   std::to_string(n) + " vertices";
        }
        return std::nullopt;
    }
    if (g.variant != Variant::i_hp) return std::nullopt;

    std::size_t per_doc_bound = 0;
    for (std::size_t d = 0; d < g.documents.size(); ++d) {
        const auto members = std::count_if(g.vertices.begin(), g.vertices.end(), [&](const SeqVertex& v) {
            return std::find(v.sources.begin(), v.sources.end(), d) != v.sources.end();
        });
        if (members > 0) per_doc_bound += static_cast<std::size_t>(members) - 1;
    }
    const auto directed = static_cast<std::size_t>(std::count_if(
        g.edges.begin(), g.edges.end(), [](const SeqEdge& e) { return !e.bidirectional; }));
    if (directed > per_doc_bound) {
        return "i_hp graph has " + std::to_string(directed) + " directed edges, bound is " +
               std::to_string(per_doc_bound);
    }
    return std::nullopt;
}

}  // namespace seqjcig
