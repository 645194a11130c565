#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "seqjcig/concepts.hpp"
#include "seqjcig/corpus.hpp"
#include "seqjcig/params.hpp"
#include "seqjcig/textstats.hpp"

namespace seqjcig {

enum class GraphKind { cig, jcig };

using VertexId = std::uint32_t;

struct WeightedEdge {
    VertexId u = 0;  // u < v
    VertexId v = 0;
    double weight = 0.0;

    bool operator==(const WeightedEdge&) const = default;
};

/// Per document, per sentence: sorted ids of the vertices the sentence is
/// assigned to.
using SentenceAssignment = std::vector<std::vector<std::vector<VertexId>>>;

struct AssignmentResult {
    SentenceAssignment assignment;
    Vocabulary vocabulary;  // indexing units: one token bag per vertex
    std::vector<TfIdfVector> vertex_vectors;
};

/// Undirected weighted concept graph for one document (CIG) or a pair
/// (JCIG). The last vertex is the dummy.
struct ConceptGraph {
    GraphKind kind = GraphKind::cig;
    std::vector<std::string> doc_ids;
    std::vector<Concept> vertices;
    /// Positions in `doc_ids` whose concept detection produced each vertex.
    std::vector<std::vector<std::size_t>> vertex_sources;
    SentenceAssignment assignment;
    Vocabulary vocabulary;
    std::vector<TfIdfVector> vertex_vectors;
    std::vector<WeightedEdge> edges;  // sorted by (u, v)

    VertexId dummy() const { return static_cast<VertexId>(vertices.size() - 1); }
    std::size_t doc_position(const std::string& doc_id) const;
    std::optional<double> edge_weight(VertexId a, VertexId b) const;
};

/// Stopword-free tokens of a sentence, the bag used for every TF-IDF vector.
TokenBag sentence_bag(const Sentence& sentence, const StopwordSet& stopwords);

/// `concepts` must end with the dummy. Phase one scores each sentence against
/// keyword-bag vectors and keeps concepts with positive similarity of at least
/// `sim_thresh` (dummy when none). Phase two re-vectorizes every vertex from
/// the tokens of its assigned sentences.
AssignmentResult assign_sentences(std::span<const Document* const> docs,
                                  const std::vector<Concept>& concepts, double sim_thresh,
                                  const StopwordSet& stopwords);

/// Edges between all vertex pairs whose cosine is positive and >= w_thresh.
std::vector<WeightedEdge> similarity_edges(const std::vector<TfIdfVector>& vectors,
                                           double w_thresh);

/// TextRank keywords with the configured (or default) top_k.
KeywordSet document_keywords(const Document& doc, const PipelineParams& params);

/// Keywords, keyword graph and communities for one document (no dummy).
std::vector<Concept> document_concepts(const Document& doc, const PipelineParams& params);

ConceptGraph build_cig(const Document& doc, const PipelineParams& params);

/// Vertices: union of both documents' concepts, identical keyword sets merged,
/// sorted by keyword list, followed by one shared dummy.
ConceptGraph build_jcig(const Document& doc_a, const Document& doc_b,
                        const PipelineParams& params);

}  // namespace seqjcig
