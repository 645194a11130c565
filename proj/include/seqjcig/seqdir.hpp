#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "seqjcig/cig.hpp"
#include "seqjcig/params.hpp"

namespace seqjcig {

struct DirectedPair {
    VertexId from = 0;
    VertexId to = 0;

    auto operator<=>(const DirectedPair&) const = default;
};

/// Directed multigraph of concept flow between consecutive sentences.
struct DirectionPseudograph {
    std::size_t vertex_count = 0;
    std::vector<DirectedPair> edges;  // multiset, insertion order

    /// Parallel-edge multiplicity per direction.
    std::map<DirectedPair, std::size_t> counts() const;
    void absorb(const DirectionPseudograph& other);
};

struct DominantEdge {
    VertexId from = 0;
    VertexId to = 0;
    bool bidirectional = false;
    std::size_t support = 0;  // parallel pseudograph edges behind this direction
    double hp_weight = 0.0;   // HP only
    bool completion = false;  // HP only: added to complete the tournament

    bool operator==(const DominantEdge&) const = default;
};

struct HamiltonianResult {
    std::vector<VertexId> path;
    std::vector<DominantEdge> edges;  // the path's n - 1 edges, in path order
    std::size_t completion_edge_count = 0;
};

struct SeqEdge {
    VertexId from = 0;
    VertexId to = 0;
    double weight = 0.0;
    bool bidirectional = false;
    bool completion = false;

    bool operator==(const SeqEdge&) const = default;
};

struct SeqDocument {
    std::string id;
    std::string title;
    std::vector<std::string> sentences;

    bool operator==(const SeqDocument&) const = default;
};

struct SeqVertex {
    Concept node;
    std::vector<std::size_t> sources;              // document positions
    std::vector<std::vector<std::size_t>> sentences;  // per document: assigned sentence indices

    bool operator==(const SeqVertex&) const = default;
};

/// Sparse directed weighted graph handed to the classifier. The `undirected`
/// variant carries the plain JCIG with every edge flagged bidirectional.
struct SeqGraph {
    Variant variant = Variant::c_hp;
    std::vector<SeqDocument> documents;
    std::vector<SeqVertex> vertices;
    std::vector<SeqEdge> edges;  // sorted by (min endpoint, max endpoint)
    std::size_t completion_edge_count = 0;

    bool operator==(const SeqGraph&) const = default;
};

/// One edge m -> n for every m in CS(s_i), n in CS(s_{i+1}), m != n, over the
/// sentences of `doc_id` in `graph`. The dummy takes part like any vertex.
DirectionPseudograph build_pseudograph(const ConceptGraph& graph, const std::string& doc_id);
DirectionPseudograph build_pseudograph(const ConceptGraph& graph, std::size_t doc_position);

/// Per unordered pair, the majority direction; equal counts give one
/// bidirectional edge stored as (lower id -> higher id). Sorted by pair.
std::vector<DominantEdge> sgs_reduce(const DirectionPseudograph& pg);

/// Same reduction, visiting pairs in the given order. Exposed so the result
/// can be checked to be independent of processing order.
std::vector<DominantEdge> sgs_reduce_in_order(const DirectionPseudograph& pg,
                                              std::span<const std::pair<VertexId, VertexId>> order);

/// A directed graph with exactly one weighted edge per vertex pair.
class Tournament {
public:
    explicit Tournament(std::size_t n);

    void set(VertexId from, VertexId to, double weight, std::size_t support, bool completion);
    bool beats(VertexId a, VertexId b) const;
    const DominantEdge& edge(VertexId a, VertexId b) const;  // either orientation
    std::size_t size() const { return n_; }

private:
    std::size_t index(VertexId a, VertexId b) const;
    std::size_t n_;
    std::vector<DominantEdge> edges_;  // upper triangle
    std::vector<bool> present_;
};

/// Count-times-cosine tournament over the pseudograph, completed with cosine
/// edges (lower id -> higher id) for pairs without flow evidence.
Tournament hp_tournament(const DirectionPseudograph& pg, std::span<const TfIdfVector> vectors,
                         std::size_t* completion_edges = nullptr);

/// Hamiltonian path of a tournament by binary insertion.
std::vector<VertexId> hamiltonian_path(const Tournament& t);

HamiltonianResult hp_reduce(const DirectionPseudograph& pg, std::span<const TfIdfVector> vectors);

/// Keeps dominant edges whose pair is also a graph edge; direction from the
/// dominant edge, weight from the graph.
std::vector<SeqEdge> merge_directions(const ConceptGraph& graph,
                                      std::span<const DominantEdge> dominant);

SeqGraph build_seq_jcig(const Document& doc_a, const Document& doc_b, Variant variant,
                        const PipelineParams& params);

/// Vertex, document and assignment data of `graph` packaged as a SeqGraph
/// with the given edges.
SeqGraph make_seq_graph(const ConceptGraph& graph, std::span<const Document* const> docs,
                        Variant variant, std::vector<SeqEdge> edges,
                        std::size_t completion_edge_count);

}  // namespace seqjcig
