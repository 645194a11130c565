#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "seqjcig/corpus.hpp"

namespace seqjcig {

/// Undirected, unweighted token graph. Node ids follow first appearance in
/// the filtered token stream; adjacency lists are sorted and duplicate-free.
class CooccurrenceGraph {
public:
    CooccurrenceGraph() = default;
    explicit CooccurrenceGraph(std::vector<std::string> nodes);

    std::uint32_t add_node(const std::string& token);
    /// Ignores self-loops and duplicates.
    void add_edge(std::uint32_t u, std::uint32_t v);

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const;
    const std::vector<std::string>& nodes() const { return nodes_; }
    const std::vector<std::uint32_t>& neighbors(std::uint32_t u) const { return adjacency_[u]; }
    bool has_edge(std::uint32_t u, std::uint32_t v) const;

private:
    std::vector<std::string> nodes_;
    std::vector<std::vector<std::uint32_t>> adjacency_;
};

struct Keyword {
    std::string keyword;
    double score = 0.0;

    bool operator==(const Keyword&) const = default;
};

/// Descending by score; equal scores ordered by keyword.
using KeywordSet = std::vector<Keyword>;

struct PageRankOptions {
    double damping = 0.85;
    double tol = 1e-8;
    std::size_t max_iter = 100;
};

/// Edges join distinct non-stopword tokens that fall within `window`
/// consecutive filtered tokens of the same sentence.
CooccurrenceGraph build_cooccurrence_graph(const Document& doc, std::size_t window,
                                           const StopwordSet& stopwords);

/// Power iteration on the undirected graph (each edge counted in both
/// directions). Dangling nodes spread their rank uniformly. Stops when the
/// L1 change drops below `tol` or after `max_iter` sweeps.
std::vector<double> pagerank(const CooccurrenceGraph& g, const PageRankOptions& options = {});

/// Number of keywords to keep when none is configured.
std::size_t default_top_k(std::size_t filtered_token_count);

/// TextRank: co-occurrence graph, PageRank, top `top_k` nodes.
KeywordSet extract_keywords(const Document& doc, std::size_t top_k, std::size_t window,
                            const StopwordSet& stopwords, const PageRankOptions& options = {});

/// Sort key for keyword ranking. Scores are compared after rounding to 12
/// decimal places so that floating-point noise between symmetric nodes does
/// not defeat the lexicographic tie-break.
bool keyword_rank_less(const Keyword& a, const Keyword& b);

}  // namespace seqjcig
