#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "seqjcig/corpus.hpp"
#include "seqjcig/keywords.hpp"

namespace seqjcig {

/// Keywords joined when they share a sentence. Same structure as the TextRank
/// co-occurrence graph, built by a different rule.
using KeywordGraph = CooccurrenceGraph;

/// A community of keywords. The dummy concept has no keywords and collects
/// sentences that match nothing else.
struct Concept {
    std::uint32_t id = 0;
    std::vector<std::string> keywords;  // sorted
    bool is_dummy = false;

    bool operator==(const Concept&) const = default;
};

enum class CommunityAlgorithm { louvain, greedy_modularity };

CommunityAlgorithm parse_community_algorithm(std::string_view name);
std::string_view to_string(CommunityAlgorithm algorithm);

/// Nodes are the keywords in rank order; an edge joins two keywords that
/// appear together in at least one sentence of `doc`.
KeywordGraph build_keyword_graph(const KeywordSet& keywords, const Document& doc);

/// Partitions the nodes of `g`. Each concept's keywords are sorted, concepts
/// are ordered by their smallest keyword and numbered from 0. Isolated
/// keywords become singleton concepts.
std::vector<Concept> detect_communities(const KeywordGraph& g, CommunityAlgorithm algorithm,
                                        std::uint64_t seed, double resolution = 1.0);

/// Newman modularity of a partition given as concepts over the keyword
/// strings of `g`. Throws ValidationError unless every node appears exactly
/// once. Returns 0 for a graph without edges.
double modularity(const KeywordGraph& g, const std::vector<Concept>& partition,
                  double resolution = 1.0);

/// Same, for a membership vector indexed by node id.
double modularity(const KeywordGraph& g, const std::vector<std::uint32_t>& membership,
                  double resolution = 1.0);

}  // namespace seqjcig
