#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "seqjcig/seqdir.hpp"

namespace seqjcig {

struct GraphStats {
    std::size_t vertex_count = 0;
    std::size_t edge_count = 0;
    double dummy_sentence_fraction = 0.0;
    std::size_t bidirectional_edge_count = 0;
    std::size_t completion_edge_count = 0;
    /// edges / n(n-1) for directed variants, edges / (n(n-1)/2) for undirected.
    double sparsity_ratio = 0.0;

    bool operator==(const GraphStats&) const = default;
};

GraphStats compute_stats(const SeqGraph& g);

/// Checks the edge-count bound of HP variants: at most n - 1 edges for c_hp;
/// for i_hp at most (|V_A| - 1) + (|V_B| - 1) directed edges besides the
/// bidirectional cross-document ones. Returns a description of the violation,
/// or nothing when the graph is within bounds (or not an HP variant).
std::optional<std::string> hp_bound_violation(const SeqGraph& g);

}  // namespace seqjcig
