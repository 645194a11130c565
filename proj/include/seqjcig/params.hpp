#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seqjcig/concepts.hpp"
#include "seqjcig/corpus.hpp"
#include "seqjcig/keywords.hpp"

namespace seqjcig {

enum class Variant { i_sgs, c_sgs, i_hp, c_hp, undirected };

Variant parse_variant(std::string_view name);
std::string_view to_string(Variant variant);

/// Every tunable of the pipeline. Default-constructed values are the
/// documented defaults.
struct PipelineParams {
    std::size_t window = 3;
    std::optional<std::size_t> top_k;  // unset: max(5, ceil(0.15 * filtered tokens))
    double damping = 0.85;
    double pagerank_tol = 1e-8;
    std::size_t max_iter = 100;
    CommunityAlgorithm community_algorithm = CommunityAlgorithm::louvain;
    std::uint64_t community_seed = 0;
    double resolution = 1.0;
    double sim_thresh = 0.15;
    double w_thresh = 0.05;
    Variant variant = Variant::c_hp;
    double negative_ratio = 1.0;
    std::uint64_t seed = 0;
    std::optional<std::vector<std::string>> stopwords;  // unset: built-in English list

    /// Throws ValidationError naming the first out-of-range field.
    void validate() const;

    StopwordSet stopword_set() const;
    PageRankOptions pagerank_options() const { return {damping, pagerank_tol, max_iter}; }

    bool operator==(const PipelineParams&) const = default;
};

}  // namespace seqjcig
