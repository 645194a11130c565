#include "seqjcig/keywords.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "seqjcig/error.hpp"

namespace seqjcig {

CooccurrenceGraph::CooccurrenceGraph(std::vector<std::string> nodes)
    : nodes_(std::move(nodes)), adjacency_(nodes_.size()) {}

std::uint32_t CooccurrenceGraph::add_node(const std::string& token) {
    nodes_.push_back(token);
    adjacency_.emplace_back();
    return static_cast<std::uint32_t>(nodes_.size() - 1);
}

void CooccurrenceGraph::add_edge(std::uint32_t u, std::uint32_t v) {
    if (u == v) return;
    auto insert_sorted = [](std::vector<std::uint32_t>& list, std::uint32_t x) {
        const auto it = std::lower_bound(list.begin(), list.end(), x);
        if (it == list.end() || *it != x) list.insert(it, x);
    };
    insert_sorted(adjacency_[u], v);
    insert_sorted(adjacency_[v], u);
}

std::size_t CooccurrenceGraph::edge_count() const {
    std::size_t twice = 0;
    for (const auto& list : adjacency_) twice += list.size();
    return twice / 2;
}

bool CooccurrenceGraph::has_edge(std::uint32_t u, std::uint32_t v) const {
    const auto& list = adjacency_[u];
    return std::binary_search(list.begin(), list.end(), v);
}

CooccurrenceGraph build_cooccurrence_graph(const Document& doc, std::size_t window,
                                           const StopwordSet& stopwords) {
    if (window < 2) throw ValidationError("co-occurrence window must be >= 2");
    CooccurrenceGraph g;
    std::unordered_map<std::string, std::uint32_t> ids;
    for (const auto& sentence : doc.sentences) {
        std::vector<std::uint32_t> stream;
        for (const auto& token : sentence.tokens) {
            if (stopwords.contains(token)) continue;
            auto [it, inserted] = ids.try_emplace(token, 0);
            if (inserted) it->second = g.add_node(token);
            stream.push_back(it->second);
        }
        for (std::size_t i = 0; i < stream.size(); ++i) {
            const std::size_t end = std::min(stream.size(), i + window);
            for (std::size_t j = i + 1; j < end; ++j) g.add_edge(stream[i], stream[j]);
        }
    }
    return g;
}

std::vector<double> pagerank(const CooccurrenceGraph& g, const PageRankOptions& options) {
    const std::size_t n = g.node_count();
    if (n == 0) throw ValidationError("pagerank on an empty graph");
    if (!(options.damping > 0.0 && options.damping < 1.0)) {
        throw ValidationError("pagerank damping must lie in (0, 1)");
    }
    if (!(options.tol > 0.0)) throw ValidationError("pagerank tolerance must be positive");
    if (options.max_iter == 0) throw ValidationError("pagerank max_iter must be positive");

    const double inv_n = 1.0 / static_cast<double>(n);
    const double d = options.damping;
    std::vector<double> rank(n, inv_n);
    std::vector<double> next(n);
    for (std::size_t iter = 0; iter < options.max_iter; ++iter) {
        double dangling = 0.0;
        for (std::uint32_t u = 0; u < n; ++u) {
            if (g.neighbors(u).empty()) dangling += rank[u];
        }
        const double base = (1.0 - d) * inv_n + d * dangling * inv_n;
        for (std::uint32_t v = 0; v < n; ++v) {
            double incoming = 0.0;
            for (const auto u : g.neighbors(v)) {
                incoming += rank[u] / static_cast<double>(g.neighbors(u).size());
            }
            next[v] = base + d * incoming;
        }
        double delta = 0.0;
        for (std::size_t v = 0; v < n; ++v) delta += std::abs(next[v] - rank[v]);
        rank.swap(next);
        if (delta < options.tol) break;
    }
    // Renormalize away accumulated rounding drift.
    double total = 0.0;
    for (const double r : rank) total += r;
    for (double& r : rank) r /= total;
    return rank;
}

std::size_t default_top_k(std::size_t filtered_token_count) {
    const auto fraction = static_cast<std::size_t>(
        std::ceil(0.15 * static_cast<double>(filtered_token_count)));
    return std::max<std::size_t>(5, fraction);
}

bool keyword_rank_less(const Keyword& a, const Keyword& b) {
    const auto qa = std::llround(a.score * 1e12);
    const auto qb = std::llround(b.score * 1e12);
    if (qa != qb) return qa > qb;
    return a.keyword < b.keyword;
}

KeywordSet extract_keywords(const Document& doc, std::size_t top_k, std::size_t window,
                            const StopwordSet& stopwords, const PageRankOptions& options) {
    if (top_k == 0) throw ValidationError("top_k must be positive");
    const auto g = build_cooccurrence_graph(doc, window, stopwords);
    if (g.node_count() == 0) return {};
    const auto scores = pagerank(g, options);

    KeywordSet ranked;
    ranked.reserve(g.node_count());
    for (std::uint32_t v = 0; v < g.node_count(); ++v) ranked.push_back({g.nodes()[v], scores[v]});
    std::sort(ranked.begin(), ranked.end(), keyword_rank_less);
    if (ranked.size() > top_k) ranked.resize(top_k);
    return ranked;
}

}  // namespace seqjcig
