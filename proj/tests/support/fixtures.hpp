#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "seqjcig/corpus.hpp"
#include "seqjcig/keywords.hpp"
#include "seqjcig/rng.hpp"
#include "seqjcig/seqdir.hpp"

#include "support/oracles.hpp"

namespace fixture {

// Simple undirected graph with edges u < v, no duplicates.
struct Graph {
    std::size_t n = 0;
    std::vector<oracle::Edge> edges;
};

inline Graph random_graph(seqjcig::Rng& rng, std::size_t n, double p) {
    Graph g{n, {}};
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            if (rng.unit() < p) g.edges.emplace_back(u, v);
        }
    }
    return g;
}

inline seqjcig::CooccurrenceGraph to_cooccurrence(const Graph& g) {
    std::vector<std::string> names;
    for (std::size_t v = 0; v < g.n; ++v) {
        names.push_back("n" + std::string(v < 10 ? "0" : "") + std::to_string(v));
    }
    seqjcig::CooccurrenceGraph out(names);
    for (const auto& [u, v] : g.edges) {
        out.add_edge(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
    }
    return out;
}

inline Graph cycle(std::size_t n) {
    Graph g{n, {}};
    for (std::size_t v = 0; v < n; ++v) g.edges.emplace_back(std::min(v, (v + 1) % n), std::max(v, (v + 1) % n));
    return g;
}

inline Graph clique(std::size_t n) {
    Graph g{n, {}};
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) g.edges.emplace_back(u, v);
    }
    return g;
}

// Two 4-cliques {0..3} and {4..7} joined by the bridge 3-4.
inline Graph two_cliques_bridge() {
    Graph g{8, {}};
    for (std::size_t base : {std::size_t{0}, std::size_t{4}}) {
        for (std::size_t u = 0; u < 4; ++u) {
            for (std::size_t v = u + 1; v < 4; ++v) g.edges.emplace_back(base + u, base + v);
        }
    }
    g.edges.emplace_back(3, 4);
    return g;
}

inline seqjcig::DirectionPseudograph random_pseudograph(seqjcig::Rng& rng, std::size_t n,
                                                        std::size_t max_edges) {
    seqjcig::DirectionPseudograph pg;
    pg.vertex_count = n;
    if (n < 2) return pg;
    const auto count = rng.below(max_edges + 1);
    for (std::uint64_t i = 0; i < count; ++i) {
        const auto from = static_cast<seqjcig::VertexId>(rng.below(n));
        auto to = static_cast<seqjcig::VertexId>(rng.below(n - 1));
        if (to >= from) ++to;
        pg.edges.push_back({from, to});
    }
    return pg;
}

inline seqjcig::Tournament random_tournament(seqjcig::Rng& rng, std::size_t n) {
    seqjcig::Tournament t(n);
    for (seqjcig::VertexId a = 0; a < n; ++a) {
        for (seqjcig::VertexId b = a + 1; b < n; ++b) {
            if (rng.below(2) == 0) {
                t.set(a, b, 1.0, 1, false);
            } else {
                t.set(b, a, 1.0, 1, false);
            }
        }
    }
    return t;
}

// Procedural-looking text over disjoint topic vocabularies. Each topic is a
// fixed group of words; sentences draw from one topic, sometimes two, so the
// keyword graph clusters by topic.
inline std::vector<std::string> topic_words(std::size_t topic) {
    static const char* const stems[] = {"screw", "panel", "cable", "clip",  "board",
                                        "lever", "hinge", "shell", "valve", "motor"};
    std::vector<std::string> out;
    for (std::size_t j = 0; j < 3; ++j) {
        out.push_back(std::string(stems[(topic + j) % 10]) + "t" + std::to_string(topic) + "w" +
                      std::to_string(j));
    }
    return out;
}

inline std::string random_procedure(seqjcig::Rng& rng, const std::vector<std::size_t>& topics,
                                    std::size_t sentences) {
    static const char* const fillers[] = {"the", "and", "then", "with", "of", "to"};
    std::string text;
    for (std::size_t s = 0; s < sentences; ++s) {
        std::vector<std::string> words;
        const auto t = topics[rng.below(topics.size())];
        auto pool = topic_words(t);
        if (rng.below(4) == 0) {
            const auto extra = topic_words(topics[rng.below(topics.size())]);
            pool.push_back(extra[rng.below(extra.size())]);
        }
        const auto take = 2 + rng.below(pool.size() - 1);
        seqjcig::Rng local(rng.engine()());
        local.shuffle(std::span<std::string>(pool));
        for (std::size_t i = 0; i < take; ++i) {
            words.push_back(pool[i]);
            if (rng.below(3) == 0) words.emplace_back(fillers[rng.below(6)]);
        }
        words.front()[0] = static_cast<char>(words.front()[0] - 'a' + 'A');
        for (std::size_t i = 0; i < words.size(); ++i) {
            if (i > 0) text += ' ';
            text += words[i];
        }
        text += ". ";
    }
    return text;
}

struct DocPair {
    seqjcig::Document a;
    seqjcig::Document b;
};

// A pair of documents with `topics_a`/`topics_b` topics, sharing `shared` of them.
inline DocPair random_doc_pair(std::uint64_t seed, std::size_t topics_a, std::size_t topics_b,
                               std::size_t shared) {
    seqjcig::Rng rng(seed);
    std::vector<std::size_t> ta;
    std::vector<std::size_t> tb;
    for (std::size_t i = 0; i < topics_a; ++i) ta.push_back(i);
    for (std::size_t i = 0; i < shared && i < topics_a; ++i) tb.push_back(i);
    for (std::size_t i = tb.size(); i < topics_b; ++i) tb.push_back(topics_a + i);
    const auto sa = 3 + topics_a + rng.below(2 * topics_a + 1);
    const auto sb = 3 + topics_b + rng.below(2 * topics_b + 1);
    DocPair p{
        seqjcig::make_document("fa" + std::to_string(seed), "A", "s", {"x"},
                               random_procedure(rng, ta, sa)),
        seqjcig::make_document("fb" + std::to_string(seed), "B", "s", {"x"},
                               random_procedure(rng, tb, sb))};
    return p;
}

inline std::filesystem::path temp_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() /
                     ("seqjcig-" + name + "-" + std::to_string(std::random_device{}()));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
}

inline std::string read_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace fixture
