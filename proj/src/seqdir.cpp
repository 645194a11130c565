#include "seqjcig/seqdir.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "seqjcig/error.hpp"

namespace seqjcig {

namespace {

using PairKey = std::pair<VertexId, VertexId>;

PairKey unordered(VertexId a, VertexId b) { return a < b ? PairKey{a, b} : PairKey{b, a}; }

struct PairCounts {
    std::size_t forward = 0;   // lo -> hi
    std::size_t backward = 0;  // hi -> lo
    std::size_t total() const { return forward + backward; }
};

std::map<PairKey, PairCounts> pair_counts(const DirectionPseudograph& pg) {
    std::map<PairKey, PairCounts> out;
    for (const auto& e : pg.edges) {
        auto& c = out[unordered(e.from, e.to)];
        if (e.from < e.to) {
            ++c.forward;
        } else {
            ++c.backward;
        }
    }
    return out;
}

void sort_by_pair(std::vector<SeqEdge>& edges) {
    std::sort(edges.begin(), edges.end(), [](const SeqEdge& a, const SeqEdge& b) {
        return unordered(a.from, a.to) < unordered(b.from, b.to);
    });
}

// Dominant edges of one document's CIG, already intersected with that CIG.
std::vector<SeqEdge> seq_cig_edges(const ConceptGraph& cig, bool hp, std::size_t& completions) {
    const auto pg = build_pseudograph(cig, std::size_t{0});
    if (hp) {
        const auto result = hp_reduce(pg, cig.vertex_vectors);
        completions += result.completion_edge_count;
        return merge_directions(cig, result.edges);
    }
    return merge_directions(cig, sgs_reduce(pg));
}

SeqGraph individual_variant(const Document& doc_a, const Document& doc_b, Variant variant,
                            const PipelineParams& params) {
    const bool hp = variant == Variant::i_hp;
    const ConceptGraph cigs[] = {build_cig(doc_a, params), build_cig(doc_b, params)};
    const auto jcig = build_jcig(doc_a, doc_b, params);

    std::map<std::vector<std::string>, VertexId> joint_id;
    for (VertexId v = 0; v < jcig.dummy(); ++v) joint_id.emplace(jcig.vertices[v].keywords, v);

    struct Direction {
        VertexId from;
        VertexId to;
        bool bidirectional;
    };
    std::map<PairKey, std::vector<Direction>> directions;
    std::size_t completions = 0;
    for (const auto& cig : cigs) {
        auto to_joint = [&](VertexId v) {
            return cig.vertices[v].is_dummy ? jcig.dummy() : joint_id.at(cig.vertices[v].keywords);
        };
        for (const auto& e : seq_cig_edges(cig, hp, completions)) {
            auto from = to_joint(e.from);
            auto to = to_joint(e.to);
            if (e.bidirectional && from > to) std::swap(from, to);
            directions[unordered(from, to)].push_back({from, to, e.bidirectional});
        }
    }

    auto from_doc = [&](VertexId v, std::size_t d) {
        const auto& src = jcig.vertex_sources[v];
        return std::find(src.begin(), src.end(), d) != src.end();
    };

    std::vector<SeqEdge> edges;
    for (const auto& e : jcig.edges) {
        const auto it = directions.find({e.u, e.v});
        if (it != directions.end()) {
            const auto& dirs = it->second;
            const bool agree = std::all_of(dirs.begin(), dirs.end(), [&](const Direction& d) {
                return d.bidirectional == dirs.front().bidirectional && d.from == dirs.front().from;
            });
            if (agree) {
                edges.push_back({dirs.front().from, dirs.front().to, e.weight,
                                 dirs.front().bidirectional, false});
            } else {
                edges.push_back({e.u, e.v, e.weight, true, false});
            }
            continue;
        }
        const bool within_a = from_doc(e.u, 0) && from_doc(e.v, 0);
        const bool within_b = from_doc(e.u, 1) && from_doc(e.v, 1);
        if (!within_a && !within_b) edges.push_back({e.u, e.v, e.weight, true, false});
    }
    sort_by_pair(edges);

    const Document* docs[] = {&doc_a, &doc_b};
    return make_seq_graph(jcig, docs, variant, std::move(edges), completions);
}

}  // namespace

std::map<DirectedPair, std::size_t> DirectionPseudograph::counts() const {
    std::map<DirectedPair, std::size_t> out;
    for (const auto& e : edges) ++out[e];
    return out;
}

void DirectionPseudograph::absorb(const DirectionPseudograph& other) {
    if (other.vertex_count != vertex_count) {
        throw ValidationError("pseudographs over different vertex sets cannot be combined");
    }
    edges.insert(edges.end(), other.edges.begin(), other.edges.end());
}

DirectionPseudograph build_pseudograph(const ConceptGraph& graph, const std::string& doc_id) {
    return build_pseudograph(graph, graph.doc_position(doc_id));
}

DirectionPseudograph build_pseudograph(const ConceptGraph& graph, std::size_t doc_position) {
    if (doc_position >= graph.assignment.size()) {
        throw ValidationError("document position outside the graph");
    }
    const auto& per_sentence = graph.assignment[doc_position];
    DirectionPseudograph pg;
    pg.vertex_count = graph.vertices.size();
    for (std::size_t i = 0; i + 1 < per_sentence.size(); ++i) {
        for (const auto m : per_sentence[i]) {
            for (const auto n : per_sentence[i + 1]) {
                if (m != n) pg.edges.push_back({m, n});
            }
        }
    }
    return pg;
}

std::vector<DominantEdge> sgs_reduce_in_order(const DirectionPseudograph& pg,
                                              std::span<const std::pair<VertexId, VertexId>> order) {
    auto counts = pair_counts(pg);
    std::vector<DominantEdge> out;
    out.reserve(counts.size());
    for (const auto& [a, b] : order) {
        const auto it = counts.find(unordered(a, b));
        if (it == counts.end()) continue;
        const auto [lo, hi] = it->first;
        const auto c = it->second;
        if (c.forward == c.backward) {
            out.push_back({lo, hi, true, c.forward, 0.0, false});
        } else if (c.forward > c.backward) {
            out.push_back({lo, hi, false, c.forward, 0.0, false});
        } else {
            out.push_back({hi, lo, false, c.backward, 0.0, false});
        }
        counts.erase(it);
    }
    if (!counts.empty()) throw ValidationError("processing order does not cover every vertex pair");
    std::sort(out.begin(), out.end(), [](const DominantEdge& x, const DominantEdge& y) {
        return unordered(x.from, x.to) < unordered(y.from, y.to);
    });
    return out;
}

std::vector<DominantEdge> sgs_reduce(const DirectionPseudograph& pg) {
    const auto counts = pair_counts(pg);
    std::vector<std::pair<PairKey, std::size_t>> ranked;
    ranked.reserve(counts.size());
    for (const auto& [key, c] : counts) ranked.emplace_back(key, c.total());
    // Heaviest pair first, ties by vertex id.
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& x, const auto& y) { return x.second > y.second; });
    std::vector<PairKey> order;
    order.reserve(ranked.size());
    for (const auto& [key, total] : ranked) order.push_back(key);
    return sgs_reduce_in_order(pg, order);
}

Tournament::Tournament(std::size_t n)
    : n_(n), edges_(n * (n > 0 ? n - 1 : 0) / 2), present_(edges_.size(), false) {}

std::size_t Tournament::index(VertexId a, VertexId b) const {
    if (a == b || a >= n_ || b >= n_) throw ValidationError("invalid tournament vertex pair");
    const auto [lo, hi] = unordered(a, b);
    // Row-major upper triangle without the diagonal.
    return lo * (2 * n_ - lo - 1) / 2 + (hi - lo - 1);
}

void Tournament::set(VertexId from, VertexId to, double weight, std::size_t support,
                     bool completion) {
    const auto i = index(from, to);
    edges_[i] = {from, to, false, support, weight, completion};
    present_[i] = true;
}

const DominantEdge& Tournament::edge(VertexId a, VertexId b) const {
    const auto i = index(a, b);
    if (!present_[i]) throw ValidationError("tournament is missing an edge");
    return edges_[i];
}

bool Tournament::beats(VertexId a, VertexId b) const { return edge(a, b).from == a; }

Tournament hp_tournament(const DirectionPseudograph& pg, std::span<const TfIdfVector> vectors,
                         std::size_t* completion_edges) {
    const std::size_t n = pg.vertex_count;
    if (vectors.size() != n) throw ValidationError("one vertex vector per vertex is required");
    const auto counts = pair_counts(pg);
    Tournament t(n);
    std::size_t completions = 0;
    for (VertexId lo = 0; lo < n; ++lo) {
        for (VertexId hi = lo + 1; hi < n; ++hi) {
            const double sim = cosine(vectors[lo], vectors[hi]);
            const auto it = counts.find({lo, hi});
            if (it == counts.end()) {
                t.set(lo, hi, sim, 0, true);
                ++completions;
                continue;
            }
            const auto c = it->second;
            const double forward = static_cast<double>(c.forward) * sim;
            const double backward = static_cast<double>(c.backward) * sim;
            if (c.backward == 0 || (c.forward > 0 && forward >= backward)) {
                t.set(lo, hi, forward, c.forward, false);
            } else {
                t.set(hi, lo, backward, c.backward, false);
            }
        }
    }
    if (completion_edges != nullptr) *completion_edges = completions;
    return t;
}

std::vector<VertexId> hamiltonian_path(const Tournament& t) {
    std::vector<VertexId> path;
    path.reserve(t.size());
    for (VertexId v = 0; v < t.size(); ++v) {
        if (path.empty() || t.beats(v, path.front())) {
            path.insert(path.begin(), v);
            continue;
        }
        if (t.beats(path.back(), v)) {
            path.push_back(v);
            continue;
        }
        // Invariant: path[lo] beats v, v beats path[hi].
        std::size_t lo = 0;
        std::size_t hi = path.size() - 1;
        while (hi - lo > 1) {
            const std::size_t mid = lo + (hi - lo) / 2;
            if (t.beats(path[mid], v)) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        path.insert(path.begin() + static_cast<std::ptrdiff_t>(hi), v);
    }
    return path;
}

HamiltonianResult hp_reduce(const DirectionPseudograph& pg, std::span<const TfIdfVector> vectors) {
    if (pg.vertex_count == 0) throw ValidationError("hp_reduce needs at least one vertex");
    HamiltonianResult result;
    const auto t = hp_tournament(pg, vectors, &result.completion_edge_count);
    result.path = hamiltonian_path(t);
    for (std::size_t i = 0; i + 1 < result.path.size(); ++i) {
        result.edges.push_back(t.edge(result.path[i], result.path[i + 1]));
    }
    return result;
}

std::vector<SeqEdge> merge_directions(const ConceptGraph& graph,
                                      std::span<const DominantEdge> dominant) {
    std::vector<SeqEdge> out;
    for (const auto& d : dominant) {
        if (d.from >= graph.vertices.size() || d.to >= graph.vertices.size()) {
            throw ValidationError("dominant edge references a vertex outside the graph");
        }
        if (const auto w = graph.edge_weight(d.from, d.to)) {
            out.push_back({d.from, d.to, *w, d.bidirectional, d.completion});
        }
    }
    sort_by_pair(out);
    return out;
}

SeqGraph make_seq_graph(const ConceptGraph& graph, std::span<const Document* const> docs,
                        Variant variant, std::vector<SeqEdge> edges,
                        std::size_t completion_edge_count) {
    SeqGraph g;
    g.variant = variant;
    for (const auto* doc : docs) {
        SeqDocument sd{doc->id, doc->title, {}};
        for (const auto& s : doc->sentences) sd.sentences.push_back(s.text);
        g.documents.push_back(std::move(sd));
    }
    g.vertices.resize(graph.vertices.size());
    for (VertexId v = 0; v < graph.vertices.size(); ++v) {
        g.vertices[v].node = graph.vertices[v];
        g.vertices[v].sources = graph.vertex_sources[v];
        g.vertices[v].sentences.resize(graph.assignment.size());
    }
    for (std::size_t d = 0; d < graph.assignment.size(); ++d) {
        for (std::size_t s = 0; s < graph.assignment[d].size(); ++s) {
            for (const auto v : graph.assignment[d][s]) g.vertices[v].sentences[d].push_back(s);
        }
    }
    g.edges = std::move(edges);
    g.completion_edge_count = completion_edge_count;
    return g;
}

SeqGraph build_seq_jcig(const Document& doc_a, const Document& doc_b, Variant variant,
                        const PipelineParams& params) {
    params.validate();
    if (variant == Variant::i_sgs || variant == Variant::i_hp) {
        return individual_variant(doc_a, doc_b, variant, params);
    }

    const auto jcig = build_jcig(doc_a, doc_b, params);
    const Document* docs[] = {&doc_a, &doc_b};
    std::vector<SeqEdge> edges;
    std::size_t completions = 0;
    if (variant == Variant::undirected) {
        for (const auto& e : jcig.edges) edges.push_back({e.u, e.v, e.weight, true, false});
    } else {
        auto pg = build_pseudograph(jcig, std::size_t{0});
        pg.absorb(build_pseudograph(jcig, std::size_t{1}));
        if (variant == Variant::c_hp) {
            const auto result = hp_reduce(pg, jcig.vertex_vectors);
            completions = result.completion_edge_count;
            edges = merge_directions(jcig, result.edges);
        } else {
            edges = merge_directions(jcig, sgs_reduce(pg));
        }
    }
    return make_seq_graph(jcig, docs, variant, std::move(edges), completions);
}

}  // namespace seqjcig
