#include "seqjcig/concepts.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "seqjcig/error.hpp"
#include "seqjcig/rng.hpp"

namespace seqjcig {

namespace {

constexpr double kGainEpsilon = 1e-12;

// Weighted graph used between Louvain levels. Self-loop weight is stored
// separately and counted twice in a node's degree.
struct WeightedGraph {
    std::vector<std::vector<std::pair<std::uint32_t, double>>> adjacency;
    std::vector<double> self_loop;
    double total_weight = 0.0;  // sum of edge weights, self-loops once

    std::size_t size() const { return adjacency.size(); }

    double degree(std::uint32_t u) const {
        double k = 2.0 * self_loop[u];
        for (const auto& [v, w] : adjacency[u]) k += w;
        return k;
    }
};

WeightedGraph from_keyword_graph(const KeywordGraph& g) {
    WeightedGraph wg;
    wg.adjacency.resize(g.node_count());
    wg.self_loop.assign(g.node_count(), 0.0);
    for (std::uint32_t u = 0; u < g.node_count(); ++u) {
        for (const auto v : g.neighbors(u)) wg.adjacency[u].emplace_back(v, 1.0);
    }
    wg.total_weight = static_cast<double>(g.edge_count());
    return wg;
}

// One round of local moves. Returns true if any node changed community.
bool local_moves(const WeightedGraph& g, const std::vector<std::uint32_t>& order,
                 double resolution, std::vector<std::uint32_t>& community) {
    const std::size_t n = g.size();
    const double two_m = 2.0 * g.total_weight;
    std::vector<double> degree(n);
    std::vector<double> community_total(n, 0.0);
    std::vector<std::uint32_t> community_size(n, 0);
    for (std::uint32_t u = 0; u < n; ++u) {
        degree[u] = g.degree(u);
        community_total[community[u]] += degree[u];
        ++community_size[community[u]];
    }

    std::vector<double> link_weight(n, 0.0);
    std::vector<std::uint32_t> touched;
    bool any_move = false;
    bool moved = true;
    std::size_t sweeps = 0;
    while (moved && sweeps++ < 1000) {
        moved = false;
        for (const auto u : order) {
            const auto current = community[u];
            community_total[current] -= degree[u];
            --community_size[current];

            touched.clear();
            touched.push_back(current);
            link_weight[current] = 0.0;
            // Leaving for an empty community lets a pass split a community.
            if (community_size[current] > 0) {
                const auto empty = static_cast<std::uint32_t>(
                    std::find(community_size.begin(), community_size.end(), 0u) -
                    community_size.begin());
                touched.push_back(empty);
                link_weight[empty] = 0.0;
            }
            for (const auto& [v, w] : g.adjacency[u]) {
                const auto c = community[v];
                if (std::find(touched.begin(), touched.end(), c) == touched.end()) {
                    touched.push_back(c);
                }
                link_weight[c] += w;
            }

            auto gain = [&](std::uint32_t c) {
                return link_weight[c] - resolution * community_total[c] * degree[u] / two_m;
            };
            auto best = current;
            double best_gain = gain(current);
            for (const auto c : touched) {
                const double candidate = gain(c);
                if (candidate > best_gain + kGainEpsilon) {
                    best = c;
                    best_gain = candidate;
                }
            }
            for (const auto c : touched) link_weight[c] = 0.0;

            community_total[best] += degree[u];
            ++community_size[best];
            if (best != current) {
                community[u] = best;
                moved = true;
                any_move = true;
            }
        }
    }
    return any_move;
}

// Renumbers communities densely in order of first appearance.
std::size_t compact(std::vector<std::uint32_t>& community) {
    std::unordered_map<std::uint32_t, std::uint32_t> remap;
    for (auto& c : community) {
        const auto [it, inserted] = remap.try_emplace(c, static_cast<std::uint32_t>(remap.size()));
        c = it->second;
    }
    return remap.size();
}

WeightedGraph aggregate(const WeightedGraph& g, const std::vector<std::uint32_t>& community,
                        std::size_t count) {
    WeightedGraph out;
    out.adjacency.resize(count);
    out.self_loop.assign(count, 0.0);
    out.total_weight = g.total_weight;
    std::vector<std::map<std::uint32_t, double>> links(count);
    for (std::uint32_t u = 0; u < g.size(); ++u) {
        const auto cu = community[u];
        out.self_loop[cu] += g.self_loop[u];
        for (const auto& [v, w] : g.adjacency[u]) {
            const auto cv = community[v];
            if (cu == cv) {
                if (u < v) out.self_loop[cu] += w;
            } else {
                links[cu][cv] += w;
            }
        }
    }
    for (std::uint32_t c = 0; c < count; ++c) {
        for (const auto& [d, w] : links[c]) out.adjacency[c].emplace_back(d, w);
    }
    return out;
}

double membership_modularity(const WeightedGraph& g, const std::vector<std::uint32_t>& membership,
                             double resolution) {
    const double two_m = 2.0 * g.total_weight;
    std::vector<double> intra(g.size(), 0.0);
    std::vector<double> total(g.size(), 0.0);
    for (std::uint32_t u = 0; u < g.size(); ++u) {
        total[membership[u]] += g.degree(u);
        intra[membership[u]] += 2.0 * g.self_loop[u];
        for (const auto& [v, w] : g.adjacency[u]) {
            if (membership[v] == membership[u]) intra[membership[u]] += w;
        }
    }
    double q = 0.0;
    for (std::size_t c = 0; c < g.size(); ++c) {
        q += intra[c] / two_m - resolution * (total[c] / two_m) * (total[c] / two_m);
    }
    return q;
}

// Kernighan-Lin style pass: repeatedly apply the best move of an unlocked node,
// even a losing one, then keep the best prefix of the move sequence. Returns true
// if modularity went up.
bool kl_refine(const WeightedGraph& g, double resolution, std::vector<std::uint32_t>& community) {
    const std::size_t n = g.size();
    const double two_m = 2.0 * g.total_weight;
    std::vector<double> degree(n);
    std::vector<double> total(n, 0.0);
    std::vector<std::uint32_t> size(n, 0);
    for (std::uint32_t u = 0; u < n; ++u) {
        degree[u] = g.degree(u);
        total[community[u]] += degree[u];
        ++size[community[u]];
    }
    std::vector<bool> locked(n, false);
    std::vector<double> link(n, 0.0);
    std::vector<std::uint32_t> touched;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> moves;  // node, previous community
    double sum = 0.0;
    double best_sum = 0.0;
    std::size_t best_len = 0;

    for (std::size_t step = 0; step < n; ++step) {
        bool found = false;
        double best_gain = 0.0;
        std::uint32_t best_u = 0;
        std::uint32_t best_c = 0;
        for (std::uint32_t u = 0; u < n; ++u) {
            if (locked[u]) continue;
            const auto cur = community[u];
            touched.clear();
            for (const auto& [v, w] : g.adjacency[u]) {
                if (link[community[v]] == 0.0) touched.push_back(community[v]);
                link[community[v]] += w;
            }
            const double stay = link[cur] - resolution * (total[cur] - degree[u]) * degree[u] / two_m;
            auto consider = [&](std::uint32_t c, double l) {
                const double gain = l - resolution * total[c] * degree[u] / two_m - stay;
                if (!found || gain > best_gain + kGainEpsilon) {
                    found = true;
                    best_gain = gain;
                    best_u = u;
                    best_c = c;
                }
            };
            std::sort(touched.begin(), touched.end());
            for (const auto c : touched) {
                if (c != cur) consider(c, link[c]);
            }
            if (size[cur] > 1) {
                const auto empty = static_cast<std::uint32_t>(
                    std::find(size.begin(), size.end(), 0u) - size.begin());
                consider(empty, 0.0);
            }
            for (const auto c : touched) link[c] = 0.0;
        }
        if (!found) break;
        const auto from = community[best_u];
        total[from] -= degree[best_u];
        --size[from];
        total[best_c] += degree[best_u];
        ++size[best_c];
        community[best_u] = best_c;
        locked[best_u] = true;
        moves.emplace_back(best_u, from);
        sum += best_gain;
        if (sum > best_sum + kGainEpsilon) {
            best_sum = sum;
            best_len = moves.size();
        }
    }
    while (moves.size() > best_len) {
        community[moves.back().first] = moves.back().second;
        moves.pop_back();
    }
    return best_len > 0;
}

// Multi-level phase starting from `membership`, followed by node-level moves on
// the base graph. Repeats while the node-level pass still moves something.
void louvain_pass(const WeightedGraph& base, const std::vector<std::uint32_t>& base_order,
                  double resolution, std::vector<std::uint32_t>& membership) {
    for (std::size_t round = 0; round < 100; ++round) {
        compact(membership);
        std::size_t count = 0;
        for (const auto m : membership) count = std::max<std::size_t>(count, m + 1);
        WeightedGraph level = aggregate(base, membership, count);
        for (;;) {
            std::vector<std::uint32_t> community(level.size());
            std::iota(community.begin(), community.end(), 0u);
            std::vector<std::uint32_t> order(level.size());
            std::iota(order.begin(), order.end(), 0u);
            if (!local_moves(level, order, resolution, community)) break;
            count = compact(community);
            for (auto& m : membership) m = community[m];
            if (count == level.size()) break;
            level = aggregate(level, community, count);
        }
        compact(membership);
        if (!local_moves(base, base_order, resolution, membership) &&
            !kl_refine(base, resolution, membership)) {
            break;
        }
    }
    compact(membership);
}

std::vector<std::uint32_t> greedy_modularity(const KeywordGraph& g, double resolution) {
    const std::size_t n = g.node_count();
    std::vector<std::uint32_t> membership(n);
    std::iota(membership.begin(), membership.end(), 0u);
    const double m = static_cast<double>(g.edge_count());
    if (m == 0.0) return membership;

    // e[i][j]: fraction of edge ends between communities i and j; a[i]: degree fraction.
    std::vector<std::map<std::uint32_t, double>> e(n);
    std::vector<double> a(n);
    for (std::uint32_t u = 0; u < n; ++u) {
        a[u] = static_cast<double>(g.neighbors(u).size()) / (2.0 * m);
        for (const auto v : g.neighbors(u)) e[u][v] += 1.0 / (2.0 * m);
    }
    std::vector<bool> alive(n, true);
    std::vector<std::vector<std::uint32_t>> members(n);
    for (std::uint32_t u = 0; u < n; ++u) members[u] = {u};

    for (;;) {
        double best_delta = kGainEpsilon;
        std::uint32_t best_i = 0;
        std::uint32_t best_j = 0;
        bool found = false;
        for (std::uint32_t i = 0; i < n; ++i) {
            if (!alive[i]) continue;
            for (const auto& [j, eij] : e[i]) {
                if (j <= i) continue;
                const double delta = 2.0 * (eij - resolution * a[i] * a[j]);
                if (delta > best_delta) {
                    best_delta = delta;
                    best_i = i;
                    best_j = j;
                    found = true;
                }
            }
        }
        if (!found) break;

        // Merge j into i.
        for (const auto& [k, ejk] : e[best_j]) {
            if (k == best_i) continue;
            e[best_i][k] += ejk;
            e[k][best_i] += ejk;
            e[k].erase(best_j);
        }
        e[best_i].erase(best_j);
        e[best_j].clear();
        a[best_i] += a[best_j];
        alive[best_j] = false;
        members[best_i].insert(members[best_i].end(), members[best_j].begin(),
                               members[best_j].end());
        members[best_j].clear();
    }
    for (std::uint32_t c = 0; c < n; ++c) {
        for (const auto u : members[c]) membership[u] = c;
    }
    compact(membership);
    return membership;
}

constexpr std::size_t kLouvainRestarts = 8;

std::vector<std::uint32_t> louvain(const KeywordGraph& g, std::uint64_t seed, double resolution) {
    const std::size_t n = g.node_count();
    std::vector<std::uint32_t> identity(n);
    std::iota(identity.begin(), identity.end(), 0u);
    if (g.edge_count() == 0) return identity;

    const WeightedGraph base = from_keyword_graph(g);
    Rng rng(seed);
    std::vector<std::uint32_t> best;
    double best_q = 0.0;
    for (std::size_t restart = 0; restart < kLouvainRestarts; ++restart) {
        std::vector<std::uint32_t> order = identity;
        rng.shuffle(std::span(order));
        std::vector<std::uint32_t> membership = identity;
        local_moves(base, order, resolution, membership);
        louvain_pass(base, order, resolution, membership);
        const double q = membership_modularity(base, membership, resolution);
        if (best.empty() || q > best_q + kGainEpsilon) {
            best = std::move(membership);
            best_q = q;
        }
    }
    {
        auto membership = greedy_modularity(g, resolution);
        louvain_pass(base, identity, resolution, membership);
        const double q = membership_modularity(base, membership, resolution);
        if (q > best_q + kGainEpsilon) {
            best = std::move(membership);
            best_q = q;
        }
    }
    // Iterated local search: scatter a few nodes of the best partition and reoptimize.
    const std::size_t kick = std::max<std::size_t>(2, n / 4);
    // Small graphs get more rounds; refinement cost grows quickly with size.
    const std::size_t rounds = std::clamp<std::size_t>(4000 / n, 32, 400);
    for (std::size_t round = 0; round < rounds; ++round) {
        std::vector<std::uint32_t> membership = best;
        if (round % 2 == 0) {
            for (std::size_t i = 0; i < kick; ++i) {
                membership[rng.below(n)] = static_cast<std::uint32_t>(rng.below(n));
            }
        } else {
            // Fresh random partition into a few groups.
            const std::uint64_t groups = 2 + (round / 2) % 3;
            for (auto& m : membership) m = static_cast<std::uint32_t>(rng.below(groups));
        }
        std::vector<std::uint32_t> order = identity;
        rng.shuffle(std::span(order));
        louvain_pass(base, order, resolution, membership);
        const double q = membership_modularity(base, membership, resolution);
        if (q > best_q + kGainEpsilon) {
            best = std::move(membership);
            best_q = q;
        }
    }
    return best;
}

std::vector<std::uint32_t> connected_components(const KeywordGraph& g) {
    const std::size_t n = g.node_count();
    std::vector<std::uint32_t> component(n, UINT32_MAX);
    std::uint32_t next = 0;
    std::vector<std::uint32_t> stack;
    for (std::uint32_t s = 0; s < n; ++s) {
        if (component[s] != UINT32_MAX) continue;
        component[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            const auto u = stack.back();
            stack.pop_back();
            for (const auto v : g.neighbors(u)) {
                if (component[v] == UINT32_MAX) {
                    component[v] = next;
                    stack.push_back(v);
                }
            }
        }
        ++next;
    }
    return component;
}

std::vector<Concept> to_concepts(const KeywordGraph& g,
                                 const std::vector<std::uint32_t>& membership) {
    std::map<std::uint32_t, std::vector<std::string>> groups;
    for (std::uint32_t u = 0; u < g.node_count(); ++u) groups[membership[u]].push_back(g.nodes()[u]);
    std::vector<Concept> concepts;
    concepts.reserve(groups.size());
    for (auto& [c, words] : groups) {
        std::sort(words.begin(), words.end());
        concepts.push_back({0, std::move(words), false});
    }
    std::sort(concepts.begin(), concepts.end(),
              [](const Concept& x, const Concept& y) { return x.keywords < y.keywords; });
    for (std::uint32_t i = 0; i < concepts.size(); ++i) concepts[i].id = i;
    return concepts;
}

}  // namespace

CommunityAlgorithm parse_community_algorithm(std::string_view name) {
    if (name == "louvain") return CommunityAlgorithm::louvain;
    if (name == "greedy_modularity") return CommunityAlgorithm::greedy_modularity;
    throw ValidationError("unknown community algorithm '" + std::string(name) + "'");
}

std::string_view to_string(CommunityAlgorithm algorithm) {
    switch (algorithm) {
        case CommunityAlgorithm::louvain: return "louvain";
        case CommunityAlgorithm::greedy_modularity: return "greedy_modularity";
    }
    throw ValidationError("unknown community algorithm");
}

KeywordGraph build_keyword_graph(const KeywordSet& keywords, const Document& doc) {
    KeywordGraph g;
    std::unordered_map<std::string, std::uint32_t> ids;
    for (const auto& kw : keywords) {
        if (ids.count(kw.keyword) == 0) ids.emplace(kw.keyword, g.add_node(kw.keyword));
    }
    for (const auto& sentence : doc.sentences) {
        std::vector<std::uint32_t> present;
        for (const auto& token : sentence.tokens) {
            const auto it = ids.find(token);
            if (it != ids.end()) present.push_back(it->second);
        }
        std::sort(present.begin(), present.end());
        present.erase(std::unique(present.begin(), present.end()), present.end());
        for (std::size_t i = 0; i < present.size(); ++i) {
            for (std::size_t j = i + 1; j < present.size(); ++j) g.add_edge(present[i], present[j]);
        }
    }
    return g;
}

double modularity(const KeywordGraph& g, const std::vector<std::uint32_t>& membership,
                  double resolution) {
    if (membership.size() != g.node_count()) {
        throw ValidationError("membership size does not match node count");
    }
    const double m = static_cast<double>(g.edge_count());
    if (m == 0.0) return 0.0;
    std::unordered_map<std::uint32_t, double> intra;
    std::unordered_map<std::uint32_t, double> degree;
    for (std::uint32_t u = 0; u < g.node_count(); ++u) {
        degree[membership[u]] += static_cast<double>(g.neighbors(u).size());
        for (const auto v : g.neighbors(u)) {
            if (u < v && membership[u] == membership[v]) intra[membership[u]] += 1.0;
        }
    }
    // Sum in community-id order so the result does not depend on hashing.
    std::map<std::uint32_t, double> ordered(degree.begin(), degree.end());
    double q = 0.0;
    for (const auto& [c, d] : ordered) {
        const double frac = d / (2.0 * m);
        q += intra[c] / m - resolution * frac * frac;
    }
    return q;
}

double modularity(const KeywordGraph& g, const std::vector<Concept>& partition,
                  double resolution) {
    std::unordered_map<std::string, std::uint32_t> node_of;
    for (std::uint32_t u = 0; u < g.node_count(); ++u) node_of.emplace(g.nodes()[u], u);
    std::vector<std::uint32_t> membership(g.node_count(), UINT32_MAX);
    for (std::uint32_t c = 0; c < partition.size(); ++c) {
        for (const auto& kw : partition[c].keywords) {
            const auto it = node_of.find(kw);
            if (it == node_of.end()) {
                throw ValidationError("partition keyword '" + kw + "' is not a graph node");
            }
            if (membership[it->second] != UINT32_MAX) {
                throw ValidationError("keyword '" + kw + "' appears in more than one community");
            }
            membership[it->second] = c;
        }
    }
    for (std::uint32_t u = 0; u < g.node_count(); ++u) {
        if (membership[u] == UINT32_MAX) {
            throw ValidationError("keyword '" + g.nodes()[u] + "' is not covered by the partition");
        }
    }
    return modularity(g, membership, resolution);
}

std::vector<Concept> detect_communities(const KeywordGraph& g, CommunityAlgorithm algorithm,
                                        std::uint64_t seed, double resolution) {
    if (!(resolution > 0.0)) throw ValidationError("resolution must be positive");
    if (g.node_count() == 0) return {};
    std::vector<std::uint32_t> membership;
    switch (algorithm) {
        case CommunityAlgorithm::louvain: membership = louvain(g, seed, resolution); break;
        case CommunityAlgorithm::greedy_modularity:
            membership = greedy_modularity(g, resolution);
            break;
    }
    // Never return something worse than one community per connected component.
    const auto components = connected_components(g);
    if (modularity(g, components, resolution) >
        modularity(g, membership, resolution) + kGainEpsilon) {
        membership = components;
    }
    return to_concepts(g, membership);
}

}  // namespace seqjcig
