#include "seqjcig/cli.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <iomanip>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <vector>

#include "CLI11.hpp"

#include "seqjcig/corpus.hpp"
#include "seqjcig/error.hpp"
#include "seqjcig/seqdir.hpp"
#include "seqjcig/serialize.hpp"
#include "seqjcig/stats.hpp"

namespace seqjcig::cli {

namespace fs = std::filesystem;

namespace {

int guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kValidationError;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kRuntimeError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kRuntimeError;
    }
}

PipelineParams resolve_params(const std::optional<fs::path>& config) {
    PipelineParams params;
    if (config) params = load_params(*config);
    params.validate();
    return params;
}

void ensure_parent(const fs::path& path) {
    const auto parent = path.parent_path();
    if (parent.empty()) return;
    std::error_code ec;
    fs::create_directories(parent, ec);
    if (ec) throw IoError("cannot create directory '" + parent.string() + "'");
}

bool valid_file_component(const std::string& id) {
    return id.find('/') == std::string::npos && id.find('\\') == std::string::npos &&
           id != "." && id != "..";
}

struct VariantSummary {
    std::size_t graphs = 0;
    double vertex_count = 0.0;
    double edge_count = 0.0;
    double dummy_sentence_fraction = 0.0;
    double bidirectional_edge_count = 0.0;
    double completion_edge_count = 0.0;
    double sparsity_ratio = 0.0;
    double max_sparsity_ratio = 0.0;

    void add(const GraphStats& s) {
        ++graphs;
        vertex_count += static_cast<double>(s.vertex_count);
        edge_count += static_cast<double>(s.edge_count);
        dummy_sentence_fraction += s.dummy_sentence_fraction;
        bidirectional_edge_count += static_cast<double>(s.bidirectional_edge_count);
        completion_edge_count += static_cast<double>(s.completion_edge_count);
        sparsity_ratio += s.sparsity_ratio;
        max_sparsity_ratio = std::max(max_sparsity_ratio, s.sparsity_ratio);
    }

    Json to_json() const {
        const double n = static_cast<double>(graphs);
        Json mean;
        mean["vertex_count"] = vertex_count / n;
        mean["edge_count"] = edge_count / n;
        mean["dummy_sentence_fraction"] = dummy_sentence_fraction / n;
        mean["bidirectional_edge_count"] = bidirectional_edge_count / n;
        mean["completion_edge_count"] = completion_edge_count / n;
        mean["sparsity_ratio"] = sparsity_ratio / n;
        Json j;
        j["graphs"] = graphs;
        j["mean"] = std::move(mean);
        j["max_sparsity_ratio"] = max_sparsity_ratio;
        return j;
    }
};

std::optional<std::string> sgs_bound_violation(const SeqGraph& g) {
    std::set<std::pair<VertexId, VertexId>> seen;
    for (const auto& e : g.edges) {
        if (!seen.insert(std::minmax(e.from, e.to)).second) {
            return "more than one edge between vertices " + std::to_string(e.from) + " and " +
                   std::to_string(e.to);
        }
    }
    return std::nullopt;
}

}  // namespace

std::string graph_file_name(const std::string& doc_a, const std::string& doc_b,
                            const std::string& variant) {
    return doc_a + "__" + doc_b + "." + variant + ".json";
}

int cmd_keywords(const KeywordsOptions& options, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto params = resolve_params(options.config);
        const auto corpus = load_corpus(options.corpus);
        std::vector<std::pair<std::string, KeywordSet>> result;
        result.reserve(corpus.size());
        for (const auto& doc : corpus) result.emplace_back(doc.id, document_keywords(doc, params));
        ensure_parent(options.out);
        write_file_atomic(options.out, dump(keywords_to_json(result)));
        out << "wrote keywords for " << corpus.size() << " documents to " << options.out.string()
            << "\n";
        return int{kSuccess};
    });
}

int cmd_pairs(const PairsOptions& options, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        auto params = resolve_params(options.config);
        if (options.seed) params.seed = *options.seed;
        const auto corpus = load_corpus(options.corpus);
        const auto result = generate_pairs(corpus, params.negative_ratio, params.seed);
        for (const auto& w : result.warnings) err << "warning: " << w << "\n";
        ensure_parent(options.out);
        write_file_atomic(options.out, dump(pairs_to_json(result.pairs)));
        out << "wrote " << result.positives << " positive and " << result.negatives
            << " negative pairs to " << options.out.string() << "\n";
        return int{kSuccess};
    });
}

int cmd_build(const BuildOptions& options, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        auto params = resolve_params(options.config);
        if (options.variant) params.variant = parse_variant(*options.variant);
        if (options.seed) {
            params.seed = *options.seed;
            params.community_seed = *options.seed;
        }
        if (options.jobs == 0) throw ValidationError("--jobs must be >= 1");

        const auto corpus = load_corpus(options.corpus);
        std::unordered_map<std::string, const Document*> by_id;
        for (const auto& doc : corpus) by_id.emplace(doc.id, &doc);

        Json pair_json;
        try {
            pair_json = Json::parse(read_text_file(options.pairs));
        } catch (const Json::parse_error& e) {
            throw ValidationError("malformed pair list '" + options.pairs.string() + "': " +
                                  e.what());
        }
        const auto pairs = pairs_from_json(pair_json);
        for (const auto& p : pairs) {
            for (const auto* id : {&p.doc_a_id, &p.doc_b_id}) {
                if (by_id.count(*id) == 0) {
                    throw ValidationError("pair (" + p.doc_a_id + ", " + p.doc_b_id +
                                          ") references unknown document '" + *id + "'");
                }
                if (!valid_file_component(*id)) {
                    throw ValidationError("pair (" + p.doc_a_id + ", " + p.doc_b_id +
                                          "): document id '" + *id +
                                          "' cannot be used in a file name");
                }
            }
        }

        std::error_code ec;
        fs::create_directories(options.out_dir, ec);
        if (ec) throw IoError("cannot create output directory '" + options.out_dir.string() + "'");

        const std::string variant_name(to_string(params.variant));
        std::atomic<std::size_t> next{0};
        std::mutex failure_mutex;
        std::optional<int> failure_code;
        std::string failure_message;

        auto worker = [&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= pairs.size()) return;
                {
                    std::lock_guard lock(failure_mutex);
                    if (failure_code) return;
                }
                const auto& p = pairs[i];
                std::ostringstream worker_err;
                const int code = guarded(worker_err, [&] {
                    const auto graph = build_seq_jcig(*by_id.at(p.doc_a_id), *by_id.at(p.doc_b_id),
                                                      params.variant, params);
                    write_file_atomic(options.out_dir /
                                          graph_file_name(p.doc_a_id, p.doc_b_id, variant_name),
                                      dump(graph_to_json(graph, params)));
                    return int{kSuccess};
                });
                if (code != kSuccess) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure_code) {
                        failure_code = code;
                        failure_message = "pair (" + p.doc_a_id + ", " + p.doc_b_id + "): " +
                                          worker_err.str();
                    }
                    return;
                }
            }
        };

        const std::size_t workers = std::min(options.jobs, std::max<std::size_t>(pairs.size(), 1));
        {
            std::vector<std::jthread> pool;
            pool.reserve(workers);
            for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
        }
        if (failure_code) {
            err << failure_message;
            return *failure_code;
        }
        out << "wrote " << pairs.size() << " " << variant_name << " graphs to "
            << options.out_dir.string() << "\n";
        return int{kSuccess};
    });
}

int cmd_stats(const StatsOptions& options, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        std::error_code ec;
        if (!fs::is_directory(options.graph_dir, ec)) {
            throw IoError("graph directory '" + options.graph_dir.string() + "' does not exist");
        }
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(options.graph_dir)) {
            if (entry.is_regular_file() && entry.path().extension() == ".json") {
                files.push_back(entry.path());
            }
        }
        std::sort(files.begin(), files.end());
        if (files.empty()) {
            throw ValidationError("no graph files in '" + options.graph_dir.string() + "'");
        }

        std::map<std::string, VariantSummary> summaries;
        for (const auto& path : files) {
            GraphFile file;
            try {
                file = graph_from_json(Json::parse(read_text_file(path)));
            } catch (const std::exception& e) {
                throw IoError("malformed graph file '" + path.string() + "': " + e.what());
            }
            const auto& g = file.graph;
            auto violation = hp_bound_violation(g);
            if (!violation && g.variant != Variant::undirected) violation = sgs_bound_violation(g);
            if (violation) {
                throw IoError("sparsity bound violated in '" + path.string() + "': " + *violation);
            }
            summaries[std::string(to_string(g.variant))].add(compute_stats(g));
        }

        Json report;
        report["graph_count"] = files.size();
        Json variants = Json::object();
        for (const auto& [name, summary] : summaries) variants[name] = summary.to_json();
        report["variants"] = std::move(variants);
        report["sparsity_bounds"] = "ok";
        if (options.out) {
            ensure_parent(*options.out);
            write_file_atomic(*options.out, dump(report));
        } else {
            out << dump(report);
        }

        out << std::left << std::setw(12) << "variant" << std::right << std::setw(8) << "graphs"
            << std::setw(11) << "vertices" << std::setw(9) << "edges" << std::setw(10)
            << "sparsity" << std::setw(8) << "bidir" << std::setw(11) << "completion"
            << std::setw(8) << "dummy" << "\n";
        out << std::fixed << std::setprecision(3);
        for (const auto& [name, s] : summaries) {
            const double n = static_cast<double>(s.graphs);
            out << std::left << std::setw(12) << name << std::right << std::setw(8) << s.graphs
                << std::setw(11) << s.vertex_count / n << std::setw(9) << s.edge_count / n
                << std::setw(10) << s.sparsity_ratio / n << std::setw(8)
                << s.bidirectional_edge_count / n << std::setw(11) << s.completion_edge_count / n
                << std::setw(8) << s.dummy_sentence_fraction / n << "\n";
        }
        out.unsetf(std::ios::floatfield);
        return int{kSuccess};
    });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sequential concept interaction graphs for document pairs"};
    app.require_subcommand(1);

    KeywordsOptions kw;
    std::string kw_config;
    auto* keywords = app.add_subcommand("keywords", "TextRank keywords per document as JSON");
    keywords->add_option("--corpus", kw.corpus, "manifest file or directory")->required();
    keywords->add_option("--config", kw_config, "JSON config file");
    keywords->add_option("--out", kw.out, "output JSON file")->required();

    PairsOptions pr;
    std::string pr_config;
    std::uint64_t pr_seed = 0;
    auto* pairs = app.add_subcommand("pairs", "labelled document pairs as JSON");
    pairs->add_option("--corpus", pr.corpus, "manifest file or directory")->required();
    pairs->add_option("--config", pr_config, "JSON config file");
    pairs->add_option("--out", pr.out, "output JSON file")->required();
    auto* pr_seed_opt = pairs->add_option("--seed", pr_seed, "sampling seed");

    BuildOptions bd;
    std::string bd_config;
    std::string bd_variant;
    std::uint64_t bd_seed = 0;
    auto* build = app.add_subcommand("build", "one graph JSON per document pair");
    build->add_option("--corpus", bd.corpus, "manifest file or directory")->required();
    build->add_option("--pairs", bd.pairs, "pair list JSON")->required();
    build->add_option("--config", bd_config, "JSON config file");
    build->add_option("--out", bd.out_dir, "output directory")->required();
    auto* bd_variant_opt = build->add_option("--variant", bd_variant, "graph variant")
                               ->check(CLI::IsMember({"i_sgs", "c_sgs", "i_hp", "c_hp",
                                                      "undirected"}));
    auto* bd_seed_opt = build->add_option("--seed", bd_seed, "community detection seed");
    build->add_option("--jobs", bd.jobs, "worker threads")->check(CLI::PositiveNumber);

    StatsOptions st;
    std::string st_out;
    auto* stats = app.add_subcommand("stats", "aggregate statistics of a graph directory");
    stats->add_option("graph_dir", st.graph_dir, "directory of graph JSON files")->required();
    stats->add_option("--out", st_out, "write the aggregate JSON here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kValidationError;
    }

    if (keywords->parsed()) {
        if (!kw_config.empty()) kw.config = kw_config;
        return cmd_keywords(kw, out, err);
    }
    if (pairs->parsed()) {
        if (!pr_config.empty()) pr.config = pr_config;
        if (pr_seed_opt->count() > 0) pr.seed = pr_seed;
        return cmd_pairs(pr, out, err);
    }
    if (build->parsed()) {
        if (!bd_config.empty()) bd.config = bd_config;
        if (bd_variant_opt->count() > 0) bd.variant = bd_variant;
        if (bd_seed_opt->count() > 0) bd.seed = bd_seed;
        return cmd_build(bd, out, err);
    }
    if (!st_out.empty()) st.out = st_out;
    return cmd_stats(st, out, err);
}

}  // namespace seqjcig::cli
