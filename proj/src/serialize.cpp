#include "seqjcig/serialize.hpp"

#include <unistd.h>

#include <atomic>
#include <fstream>
#include <set>
#include <sstream>

#include "seqjcig/error.hpp"

namespace seqjcig {

const char* const kTokenizerDescription =
    "lowercase ASCII; tokens are runs of letters and digits (non-ASCII letters included); "
    "'-' and apostrophes kept between word characters; stopwords removed before "
    "keyword extraction and TF-IDF";

namespace {

[[noreturn]] void schema_error(const std::string& what) {
    throw ValidationError("graph schema: " + what);
}

const Json& field(const Json& obj, const char* key, const std::string& where) {
    if (!obj.is_object()) schema_error(where + " must be an object");
    const auto it = obj.find(key);
    if (it == obj.end()) schema_error(where + " is missing '" + key + "'");
    return *it;
}

std::size_t as_count(const Json& j, const std::string& what) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
        throw ValidationError(what + " must be a non-negative integer");
    }
    return j.get<std::size_t>();
}

double as_real(const Json& j, const std::string& what) {
    if (!j.is_number()) throw ValidationError(what + " must be a number");
    return j.get<double>();
}

bool as_bool(const Json& j, const std::string& what) {
    if (!j.is_boolean()) throw ValidationError(what + " must be a boolean");
    return j.get<bool>();
}

std::string as_string(const Json& j, const std::string& what) {
    if (!j.is_string()) throw ValidationError(what + " must be a string");
    return j.get<std::string>();
}

const Json& as_array(const Json& j, const std::string& what) {
    if (!j.is_array()) throw ValidationError(what + " must be an array");
    return j;
}

Json stats_to_json(const GraphStats& s) {
    Json j;
    j["vertex_count"] = s.vertex_count;
    j["edge_count"] = s.edge_count;
    j["dummy_sentence_fraction"] = s.dummy_sentence_fraction;
    j["bidirectional_edge_count"] = s.bidirectional_edge_count;
    j["completion_edge_count"] = s.completion_edge_count;
    j["sparsity_ratio"] = s.sparsity_ratio;
    return j;
}

GraphStats stats_from_json(const Json& j) {
    GraphStats s;
    s.vertex_count = as_count(field(j, "vertex_count", "stats"), "stats.vertex_count");
    s.edge_count = as_count(field(j, "edge_count", "stats"), "stats.edge_count");
    s.dummy_sentence_fraction =
        as_real(field(j, "dummy_sentence_fraction", "stats"), "stats.dummy_sentence_fraction");
    s.bidirectional_edge_count =
        as_count(field(j, "bidirectional_edge_count", "stats"), "stats.bidirectional_edge_count");
    s.completion_edge_count =
        as_count(field(j, "completion_edge_count", "stats"), "stats.completion_edge_count");
    s.sparsity_ratio = as_real(field(j, "sparsity_ratio", "stats"), "stats.sparsity_ratio");
    return s;
}

std::vector<std::size_t> count_list(const Json& j, const std::string& what) {
    std::vector<std::size_t> out;
    for (const auto& x : as_array(j, what)) out.push_back(as_count(x, what));
    return out;
}

}  // namespace

Json params_to_json(const PipelineParams& p) {
    Json j;
    j["window"] = p.window;
    j["top_k"] = p.top_k ? Json(*p.top_k) : Json(nullptr);
    j["damping"] = p.damping;
    j["pagerank_tol"] = p.pagerank_tol;
    j["max_iter"] = p.max_iter;
    j["community_algorithm"] = std::string(to_string(p.community_algorithm));
    j["community_seed"] = p.community_seed;
    j["resolution"] = p.resolution;
    j["sim_thresh"] = p.sim_thresh;
    j["w_thresh"] = p.w_thresh;
    j["variant"] = std::string(to_string(p.variant));
    j["negative_ratio"] = p.negative_ratio;
    j["seed"] = p.seed;
    j["stopwords"] = p.stopwords ? Json(*p.stopwords) : Json(nullptr);
    return j;
}

PipelineParams params_from_json(const Json& j, PipelineParams p) {
    if (!j.is_object()) throw ValidationError("invalid config: expected a JSON object");
    static const std::set<std::string> known = {
        "window",     "top_k",      "damping",  "pagerank_tol",   "max_iter",
        "community_algorithm",      "community_seed",             "resolution",
        "sim_thresh", "w_thresh",   "variant",  "negative_ratio", "seed",
        "stopwords"};
    for (const auto& [key, value] : j.items()) {
        if (known.count(key) == 0) throw ValidationError("invalid config: unknown key '" + key + "'");
    }
    auto key = [](const char* k) { return std::string("invalid config: ") + k; };
    if (j.contains("window")) p.window = as_count(j["window"], key("window"));
    if (j.contains("top_k")) {
        if (j["top_k"].is_null()) {
            p.top_k.reset();
        } else {
            p.top_k = as_count(j["top_k"], key("top_k"));
        }
    }
    if (j.contains("damping")) p.damping = as_real(j["damping"], key("damping"));
    if (j.contains("pagerank_tol")) p.pagerank_tol = as_real(j["pagerank_tol"], key("pagerank_tol"));
    if (j.contains("max_iter")) p.max_iter = as_count(j["max_iter"], key("max_iter"));
    if (j.contains("community_algorithm")) {
        p.community_algorithm = parse_community_algorithm(
            as_string(j["community_algorithm"], key("community_algorithm")));
    }
    if (j.contains("community_seed")) {
        p.community_seed = as_count(j["community_seed"], key("community_seed"));
    }
    if (j.contains("resolution")) p.resolution = as_real(j["resolution"], key("resolution"));
    if (j.contains("sim_thresh")) p.sim_thresh = as_real(j["sim_thresh"], key("sim_thresh"));
    if (j.contains("w_thresh")) p.w_thresh = as_real(j["w_thresh"], key("w_thresh"));
    if (j.contains("variant")) p.variant = parse_variant(as_string(j["variant"], key("variant")));
    if (j.contains("negative_ratio")) {
        p.negative_ratio = as_real(j["negative_ratio"], key("negative_ratio"));
    }
    if (j.contains("seed")) p.seed = as_count(j["seed"], key("seed"));
    if (j.contains("stopwords")) {
        if (j["stopwords"].is_null()) {
            p.stopwords.reset();
        } else {
            std::vector<std::string> words;
            for (const auto& w : as_array(j["stopwords"], key("stopwords"))) {
                words.push_back(as_string(w, key("stopwords")));
            }
            p.stopwords = std::move(words);
        }
    }
    p.validate();
    return p;
}

PipelineParams load_params(const std::filesystem::path& path) {
    const auto text = read_text_file(path);
    try {
        return params_from_json(Json::parse(text));
    } catch (const Json::parse_error& e) {
        throw ValidationError("invalid config: malformed JSON in '" + path.string() + "': " +
                              e.what());
    }
}

Json graph_to_json(const SeqGraph& g, const PipelineParams& params) {
    Json j;
    j["schema_version"] = kGraphSchemaVersion;
    j["variant"] = std::string(to_string(g.variant));
    j["tokenizer"] = kTokenizerDescription;

    Json docs = Json::array();
    for (const auto& d : g.documents) {
        Json jd;
        jd["id"] = d.id;
        jd["title"] = d.title;
        jd["sentences"] = d.sentences;
        docs.push_back(std::move(jd));
    }
    j["documents"] = std::move(docs);

    Json vertices = Json::array();
    for (const auto& v : g.vertices) {
        Json jv;
        jv["id"] = v.node.id;
        jv["keywords"] = v.node.keywords;
        jv["dummy"] = v.node.is_dummy;
        jv["sources"] = v.sources;
        jv["sentences"] = v.sentences;
        vertices.push_back(std::move(jv));
    }
    j["vertices"] = std::move(vertices);

    Json edges = Json::array();
    for (const auto& e : g.edges) {
        Json je;
        je["from"] = e.from;
        je["to"] = e.to;
        je["weight"] = e.weight;
        je["bidirectional"] = e.bidirectional;
        je["completion"] = e.completion;
        edges.push_back(std::move(je));
    }
    j["edges"] = std::move(edges);
    j["stats"] = stats_to_json(compute_stats(g));
    j["params"] = params_to_json(params);
    return j;
}

GraphFile graph_from_json(const Json& j) {
    if (!j.is_object()) schema_error("top level must be an object");
    const auto version = field(j, "schema_version", "graph");
    if (!version.is_number_integer() || version.get<int>() != kGraphSchemaVersion) {
        schema_error("unsupported schema_version");
    }
    GraphFile out;
    auto& g = out.graph;
    g.variant = parse_variant(as_string(field(j, "variant", "graph"), "variant"));
    as_string(field(j, "tokenizer", "graph"), "tokenizer");

    for (const auto& jd : as_array(field(j, "documents", "graph"), "documents")) {
        SeqDocument d;
        d.id = as_string(field(jd, "id", "document"), "document.id");
        d.title = as_string(field(jd, "title", "document"), "document.title");
        for (const auto& s : as_array(field(jd, "sentences", "document"), "document.sentences")) {
            d.sentences.push_back(as_string(s, "document.sentences[]"));
        }
        g.documents.push_back(std::move(d));
    }

    const auto& jvertices = as_array(field(j, "vertices", "graph"), "vertices");
    for (const auto& jv : jvertices) {
        SeqVertex v;
        v.node.id = static_cast<VertexId>(as_count(field(jv, "id", "vertex"), "vertex.id"));
        if (v.node.id != g.vertices.size()) schema_error("vertex ids must be 0..n-1 in order");
        for (const auto& kw : as_array(field(jv, "keywords", "vertex"), "vertex.keywords")) {
            v.node.keywords.push_back(as_string(kw, "vertex.keywords[]"));
        }
        v.node.is_dummy = as_bool(field(jv, "dummy", "vertex"), "vertex.dummy");
        v.sources = count_list(field(jv, "sources", "vertex"), "vertex.sources");
        for (const auto& per_doc : as_array(field(jv, "sentences", "vertex"), "vertex.sentences")) {
            v.sentences.push_back(count_list(per_doc, "vertex.sentences[]"));
        }
        if (v.sentences.size() != g.documents.size()) {
            schema_error("vertex.sentences needs one list per document");
        }
        g.vertices.push_back(std::move(v));
    }

    for (const auto& je : as_array(field(j, "edges", "graph"), "edges")) {
        SeqEdge e;
        e.from = static_cast<VertexId>(as_count(field(je, "from", "edge"), "edge.from"));
        e.to = static_cast<VertexId>(as_count(field(je, "to", "edge"), "edge.to"));
        if (e.from >= g.vertices.size() || e.to >= g.vertices.size() || e.from == e.to) {
            schema_error("edge endpoints must be distinct vertex ids");
        }
        e.weight = as_real(field(je, "weight", "edge"), "edge.weight");
        e.bidirectional = as_bool(field(je, "bidirectional", "edge"), "edge.bidirectional");
        e.completion = as_bool(field(je, "completion", "edge"), "edge.completion");
        g.edges.push_back(e);
    }

    out.stats = stats_from_json(field(j, "stats", "graph"));
    g.completion_edge_count = out.stats.completion_edge_count;
    out.params = params_from_json(field(j, "params", "graph"));
    return out;
}

Json pairs_to_json(const std::vector<DocumentPair>& pairs) {
    Json j = Json::array();
    for (const auto& p : pairs) {
        Json jp;
        jp["a"] = p.doc_a_id;
        jp["b"] = p.doc_b_id;
        jp["label"] = static_cast<int>(p.label);
        j.push_back(std::move(jp));
    }
    return j;
}

std::vector<DocumentPair> pairs_from_json(const Json& j) {
    if (!j.is_array()) throw ValidationError("pair list must be a JSON array");
    std::vector<DocumentPair> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto& jp = j[i];
        const std::string where = "pair " + std::to_string(i);
        if (!jp.is_object() || !jp.contains("a") || !jp.contains("b") || !jp.contains("label")) {
            throw ValidationError(where + " must be an object with 'a', 'b' and 'label'");
        }
        DocumentPair p;
        p.doc_a_id = as_string(jp["a"], where + ".a");
        p.doc_b_id = as_string(jp["b"], where + ".b");
        const auto label = as_count(jp["label"], where + ".label");
        if (label > 1) throw ValidationError(where + ".label must be 0 or 1");
        p.label = label == 1 ? PairLabel::similar : PairLabel::dissimilar;
        if (p.doc_a_id == p.doc_b_id) throw ValidationError(where + " pairs a document with itself");
        out.push_back(std::move(p));
    }
    return out;
}

Json keywords_to_json(const std::vector<std::pair<std::string, KeywordSet>>& per_document) {
    Json j = Json::object();
    for (const auto& [id, keywords] : per_document) {
        Json list = Json::array();
        for (const auto& kw : keywords) list.push_back(Json::array({kw.keyword, kw.score}));
        j[id] = std::move(list);
    }
    return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    static std::atomic<unsigned long> counter{0};
    auto tmp = path;
    tmp += ".tmp-" + std::to_string(::getpid()) + "-" + std::to_string(counter++);
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write '" + tmp.string() + "'");
        out << contents;
        out.flush();
        if (!out) throw IoError("failed writing '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot move output into '" + path.string() + "'");
    }
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace seqjcig
