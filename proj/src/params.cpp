#include "seqjcig/params.hpp"

#include <cmath>

#include "seqjcig/error.hpp"

namespace seqjcig {

Variant parse_variant(std::string_view name) {
    if (name == "i_sgs") return Variant::i_sgs;
    if (name == "c_sgs") return Variant::c_sgs;
    if (name == "i_hp") return Variant::i_hp;
    if (name == "c_hp") return Variant::c_hp;
    if (name == "undirected") return Variant::undirected;
    throw ValidationError("unknown variant '" + std::string(name) + "'");
}

std::string_view to_string(Variant variant) {
    switch (variant) {
        case Variant::i_sgs: return "i_sgs";
        case Variant::c_sgs: return "c_sgs";
        case Variant::i_hp: return "i_hp";
        case Variant::c_hp: return "c_hp";
        case Variant::undirected: return "undirected";
    }
    throw ValidationError("unknown variant");
}

void PipelineParams::validate() const {
    auto fail = [](const std::string& what) { throw ValidationError("invalid config: " + what); };
    if (window < 2) fail("window must be >= 2");
    if (top_k && *top_k == 0) fail("top_k must be >= 1");
    if (!(damping > 0.0 && damping < 1.0)) fail("damping must lie in (0, 1)");
    if (!(pagerank_tol > 0.0) || !std::isfinite(pagerank_tol)) fail("pagerank_tol must be > 0");
    if (max_iter == 0) fail("max_iter must be >= 1");
    if (!(resolution > 0.0) || !std::isfinite(resolution)) fail("resolution must be > 0");
    if (!(sim_thresh >= 0.0 && sim_thresh <= 1.0)) fail("sim_thresh must lie in [0, 1]");
    if (!(w_thresh >= 0.0 && w_thresh <= 1.0)) fail("w_thresh must lie in [0, 1]");
    if (!(negative_ratio > 0.0) || !std::isfinite(negative_ratio)) {
        fail("negative_ratio must be > 0");
    }
}

StopwordSet PipelineParams::stopword_set() const {
    return stopwords ? StopwordSet(*stopwords) : StopwordSet();
}

}  // namespace seqjcig
