#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "seqjcig/corpus.hpp"
#include "seqjcig/keywords.hpp"
#include "seqjcig/params.hpp"
#include "seqjcig/seqdir.hpp"
#include "seqjcig/stats.hpp"

namespace seqjcig {

using Json = nlohmann::ordered_json;

inline constexpr int kGraphSchemaVersion = 1;

/// Human-readable description of the tokenizer, embedded in graph files so
/// consumers can reproduce it.
extern const char* const kTokenizerDescription;

Json params_to_json(const PipelineParams& params);

/// Every key is optional and starts from `base`. Unknown keys and out-of-range
/// values throw ValidationError.
PipelineParams params_from_json(const Json& j, PipelineParams base = {});

/// Reads a JSON config file. A missing file is an IoError.
PipelineParams load_params(const std::filesystem::path& path);

struct GraphFile {
    SeqGraph graph;
    GraphStats stats;
    PipelineParams params;

    bool operator==(const GraphFile&) const = default;
};

Json graph_to_json(const SeqGraph& graph, const PipelineParams& params);

/// Throws ValidationError on any schema mismatch.
GraphFile graph_from_json(const Json& j);

Json pairs_to_json(const std::vector<DocumentPair>& pairs);
std::vector<DocumentPair> pairs_from_json(const Json& j);

Json keywords_to_json(const std::vector<std::pair<std::string, KeywordSet>>& per_document);

/// Canonical text form used for every file the tools write.
std::string dump(const Json& j);

/// Writes through a temporary file in the same directory and renames it
/// into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace seqjcig
