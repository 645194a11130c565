#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

namespace seqjcig::cli {

enum ExitCode : int { kSuccess = 0, kRuntimeError = 1, kValidationError = 2 };

struct KeywordsOptions {
    std::filesystem::path corpus;
    std::optional<std::filesystem::path> config;
    std::filesystem::path out;
};

struct PairsOptions {
    std::filesystem::path corpus;
    std::optional<std::filesystem::path> config;
    std::filesystem::path out;
    std::optional<std::uint64_t> seed;
};

struct BuildOptions {
    std::filesystem::path corpus;
    std::filesystem::path pairs;
    std::optional<std::filesystem::path> config;
    std::filesystem::path out_dir;
    std::optional<std::string> variant;
    std::optional<std::uint64_t> seed;
    std::size_t jobs = 1;
};

struct StatsOptions {
    std::filesystem::path graph_dir;
    std::optional<std::filesystem::path> out;
};

int cmd_keywords(const KeywordsOptions& options, std::ostream& out, std::ostream& err);
int cmd_pairs(const PairsOptions& options, std::ostream& out, std::ostream& err);
int cmd_build(const BuildOptions& options, std::ostream& out, std::ostream& err);
int cmd_stats(const StatsOptions& options, std::ostream& out, std::ostream& err);

/// Parses argv (argv[0] is the program name) and dispatches to a subcommand.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// File name of a built graph: `<a>__<b>.<variant>.json`.
std::string graph_file_name(const std::string& doc_a, const std::string& doc_b,
                            const std::string& variant);

}  // namespace seqjcig::cli
