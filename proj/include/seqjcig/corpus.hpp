#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace seqjcig {

struct Sentence {
    std::size_t index = 0;
    std::string text;
    std::vector<std::string> tokens;

    bool operator==(const Sentence&) const = default;
};

struct Document {
    std::string id;
    std::string title;
    std::string subject;
    std::set<std::string> tags;
    std::string raw_text;
    std::vector<Sentence> sentences;
};

enum class PairLabel : int { dissimilar = 0, similar = 1 };

struct DocumentPair {
    std::string doc_a_id;
    std::string doc_b_id;
    PairLabel label = PairLabel::dissimilar;

    bool operator==(const DocumentPair&) const = default;
};

/// Lowercase token filter applied before keyword extraction and vectorization.
class StopwordSet {
public:
    /// The built-in English list.
    StopwordSet();
    explicit StopwordSet(std::vector<std::string> words);

    bool contains(std::string_view token) const;
    std::size_t size() const { return words_.size(); }

    /// Tokens of `tokens` that are not stopwords, in order.
    std::vector<std::string> filter(const std::vector<std::string>& tokens) const;

    static const std::vector<std::string>& english();

private:
    std::unordered_set<std::string> words_;
};

/// Splits on '.', '!' or '?' followed by whitespace or end of text. A period
/// ending one of the known abbreviations (e.g. i.e. etc. fig. no.) does not
/// end a sentence. Segments are trimmed; empty segments are dropped.
std::vector<std::string> split_sentences(std::string_view text);

/// Lowercased alphanumeric runs. Hyphens and apostrophes are kept when they
/// sit between two word characters ("re-attach", "don't"). Non-ASCII letters
/// count as word characters; Unicode punctuation separates.
std::vector<std::string> tokenize(std::string_view sentence_text);

/// Builds a Document from raw text: splits, tokenizes and validates it.
/// Throws ValidationError when the text yields no sentence.
Document make_document(std::string id, std::string title, std::string subject,
                       std::set<std::string> tags, std::string raw_text);

/// Loads a corpus from a manifest file, or from a directory containing
/// `manifest.json`. The manifest is a JSON array of records
/// {"id","title","subject","tags":[..],"text"|"text_path"}; `text_path` is
/// resolved relative to the manifest's directory.
std::vector<Document> load_corpus(const std::filesystem::path& path);

struct PairSet {
    std::vector<DocumentPair> pairs;
    std::size_t positives = 0;
    std::size_t negatives = 0;
    std::vector<std::string> warnings;
};

/// Positive: same subject and at least two shared tags. Negative: different
/// subjects, sampled without replacement. The result is shuffled by `seed`.
PairSet generate_pairs(const std::vector<Document>& corpus, double negative_ratio,
                       std::uint64_t seed);

bool is_positive_pair(const Document& a, const Document& b);

}  // namespace seqjcig
