#include "seqjcig/corpus.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "seqjcig/error.hpp"
#include "seqjcig/rng.hpp"

namespace seqjcig {

namespace {

// NLTK English list.
const std::vector<std::string> kEnglishStopwords = {
    "i", "me", "my", "myself", "we", "our", "ours", "ourselves", "you", "you're",
    "you've", "you'll", "you'd", "your", "yours", "yourself", "yourselves", "he", "him",
    "his", "himself", "she", "she's", "her", "hers", "herself", "it", "it's", "its",
    "itself", "they", "them", "their", "theirs", "themselves", "what", "which", "who",
    "whom", "this", "that", "that'll", "these", "those", "am", "is", "are", "was",
    "were", "be", "been", "being", "have", "has", "had", "having", "do", "does", "did",
    "doing", "a", "an", "the", "and", "but", "if", "or", "because", "as", "until",
    "while", "of", "at", "by", "for", "with", "about", "against", "between", "into",
    "through", "during", "before", "after", "above", "below", "to", "from", "up",
    "down", "in", "out", "on", "off", "over", "under", "again", "further", "then",
    "once", "here", "there", "when", "where", "why", "how", "all", "any", "both",
    "each", "few", "more", "most", "other", "some", "such", "no", "nor", "not", "only",
    "own", "same", "so", "than", "too", "very", "s", "t", "can", "will", "just", "don",
    "don't", "should", "should've", "now", "d", "ll", "m", "o", "re", "ve", "y", "ain",
    "aren", "aren't", "couldn", "couldn't", "didn", "didn't", "doesn", "doesn't",
    "hadn", "hadn't", "hasn", "hasn't", "haven", "haven't", "isn", "isn't", "ma",
    "mightn", "mightn't", "mustn", "mustn't", "needn", "needn't", "shan", "shan't",
    "shouldn", "shouldn't", "wasn", "wasn't", "weren", "weren't", "won", "won't",
    "wouldn", "wouldn't"};

constexpr std::array<std::string_view, 5> kAbbreviations = {"e.g.", "i.e.", "etc.", "fig.",
                                                            "no."};

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

char ascii_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

bool ends_with_abbreviation(std::string_view text, std::size_t period_pos) {
    std::size_t begin = period_pos;
    while (begin > 0 && !is_space(text[begin - 1])) --begin;
    std::string word;
    for (std::size_t i = begin; i <= period_pos; ++i) word.push_back(ascii_lower(text[i]));
    const auto first = word.find_first_not_of("(\"'[");
    if (first == std::string::npos) return false;
    const std::string_view bare = std::string_view(word).substr(first);
    return std::find(kAbbreviations.begin(), kAbbreviations.end(), bare) != kAbbreviations.end();
}

struct CodePoint {
    char32_t value;
    std::size_t length;
};

CodePoint decode_utf8(std::string_view s, std::size_t pos) {
    const auto b0 = static_cast<unsigned char>(s[pos]);
    if (b0 < 0x80) return {b0, 1};
    std::size_t len = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        return {0xFFFD, 1};
    }
    if (pos + len > s.size()) return {0xFFFD, 1};
    for (std::size_t k = 1; k < len; ++k) {
        const auto b = static_cast<unsigned char>(s[pos + k]);
        if ((b & 0xC0) != 0x80) return {0xFFFD, 1};
        cp = (cp << 6) | (b & 0x3F);
    }
    return {cp, len};
}

bool is_word_char(char32_t cp) {
    if (cp < 0x80) {
        return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') || (cp >= '0' && cp <= '9');
    }
    if (cp == 0xFFFD) return false;
    if (cp <= 0xBF || cp == 0xD7 || cp == 0xF7) return false;
    if (cp >= 0x2000 && cp <= 0x206F) return false;
    if (cp >= 0x2190 && cp <= 0x2BFF) return false;
    if (cp >= 0x3000 && cp <= 0x303F) return false;
    if (cp >= 0xFE30 && cp <= 0xFE4F) return false;
    if (cp >= 0xFF00 && cp <= 0xFF0F) return false;
    return true;
}

bool is_joiner(char32_t cp) {
    return cp == '-' || cp == '\'' || cp == 0x2019 || cp == 0x2010 || cp == 0x2011;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("failed reading '" + path.string() + "'");
    return buf.str();
}

const nlohmann::json& require_field(const nlohmann::json& record, const char* key,
                                    std::size_t position) {
    const auto it = record.find(key);
    if (it == record.end()) {
        throw ValidationError("manifest record " + std::to_string(position) +
                              " is missing field '" + key + "'");
    }
    return *it;
}

std::string require_string(const nlohmann::json& record, const char* key, std::size_t position) {
    const auto& value = require_field(record, key, position);
    if (!value.is_string()) {
        throw ValidationError("manifest record " + std::to_string(position) + ": field '" + key +
                              "' must be a string");
    }
    return value.get<std::string>();
}

}  // namespace

StopwordSet::StopwordSet() : StopwordSet(english()) {}

StopwordSet::StopwordSet(std::vector<std::string> words) {
    for (auto& w : words) {
        std::transform(w.begin(), w.end(), w.begin(), ascii_lower);
        words_.insert(std::move(w));
    }
}

bool StopwordSet::contains(std::string_view token) const {
    return words_.find(std::string(token)) != words_.end();
}

std::vector<std::string> StopwordSet::filter(const std::vector<std::string>& tokens) const {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) {
        if (!contains(t)) out.push_back(t);
    }
    return out;
}

const std::vector<std::string>& StopwordSet::english() { return kEnglishStopwords; }

std::vector<std::string> split_sentences(std::string_view text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (c != '.' && c != '!' && c != '?') {
            ++i;
            continue;
        }
        std::size_t run_end = i + 1;
        while (run_end < text.size() &&
               (text[run_end] == '.' || text[run_end] == '!' || text[run_end] == '?')) {
            ++run_end;
        }
        std::size_t end = run_end;
        while (end < text.size() &&
               (text[end] == '"' || text[end] == '\'' || text[end] == ')' || text[end] == ']')) {
            ++end;
        }
        const bool boundary = end == text.size() || is_space(text[end]);
        const bool single_period = c == '.' && run_end == i + 1;
        if (boundary && !(single_period && ends_with_abbreviation(text, i))) {
            const auto segment = trim(text.substr(start, end - start));
            if (!segment.empty()) out.emplace_back(segment);
            start = end;
        }
        i = end;
    }
    const auto tail = trim(text.substr(std::min(start, text.size())));
    if (!tail.empty()) out.emplace_back(tail);
    return out;
}

std::vector<std::string> tokenize(std::string_view sentence_text) {
    std::vector<std::string> tokens;
    std::string current;
    std::size_t pos = 0;
    while (pos < sentence_text.size()) {
        const auto cp = decode_utf8(sentence_text, pos);
        if (is_word_char(cp.value)) {
            if (cp.length == 1) {
                current.push_back(ascii_lower(sentence_text[pos]));
            } else {
                current.append(sentence_text.substr(pos, cp.length));
            }
        } else if (is_joiner(cp.value) && !current.empty()) {
            const std::size_t next = pos + cp.length;
            if (next < sentence_text.size() && is_word_char(decode_utf8(sentence_text, next).value)) {
                current.append(sentence_text.substr(pos, cp.length));
            } else {
                tokens.push_back(std::move(current));
                current.clear();
            }
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
        pos += cp.length;
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

Document make_document(std::string id, std::string title, std::string subject,
                       std::set<std::string> tags, std::string raw_text) {
    Document doc;
    doc.id = std::move(id);
    doc.title = std::move(title);
    doc.subject = std::move(subject);
    doc.tags = std::move(tags);
    doc.raw_text = std::move(raw_text);
    auto pieces = split_sentences(doc.raw_text);
    if (pieces.empty()) throw ValidationError("document '" + doc.id + "' has empty text");
    doc.sentences.reserve(pieces.size());
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        Sentence s;
        s.index = i;
        s.tokens = tokenize(pieces[i]);
        s.text = std::move(pieces[i]);
        doc.sentences.push_back(std::move(s));
    }
    return doc;
}

std::vector<Document> load_corpus(const std::filesystem::path& path) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (!fs::exists(path, ec)) throw IoError("corpus path '" + path.string() + "' does not exist");

    fs::path manifest = path;
    if (fs::is_directory(path, ec)) {
        manifest = path / "manifest.json";
        if (!fs::exists(manifest, ec)) {
            throw ValidationError("empty corpus: no manifest.json in '" + path.string() + "'");
        }
    }

    nlohmann::json records;
    try {
        records = nlohmann::json::parse(read_file(manifest));
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("malformed manifest '" + manifest.string() + "': " + e.what());
    }
    if (!records.is_array()) {
        throw ValidationError("manifest '" + manifest.string() + "' must be a JSON array");
    }
    if (records.empty()) throw ValidationError("empty corpus");

    const fs::path base = manifest.parent_path();
    std::vector<Document> docs;
    docs.reserve(records.size());
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& rec = records[i];
        if (!rec.is_object()) {
            throw ValidationError("manifest record " + std::to_string(i) + " is not an object");
        }
        std::string id = require_string(rec, "id", i);
        if (id.empty()) throw ValidationError("manifest record " + std::to_string(i) + " has empty id");
        if (!seen.insert(id).second) throw ValidationError("duplicate document id '" + id + "'");
        std::string subject = require_string(rec, "subject", i);
        std::string title = rec.contains("title") ? require_string(rec, "title", i) : std::string{};

        const auto& tag_field = require_field(rec, "tags", i);
        if (!tag_field.is_array()) {
            throw ValidationError("document '" + id + "': tags must be an array of strings");
        }
        std::set<std::string> tags;
        for (const auto& t : tag_field) {
            if (!t.is_string()) {
                throw ValidationError("document '" + id + "': tags must be an array of strings");
            }
            tags.insert(t.get<std::string>());
        }

        const bool has_text = rec.contains("text");
        const bool has_path = rec.contains("text_path");
        if (has_text == has_path) {
            throw ValidationError("document '" + id +
                                  "' must carry exactly one of 'text' or 'text_path'");
        }
        std::string text = has_text ? require_string(rec, "text", i)
                                    : read_file(base / require_string(rec, "text_path", i));
        docs.push_back(make_document(std::move(id), std::move(title), std::move(subject),
                                     std::move(tags), std::move(text)));
    }
    return docs;
}

bool is_positive_pair(const Document& a, const Document& b) {
    if (a.subject != b.subject) return false;
    std::size_t common = 0;
    for (const auto& t : a.tags) {
        if (b.tags.count(t) != 0 && ++common >= 2) return true;
    }
    return false;
}

PairSet generate_pairs(const std::vector<Document>& corpus, double negative_ratio,
                       std::uint64_t seed) {
    if (corpus.size() < 2) throw ValidationError("pair generation needs at least 2 documents");
    if (!(negative_ratio > 0.0) || !std::isfinite(negative_ratio)) {
        throw ValidationError("negative_ratio must be a positive finite number");
    }

    PairSet result;
    std::vector<std::pair<std::size_t, std::size_t>> negative_pool;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        for (std::size_t j = i + 1; j < corpus.size(); ++j) {
            if (is_positive_pair(corpus[i], corpus[j])) {
                result.pairs.push_back({corpus[i].id, corpus[j].id, PairLabel::similar});
            } else if (corpus[i].subject != corpus[j].subject) {
                negative_pool.emplace_back(i, j);
            }
        }
    }
    result.positives = result.pairs.size();

    // With no positives there is nothing to balance against; fall back to one
    // negative per disjoint document pair.
    const double basis = result.positives > 0 ? static_cast<double>(result.positives)
                                              : static_cast<double>(corpus.size() / 2);
    if (result.positives == 0) {
        result.warnings.push_back("no positive pairs (same subject and >= 2 common tags) found");
    }
    auto wanted = static_cast<std::size_t>(std::llround(negative_ratio * basis));
    if (wanted > negative_pool.size()) {
        result.warnings.push_back("requested " + std::to_string(wanted) +
                                  " negative pairs but only " +
                                  std::to_string(negative_pool.size()) + " are available");
        wanted = negative_pool.size();
    }

    Rng rng(seed);
    // Partial Fisher-Yates: the first `wanted` slots become a uniform sample.
    for (std::size_t k = 0; k < wanted; ++k) {
        const auto j = k + static_cast<std::size_t>(rng.below(negative_pool.size() - k));
        std::swap(negative_pool[k], negative_pool[j]);
        const auto [a, b] = negative_pool[k];
        result.pairs.push_back({corpus[a].id, corpus[b].id, PairLabel::dissimilar});
    }
    result.negatives = wanted;
    rng.shuffle(std::span(result.pairs));
    return result;
}

}  // namespace seqjcig
