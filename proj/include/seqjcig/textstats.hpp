#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace seqjcig {

using TokenBag = std::vector<std::string>;

/// Term index and document frequency over a fixed set of indexing units.
///
/// Indices follow lexicographic term order, so the vocabulary depends only on
/// the multiset of units and not on the order they were supplied in.
class Vocabulary {
public:
    struct Entry {
        std::uint32_t index = 0;
        std::uint32_t document_frequency = 0;
    };

    static Vocabulary build(std::span<const TokenBag> units);

    std::optional<Entry> find(const std::string& term) const;
    std::size_t size() const { return terms_.size(); }
    std::size_t n_docs() const { return n_docs_; }
    const std::string& term(std::uint32_t index) const { return terms_[index]; }

    /// Smoothed inverse document frequency 1 + ln((1 + N) / (1 + df)).
    double idf(std::uint32_t document_frequency) const;

    bool operator==(const Vocabulary& other) const {
        return n_docs_ == other.n_docs_ && terms_ == other.terms_ && dfs_ == other.dfs_;
    }

private:
    std::vector<std::string> terms_;
    std::vector<std::uint32_t> dfs_;
    std::unordered_map<std::string, std::uint32_t> index_;
    std::size_t n_docs_ = 0;
};

/// Sparse non-negative vector sorted by index; zero entries are never stored.
class TfIdfVector {
public:
    using Entry = std::pair<std::uint32_t, double>;

    TfIdfVector() = default;
    /// Entries need not be sorted; duplicates are summed and zeros dropped.
    explicit TfIdfVector(std::vector<Entry> entries);

    std::span<const Entry> entries() const { return entries_; }
    double norm() const { return norm_; }
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }

    TfIdfVector scaled(double factor) const;

    bool operator==(const TfIdfVector& other) const { return entries_ == other.entries_; }

private:
    std::vector<Entry> entries_;
    double norm_ = 0.0;
};

/// Raw term count times smoothed IDF. Out-of-vocabulary terms are ignored.
TfIdfVector tfidf(const TokenBag& bag, const Vocabulary& vocab);

/// Cosine similarity clamped to [0, 1]; 0 when either vector is empty.
double cosine(const TfIdfVector& u, const TfIdfVector& v);

}  // namespace seqjcig
