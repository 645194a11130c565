#include "seqjcig/textstats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "seqjcig/error.hpp"

namespace seqjcig {

Vocabulary Vocabulary::build(std::span<const TokenBag> units) {
    if (units.empty()) throw ValidationError("cannot build a vocabulary from zero units");
    std::map<std::string, std::uint32_t> df;
    for (const auto& unit : units) {
        const std::set<std::string> present(unit.begin(), unit.end());
        for (const auto& term : present) ++df[term];
    }
    Vocabulary vocab;
    vocab.n_docs_ = units.size();
    vocab.terms_.reserve(df.size());
    vocab.dfs_.reserve(df.size());
    for (auto& [term, count] : df) {
        vocab.index_.emplace(term, static_cast<std::uint32_t>(vocab.terms_.size()));
        vocab.terms_.push_back(term);
        vocab.dfs_.push_back(count);
    }
    return vocab;
}

std::optional<Vocabulary::Entry> Vocabulary::find(const std::string& term) const {
    const auto it = index_.find(term);
    if (it == index_.end()) return std::nullopt;
    return Entry{it->second, dfs_[it->second]};
}

double Vocabulary::idf(std::uint32_t document_frequency) const {
    return 1.0 + std::log((1.0 + static_cast<double>(n_docs_)) /
                          (1.0 + static_cast<double>(document_frequency)));
}

TfIdfVector::TfIdfVector(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    for (const auto& [index, weight] : entries) {
        if (!entries_.empty() && entries_.back().first == index) {
            entries_.back().second += weight;
        } else {
            entries_.emplace_back(index, weight);
        }
    }
    std::erase_if(entries_, [](const Entry& e) { return e.second == 0.0; });
    double sq = 0.0;
    for (const auto& e : entries_) sq += e.second * e.second;
    norm_ = std::sqrt(sq);
}

TfIdfVector TfIdfVector::scaled(double factor) const {
    std::vector<Entry> out(entries_.begin(), entries_.end());
    for (auto& e : out) e.second *= factor;
    return TfIdfVector(std::move(out));
}

TfIdfVector tfidf(const TokenBag& bag, const Vocabulary& vocab) {
    std::map<std::uint32_t, std::pair<std::uint32_t, std::uint32_t>> counts;  // index -> (tf, df)
    for (const auto& token : bag) {
        if (const auto entry = vocab.find(token)) {
            auto& slot = counts[entry->index];
            ++slot.first;
            slot.second = entry->document_frequency;
        }
    }
    std::vector<TfIdfVector::Entry> entries;
    entries.reserve(counts.size());
    for (const auto& [index, tf_df] : counts) {
        entries.emplace_back(index, static_cast<double>(tf_df.first) * vocab.idf(tf_df.second));
    }
    return TfIdfVector(std::move(entries));
}

double cosine(const TfIdfVector& u, const TfIdfVector& v) {
    if (u.norm() == 0.0 || v.norm() == 0.0) return 0.0;
    const auto a = u.entries();
    const auto b = v.entries();
    double dot = 0.0;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first < b[j].first) {
            ++i;
        } else if (b[j].first < a[i].first) {
            ++j;
        } else {
            dot += a[i].second * b[j].second;
            ++i;
            ++j;
        }
    }
    return std::clamp(dot / (u.norm() * v.norm()), 0.0, 1.0);
}

}  // namespace seqjcig
