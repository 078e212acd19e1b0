#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "alae/counters.hpp"
#include "alae/dp_core.hpp"
#include "alae/fm_index.hpp"
#include "alae/scoring.hpp"
#include "alae/sequence.hpp"

namespace alae {

enum class SearchMode { Alae, Bwtsw, Oracle };

SearchMode parse_mode(std::string_view name);
std::string_view mode_name(SearchMode mode);

struct SearchOptions {
  SearchMode mode = SearchMode::Alae;
  bool length_filter = true;
  bool score_filter = true;
  bool prefix_filter = true;
  bool domination = true;
  bool gmatrix = false;
  bool reuse = true;
  bool path_sharing = true;
  unsigned threads = 1;
};

inline constexpr std::uint64_t kOracleCellLimit = 100'000'000;

// Best candidate per (end_t, end_p): highest score, then smallest start.
class AlignmentTable {
 public:
  void offer(const AlignmentHit& hit);
  void merge(const AlignmentTable& other);
  std::size_t size() const { return best_.size(); }
  // Entries with score >= threshold, sorted by (end_t, end_p).
  std::vector<AlignmentHit> hits(Score threshold) const;

 private:
  static std::uint64_t key(std::uint64_t end_t, std::uint32_t end_p) { return (end_t << 32) | end_p; }
  std::unordered_map<std::uint64_t, AlignmentHit> best_;
};

AlignmentTable aggregate(std::span<const AlignmentHit> candidates);

struct SearchResult {
  std::vector<AlignmentHit> hits;
  Counters counters;
};

SearchResult search(const FmIndex& index, const EncodedText& text, const Query& query, const ScoringScheme& scheme,
                    Score threshold, const SearchOptions& opts);

// One line per hit: query_id, record id, local start, local end, end_p, score.
// Sorted by (record, start, end, end_p).
std::string format_hits_tsv(const EncodedText& text, std::string_view query_id, std::span<const AlignmentHit> hits);

struct Ratios {
  double filtering;
  double reusing;
};

Ratios ratios(const Counters& c);
double reusing_ratio(const Counters& c);

}  // namespace alae
