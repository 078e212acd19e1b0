#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "alae/sequence.hpp"

namespace alae {

using Score = std::int32_t;

struct ScoringScheme {
  Score match = 1;
  Score mismatch = -3;
  Score gap_open = -5;
  Score gap_extend = -2;

  // Cost of a one-symbol gap, s_g + s_s.
  Score gap_first() const { return gap_open + gap_extend; }
  void validate() const;
  std::string to_string() const;
  static ScoringScheme parse(std::string_view text);

  friend bool operator==(const ScoringScheme&, const ScoringScheme&) = default;
};

inline Score delta(Code x, Code y, const ScoringScheme& s) {
  return (x == y && x != kUnknownCode) ? s.match : s.mismatch;
}

// Length of the exact-match prefix every hit-producing alignment must start with.
int q_value(const ScoringScheme& s);

struct LengthBounds {
  std::uint64_t min_len;
  std::uint64_t max_len;
};

LengthBounds length_bounds(const ScoringScheme& s, std::uint64_t m, Score threshold);

Score threshold_from_evalue(double evalue, double karlin_k, double karlin_lambda, double m, double n);

struct SearchParams {
  Score threshold = 0;
  int q = 1;
  std::uint64_t min_len = 0;
  std::uint64_t max_len = 0;
  std::uint64_t m = 0;
  std::uint64_t n = 0;
};

SearchParams make_search_params(const ScoringScheme& s, std::uint64_t m, std::uint64_t n, Score threshold);

}  // namespace alae
