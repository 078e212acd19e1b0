#include "alae/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <vector>

#include "alae/error.hpp"

namespace alae {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

void ScoringScheme::validate() const {
  if (match <= 0 || mismatch >= 0 || gap_open >= 0 || gap_extend >= 0) {
    throw Error(Errc::InvalidScheme, "need s_a > 0 and s_b, s_g, s_s < 0, got " + to_string());
  }
}

std::string ScoringScheme::to_string() const {
  std::ostringstream os;
  os << match << ',' << mismatch << ',' << gap_open << ',' << gap_extend;
  return os.str();
}

ScoringScheme ScoringScheme::parse(std::string_view text) {
  std::vector<long> parts;
  std::string token;
  std::istringstream in{std::string(text)};
  while (std::getline(in, token, ',')) {
    char* end = nullptr;
    long v = std::strtol(token.c_str(), &end, 10);
    if (token.empty() || *end != '\0') throw Error(Errc::InvalidScheme, "bad scheme '" + std::string(text) + "'");
    parts.push_back(v);
  }
  if (parts.size() != 4) throw Error(Errc::InvalidScheme, "scheme needs four integers: '" + std::string(text) + "'");
  ScoringScheme s{static_cast<Score>(parts[0]), static_cast<Score>(parts[1]), static_cast<Score>(parts[2]),
                  static_cast<Score>(parts[3])};
  s.validate();
  return s;
}

int q_value(const ScoringScheme& s) {
  s.validate();
  Score worst = std::min(std::abs(s.mismatch), std::abs(s.gap_first()));
  return worst / s.match + 1;
}

LengthBounds length_bounds(const ScoringScheme& s, std::uint64_t m, Score threshold) {
  s.validate();
  if (threshold < 1 || m < 1) throw Error(Errc::NonPositiveParameter, "need H >= 1 and m >= 1");
  auto mm = static_cast<std::int64_t>(m);
  std::uint64_t min_len = (static_cast<std::uint64_t>(threshold) + s.match - 1) / s.match;
  std::int64_t extra = floor_div(threshold - (s.match * mm + s.gap_open), s.gap_extend);
  std::int64_t max_len = std::max(mm, mm + extra);
  if (static_cast<std::int64_t>(min_len) > max_len) {
    throw Error(Errc::InfeasibleThreshold,
                "H=" + std::to_string(threshold) + " needs length " + std::to_string(min_len) +
                    " but at most " + std::to_string(max_len) + " is possible");
  }
  return {min_len, static_cast<std::uint64_t>(max_len)};
}

Score threshold_from_evalue(double evalue, double karlin_k, double karlin_lambda, double m, double n) {
  if (!(evalue > 0) || !(karlin_k > 0) || !(karlin_lambda > 0) || !(m > 0) || !(n > 0)) {
    throw Error(Errc::NonPositiveParameter, "E, K, lambda, m and n must be positive");
  }
  double raw = (std::log(karlin_k * m * n) - std::log(evalue)) / karlin_lambda;
  // Absorb rounding noise so that exact integers do not ceil upward.
  double h = std::ceil(raw - 1e-9);
  return static_cast<Score>(std::max(1.0, h));
}

SearchParams make_search_params(const ScoringScheme& s, std::uint64_t m, std::uint64_t n, Score threshold) {
  auto bounds = length_bounds(s, m, threshold);
  return {threshold, q_value(s), bounds.min_len, bounds.max_len, m, n};
}

}  // namespace alae
