#include <cmath>

#include "doctest.h"
#include "support/test_support.hpp"

using namespace alae;

TEST_CASE("delta") {
  ScoringScheme s;
  const auto& dna = Alphabet::dna();
  Code g = *dna.encode('G'), c = *dna.encode('C');
  CHECK(delta(g, g, s) == 1);
  CHECK(delta(g, c, s) == -3);
  CHECK(delta(kUnknownCode, kUnknownCode, s) == -3);
}

TEST_CASE("scheme validation and parsing") {
  CHECK(ScoringScheme::parse("1,-3,-5,-2") == ScoringScheme{});
  CHECK(ScoringScheme::parse("2,-3,-5,-2").match == 2);
  for (const char* bad : {"0,-3,-5,-2", "1,3,-5,-2", "1,-3,0,-2", "1,-3,-5,0", "1,-3,-5", "a,b,c,d"}) {
    try {
      ScoringScheme::parse(bad).validate();
      FAIL("accepted " << bad);
    } catch (const Error& err) {
      CHECK(err.code() == Errc::InvalidScheme);
    }
  }
}

TEST_CASE("q values") {
  CHECK(q_value({1, -3, -5, -2}) == 4);
  CHECK(q_value({1, -1, -5, -2}) == 2);
  CHECK(q_value({2, -3, -5, -2}) == 2);
  CHECK(q_value({1, -4, -2, -2}) == 5);
}

TEST_CASE("length bounds") {
  ScoringScheme s;
  auto b = length_bounds(s, 5, 3);
  CHECK(b.min_len == 3);
  CHECK(b.max_len == 5);
  b = length_bounds(s, 100, 30);
  CHECK(b.min_len == 30);
  CHECK(b.max_len == 132);
  for (ScoringScheme sc : {ScoringScheme{1, -3, -5, -2}, ScoringScheme{2, -3, -4, -4}, ScoringScheme{4, -5, -12, -8}}) {
    auto full = length_bounds(sc, 37, sc.match * 37);
    CHECK(full.min_len == 37);
    CHECK(full.max_len == 37);
  }
  // One above a full match can never be reached.
  try {
    length_bounds(s, 10, 11);
    FAIL("expected InfeasibleThreshold");
  } catch (const Error& err) {
    CHECK(err.code() == Errc::InfeasibleThreshold);
  }
}

TEST_CASE("longest alignment bound matches enumeration of gap layouts") {
  // An alignment of length L with k text gap symbols against m query symbols
  // scores at most s_a*m + gap cost, so L_max is the largest such L that can
  // still reach H.
  for (ScoringScheme s : {ScoringScheme{1, -3, -5, -2}, ScoringScheme{2, -3, -4, -4}, ScoringScheme{1, -1, -3, -2}}) {
    for (std::uint64_t m = 1; m <= 30; ++m) {
      for (Score h = 1; h <= static_cast<Score>(m) * s.match; ++h) {
        std::uint64_t best = m;
        for (std::uint64_t extra = 1; extra < 200; ++extra) {
          if (s.match * static_cast<Score>(m) + s.gap_open + s.gap_extend * static_cast<Score>(extra) >= h) {
            best = m + extra;
          }
        }
        CHECK(length_bounds(s, m, h).max_len == best);
        CHECK(length_bounds(s, m, h).min_len == static_cast<std::uint64_t>((h + s.match - 1) / s.match));
      }
    }
  }
}

TEST_CASE("threshold from e-value") {
  CHECK(threshold_from_evalue(1.0, 1.0, 1.0, std::exp(5.0), std::exp(5.0)) == 10);
  CHECK(threshold_from_evalue(10.0, 0.5, 0.25, 100, 1e6) == 62);
  CHECK(threshold_from_evalue(1e6, 1.0, 1.0, 10, 10) == 1);
  try {
    threshold_from_evalue(0, 1, 1, 1, 1);
    FAIL("expected NonPositiveParameter");
  } catch (const Error& err) {
    CHECK(err.code() == Errc::NonPositiveParameter);
  }
}
