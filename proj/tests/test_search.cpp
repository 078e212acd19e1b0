#include <algorithm>
#include <set>
#include <tuple>

#include "alae/error.hpp"
#include "doctest.h"
#include "support/test_support.hpp"

using namespace alae;
using namespace alae::testing;

namespace {

std::vector<std::tuple<std::uint64_t, std::uint32_t, Score, std::uint64_t>> full(const std::vector<AlignmentHit>& hits) {
  std::vector<std::tuple<std::uint64_t, std::uint32_t, Score, std::uint64_t>> out;
  for (const auto& h : hits) out.emplace_back(h.end_t, h.end_p, h.score, h.start_t);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("oracle matches per-start brute force including starts") {
  Rng rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    bool protein = trial % 5 == 0;
    auto tr = make_trial(rng, protein, 70, 18);
    const auto& t = tr.text.codes();
    auto expect = brute_force_hits(t, tr.query.codes, tr.scheme, tr.threshold);
    auto got = oracle_search(t, tr.query.codes, tr.scheme, tr.threshold);
    INFO("trial " << trial << " scheme " << tr.scheme.to_string() << " H " << tr.threshold);
    CHECK(full(got) == full(expect));
  }
}

TEST_CASE("alae and bwtsw agree with the oracle on small random instances") {
  Rng rng(29);
  for (int trial = 0; trial < 300; ++trial) {
    bool protein = trial % 4 == 0;
    auto tr = make_trial(rng, protein, 400, 60);
    auto oracle = oracle_search(tr.text.codes(), tr.query.codes, tr.scheme, tr.threshold);
    SearchOptions o;
    INFO("trial " << trial << " scheme " << tr.scheme.to_string() << " H " << tr.threshold << " m "
                  << tr.query.codes.size() << " n " << tr.text.size());
    try {
      auto a = search(tr.index, tr.text, tr.query, tr.scheme, tr.threshold, o);
      CHECK(full(a.hits) == full(oracle));
      o.mode = SearchMode::Bwtsw;
      auto b = search(tr.index, tr.text, tr.query, tr.scheme, tr.threshold, o);
      CHECK(full(b.hits) == full(oracle));
    } catch (const alae::Error& err) {
      CHECK(err.code() == Errc::InfeasibleThreshold);
      CHECK(oracle.empty());
    }
  }
}

TEST_CASE("self match of GCTAG in every mode") {
  auto t = Alphabet::dna().encode_string("GCTAG");
  auto text = single_record(t);
  auto idx = FmIndex::build(text);
  Query q{"q", t};
  for (auto mode : {SearchMode::Alae, SearchMode::Bwtsw, SearchMode::Oracle}) {
    SearchOptions o;
    o.mode = mode;
    auto r = search(idx, text, q, ScoringScheme{}, 5, o);
    REQUIRE(r.hits.size() == 1);
    CHECK(r.hits[0] == AlignmentHit{5, 5, 5, 1});
  }
}

TEST_CASE("queries shorter than q are rejected in every mode") {
  auto t = Alphabet::dna().encode_string("TTGCATT");
  auto text = single_record(t);
  auto idx = FmIndex::build(text);
  Query q{"q", Alphabet::dna().encode_string("GCA")};
  for (auto mode : {SearchMode::Alae, SearchMode::Bwtsw, SearchMode::Oracle}) {
    SearchOptions o;
    o.mode = mode;
    try {
      search(idx, text, q, ScoringScheme{}, 3, o);
      FAIL("expected QueryTooShort");
    } catch (const alae::Error& err) {
      CHECK(err.code() == Errc::QueryTooShort);
    }
  }
}

TEST_CASE("aggregation keeps the best score, then the smallest start") {
  std::vector<AlignmentHit> c{{10, 4, 5, 6}, {10, 4, 7, 8}};
  auto t = aggregate(c);
  auto h = t.hits(1);
  REQUIRE(h.size() == 1);
  CHECK(h[0].score == 7);
  CHECK(h[0].start_t == 8);
  std::vector<AlignmentHit> tie{{10, 4, 7, 10}, {10, 4, 7, 3}};
  h = aggregate(tie).hits(1);
  REQUIRE(h.size() == 1);
  CHECK(h[0].start_t == 3);
  CHECK(aggregate(tie).hits(8).empty());

  Rng rng(71);
  std::vector<AlignmentHit> many;
  for (int k = 0; k < 500; ++k) {
    many.push_back({uniform(rng, 1, 20), static_cast<std::uint32_t>(uniform(rng, 1, 10)),
                    static_cast<Score>(uniform(rng, 1, 9)), uniform(rng, 1, 20)});
  }
  auto base = aggregate(many).hits(1);
  for (int r = 0; r < 10; ++r) {
    std::shuffle(many.begin(), many.end(), rng);
    CHECK(aggregate(many).hits(1) == base);
  }
  AlignmentTable a, b;
  for (std::size_t k = 0; k < many.size(); ++k) (k % 2 ? a : b).offer(many[k]);
  a.merge(b);
  CHECK(a.hits(1) == base);
}

TEST_CASE("ratios") {
  Counters c;
  c.baseline_calculated = 1000;
  c.calculated = 400;
  auto r = ratios(c);
  CHECK(r.filtering == doctest::Approx(0.6));
  CHECK(r.reusing == 0.0);
  c.reused = 100;
  CHECK(reusing_ratio(c) == doctest::Approx(0.2));
  CHECK(c.accessed() == 500);
  try {
    ratios(Counters{});
    FAIL("expected MissingBaseline");
  } catch (const alae::Error& err) {
    CHECK(err.code() == Errc::MissingBaseline);
  }
}

TEST_CASE("a duplicated query block is reused") {
  Rng rng(73);
  auto block = random_codes(rng, 1000, 4);
  auto p = random_codes(rng, 500, 4);
  p.insert(p.end(), block.begin(), block.end());
  auto gap = random_codes(rng, 300, 4);
  p.insert(p.end(), gap.begin(), gap.end());
  p.insert(p.end(), block.begin(), block.end());
  auto t = random_codes(rng, 20000, 4);
  auto copy = mutate(rng, std::vector<Code>(block.begin() + 200, block.begin() + 320), 4, 0.05);
  std::copy(copy.begin(), copy.end(), t.begin() + 5000);
  auto text = single_record(t);
  auto idx = FmIndex::build(text);
  SearchOptions o;
  auto r = search(idx, text, Query{"q", p}, ScoringScheme{}, 30, o);
  CHECK(reusing_ratio(r.counters) > 0.0);
  o.reuse = false;
  auto off = search(idx, text, Query{"q", p}, ScoringScheme{}, 30, o);
  CHECK(off.counters.reused == 0);
  CHECK(off.hits == r.hits);
  CHECK_FALSE(r.hits.empty());
}

TEST_CASE("hits never span two records") {
  Rng rng(79);
  std::size_t crossings = 0;
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<SequenceRecord> recs;
    std::vector<std::vector<Code>> parts;
    auto p = random_codes(rng, uniform(rng, 10, 40), 4);
    for (int k = 0; k < 3; ++k) {
      auto part = random_codes(rng, uniform(rng, 5, 60), 4);
      // Put a query piece across the join so a cross-record hit exists.
      if (k < 2) std::copy(p.begin(), p.begin() + std::min<std::size_t>(5, part.size()), part.end() - std::min<std::size_t>(5, part.size()));
      if (k > 0) std::copy(p.begin() + 5, p.begin() + std::min<std::size_t>(10, 5 + part.size()), part.begin());
      recs.push_back({"r" + std::to_string(k), part});
      parts.push_back(part);
    }
    auto text = concatenate(recs, AlphabetKind::Dna);
    auto idx = FmIndex::build(text);
    Score h = 4;
    // Per-record oracle union: a reported hit must appear there unchanged.
    std::set<std::tuple<std::uint64_t, std::uint32_t, Score, std::uint64_t>> per_record;
    std::uint64_t offset = 0;
    for (const auto& part : parts) {
      for (const auto& hit : oracle_search(part, p, ScoringScheme{}, h))
        per_record.emplace(hit.end_t + offset, hit.end_p, hit.score, hit.start_t + offset);
      offset += part.size();
    }
    // Whole-text oracle with the record-crossing hits taken out.
    std::vector<AlignmentHit> expect;
    std::size_t crossing = 0;
    for (const auto& hit : oracle_search(text.codes(), p, ScoringScheme{}, h)) {
      if (text.record_of(hit.start_t) == text.record_of(hit.end_t)) {
        expect.push_back(hit);
      } else {
        ++crossing;
      }
    }
    crossings += crossing;
    for (const auto& hit : expect) CHECK(per_record.count({hit.end_t, hit.end_p, hit.score, hit.start_t}) == 1);
    for (auto mode : {SearchMode::Alae, SearchMode::Bwtsw, SearchMode::Oracle}) {
      SearchOptions o;
      o.mode = mode;
      INFO("trial " << trial << " mode " << mode_name(mode));
      CHECK(search(idx, text, Query{"q", p}, ScoringScheme{}, h, o).hits == expect);
    }
  }
  CHECK(crossings > 0);
}

TEST_CASE("domination skips the CTAG fork on GCTAGCTA") {
  auto t = Alphabet::dna().encode_string("GCTAGCTA");
  auto text = single_record(t);
  auto idx = FmIndex::build(text);
  Query q{"q", Alphabet::dna().encode_string("GCTAG")};
  SearchOptions on;
  auto a = search(idx, text, q, ScoringScheme{}, 4, on);
  CHECK(a.counters.dominated_forks == 1);
  SearchOptions off;
  off.domination = false;
  auto b = search(idx, text, q, ScoringScheme{}, 4, off);
  CHECK(b.counters.dominated_forks == 0);
  CHECK(a.hits == b.hits);
  CHECK(b.counters.calculated > a.counters.calculated);
  SearchOptions g;
  g.domination = false;
  g.gmatrix = true;
  auto c = search(idx, text, q, ScoringScheme{}, 4, g);
  CHECK(c.counters.gmatrix_skipped_forks == 1);
  CHECK(c.hits == a.hits);
}

TEST_CASE("parameter errors") {
  auto t = Alphabet::dna().encode_string("GCTAGCTA");
  auto text = single_record(t);
  auto idx = FmIndex::build(text);
  Query q{"q", Alphabet::dna().encode_string("GCTAG")};
  auto code_of = [&](Score h, SearchOptions o) {
    try {
      search(idx, text, q, ScoringScheme{}, h, o);
    } catch (const alae::Error& err) {
      return err.code();
    }
    return Errc::Io;
  };
  CHECK(code_of(0, SearchOptions{}) == Errc::NonPositiveParameter);
  CHECK(code_of(6, SearchOptions{}) == Errc::InfeasibleThreshold);
  CHECK(code_of(100, SearchOptions{}) == Errc::InfeasibleThreshold);
  Rng big_rng(1);
  auto big = random_codes(big_rng, 200000, 4);
  auto big_text = single_record(big);
  auto big_idx = FmIndex::build(big_text);
  Query long_q{"q", std::vector<Code>(600, 0)};
  SearchOptions o;
  o.mode = SearchMode::Oracle;
  try {
    search(big_idx, big_text, long_q, ScoringScheme{}, 20, o);
    FAIL("expected OracleTooLarge");
  } catch (const alae::Error& err) {
    CHECK(err.code() == Errc::OracleTooLarge);
  }
}

TEST_CASE("thread count does not change hits or counters") {
  Rng rng(83);
  for (int trial = 0; trial < 40; ++trial) {
    auto tr = make_trial(rng, trial % 4 == 0);
    SearchOptions one, eight;
    eight.threads = 8;
    try {
      auto a = search(tr.index, tr.text, tr.query, tr.scheme, tr.threshold, one);
      auto b = search(tr.index, tr.text, tr.query, tr.scheme, tr.threshold, eight);
      CHECK(a.hits == b.hits);
      CHECK(a.counters == b.counters);
      one.mode = eight.mode = SearchMode::Bwtsw;
      a = search(tr.index, tr.text, tr.query, tr.scheme, tr.threshold, one);
      b = search(tr.index, tr.text, tr.query, tr.scheme, tr.threshold, eight);
      CHECK(a.hits == b.hits);
      CHECK(a.counters == b.counters);
    } catch (const alae::Error& err) {
      CHECK(err.code() == Errc::InfeasibleThreshold);
    }
  }
}
