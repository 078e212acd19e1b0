#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <string>

#include "alae/suffix_array.hpp"
#include "doctest.h"
#include "support/test_support.hpp"

using namespace alae;
using namespace alae::testing;

namespace {

std::vector<std::int32_t> brute_suffix_array(const std::vector<std::int32_t>& t) {
  std::vector<std::int32_t> sa(t.size());
  for (std::size_t i = 0; i < sa.size(); ++i) sa[i] = static_cast<std::int32_t>(i);
  std::sort(sa.begin(), sa.end(), [&](std::int32_t a, std::int32_t b) {
    return std::lexicographical_compare(t.begin() + a, t.end(), t.begin() + b, t.end());
  });
  return sa;
}

FmIndex dna_index(std::string_view s) {
  return FmIndex::build(single_record(Alphabet::dna().encode_string(s)));
}

std::vector<Code> dna(std::string_view s) { return Alphabet::dna().encode_string(s); }

}  // namespace

TEST_CASE("suffix array and BWT of the GCTAGC fixture") {
  // A=1 C=2 G=3 T=4, sentinel 0.
  std::vector<std::int32_t> t{3, 2, 4, 1, 3, 2, 0};
  auto sa = build_suffix_array(t, 5);
  std::vector<std::int32_t> one_based;
  for (auto v : sa) one_based.push_back(v + 1);
  CHECK(one_based == std::vector<std::int32_t>{7, 4, 6, 2, 5, 1, 3});
  std::string bwt;
  const char* letters = "$ACGT";
  for (auto v : sa) bwt += letters[t[(v + t.size() - 1) % t.size()]];
  CHECK(bwt == "CTGGA$C");
}

TEST_CASE("suffix array agrees with sorting on random texts") {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    int alpha = static_cast<int>(uniform(rng, 2, 22));
    std::vector<std::int32_t> t;
    std::size_t n = uniform(rng, 1, 300);
    for (std::size_t i = 0; i < n; ++i) t.push_back(static_cast<std::int32_t>(uniform(rng, 1, alpha - 1)));
    t.push_back(0);
    CHECK(build_suffix_array(t, alpha) == brute_suffix_array(t));
  }
  std::vector<std::int32_t> runs(500, 1);
  runs.push_back(0);
  CHECK(build_suffix_array(runs, 2) == brute_suffix_array(runs));
}

TEST_CASE("index stores the reversed text's BWT") {
  auto idx = dna_index("GCTAGC");
  // reverse(T)$ = CGATCG$, brute-force BWT with A=1 C=2 G=3 T=4.
  std::vector<std::int32_t> r{2, 3, 1, 4, 2, 3, 0};
  auto sa = brute_suffix_array(r);
  std::vector<std::uint8_t> expect;
  for (auto v : sa) expect.push_back(static_cast<std::uint8_t>(r[(v + r.size() - 1) % r.size()]));
  CHECK(idx.bwt() == expect);
  CHECK(Alphabet::dna().decode_string(idx.extract_text().codes()) == "GCTAGC");
}

TEST_CASE("inverse BWT recovers random texts") {
  Rng rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    auto codes = random_codes(rng, uniform(rng, 1, 1000), 4);
    auto idx = FmIndex::build(single_record(codes));
    CHECK(idx.extract_text().codes() == codes);
  }
}

TEST_CASE("backward search on GCTAGC") {
  auto idx = dna_index("GCTAGC");
  auto gc = dna("GC");
  CHECK(idx.count(gc) == 2);
  CHECK(idx.locate(idx.find(gc), 2) == std::vector<std::uint64_t>{1, 5});
  auto whole = dna("GCTAGC");
  CHECK(idx.locate(idx.find(whole), 6) == std::vector<std::uint64_t>{1});
  CHECK(idx.find(dna("GA")).empty());
  SaRange r = idx.full_range();
  r = idx.extend(r, dna("G")[0]);
  r = idx.extend(r, dna("C")[0]);
  CHECK(r.width() == 2);
  CHECK(idx.extend(SaRange{}, 0).empty());
  CHECK(idx.extend(idx.full_range(), kUnknownCode).empty());
  CHECK_THROWS_AS(idx.locate(SaRange{}, 1), Error);

  auto a = dna_index("A");
  CHECK(a.locate(a.find(dna("A")), 1) == std::vector<std::uint64_t>{1});
}

TEST_CASE("trie children") {
  auto idx = dna_index("GCTAGC");
  auto kids = idx.children(idx.find(dna("G")));
  REQUIRE(kids.size() == 1);
  CHECK(kids[0].first == dna("C")[0]);
  CHECK(idx.children(idx.find(dna("GCTAGC"))).empty());
  auto root = idx.children(idx.full_range());
  REQUIRE(root.size() == 4);
  std::vector<std::uint64_t> widths;
  for (auto& [c, r] : root) widths.push_back(r.width());
  CHECK(widths == std::vector<std::uint64_t>{1, 2, 2, 1});  // A C G T
}

TEST_CASE("count, locate and children against a brute-force scan") {
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    int sigma = trial % 4 == 0 ? 20 : 4;
    auto t = random_codes(rng, uniform(rng, 1, 300), sigma);
    auto idx = FmIndex::build(single_record(t, sigma == 20 ? AlphabetKind::Protein : AlphabetKind::Dna));
    for (std::size_t i = 0; i < t.size(); ++i) {
      for (std::size_t len = 1; len <= 8 && i + len <= t.size(); ++len) {
        std::span<const Code> pat(t.data() + i, len);
        auto expect = brute_locate(t, pat);
        auto r = idx.find(pat);
        REQUIRE(r.width() == expect.size());
        CHECK(idx.locate(r, len) == expect);
        for (auto& [c, cr] : idx.children(r)) {
          CHECK(idx.extend(r, c) == cr);
          CHECK_FALSE(cr.empty());
        }
      }
    }
  }
}

TEST_CASE("serialization roundtrip and corruption") {
  auto idx = dna_index("GCTAGC");
  auto bytes = idx.to_bytes();
  auto back = FmIndex::from_bytes(bytes);
  CHECK(back.bwt() == idx.bwt());
  CHECK(back.locate(back.find(dna("GC")), 2) == std::vector<std::uint64_t>{1, 5});
  CHECK(back.boundaries().size() == 1);
  for (std::uint64_t h = 0; h <= idx.text_size(); ++h) CHECK(back.sa_value(h) == idx.sa_value(h));

  auto expect_code = [](std::string b, Errc code) {
    try {
      FmIndex::from_bytes(b);
      FAIL("expected an error");
    } catch (const Error& err) {
      CHECK(err.code() == code);
    }
  };
  std::string bad = bytes;
  bad[0] = 'X';
  expect_code(bad, Errc::BadMagic);
  bad = bytes;
  bad[4] = 9;
  expect_code(bad, Errc::VersionMismatch);
  expect_code(bytes.substr(0, bytes.size() / 2), Errc::Truncated);
  expect_code(bytes.substr(0, 6), Errc::Truncated);
  bad = bytes;
  bad[bytes.size() - 10] ^= 0x5A;
  expect_code(bad, Errc::ChecksumMismatch);

  auto path = (std::filesystem::temp_directory_path() / "alae_unit_roundtrip.idx").string();
  idx.save(path);
  auto loaded = FmIndex::load(path);
  CHECK(loaded.to_bytes() == bytes);
  std::remove(path.c_str());
  CHECK_THROWS_AS(FmIndex::load(path), Error);
}
