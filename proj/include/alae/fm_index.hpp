#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "alae/sequence.hpp"

namespace alae {

struct SaRange {
  std::int64_t lo = 0;
  std::int64_t hi = -1;

  bool empty() const { return lo > hi; }
  std::uint64_t width() const { return empty() ? 0 : static_cast<std::uint64_t>(hi - lo + 1); }
  friend bool operator==(const SaRange&, const SaRange&) = default;
};

// FM-index over the reversed, sentinel-terminated text. Suffix array values
// are reported in original text coordinates: the row of a reversed suffix
// stores the text position of its first symbol, and the sentinel is 0. So a
// row for X^-1 holds the position where X ends in T.
class FmIndex {
 public:
  static constexpr std::uint32_t kBlock = 128;
  static constexpr std::uint32_t kSampleRate = 32;
  static constexpr std::uint32_t kFormatVersion = 1;

  FmIndex() = default;
  static FmIndex build(const EncodedText& text);

  std::uint64_t text_size() const { return n_; }
  AlphabetKind alphabet() const { return kind_; }
  int sigma() const { return sigma_; }
  const std::vector<Boundary>& boundaries() const { return boundaries_; }

  SaRange full_range() const { return {0, static_cast<std::int64_t>(n_)}; }
  // Range of (Xc)^-1 given the range of X^-1.
  SaRange extend(SaRange range, Code c) const;
  SaRange find(std::span<const Code> pattern) const;
  std::uint64_t count(std::span<const Code> pattern) const { return find(pattern).width(); }
  // Sorted 1-based start positions of the pattern represented by `range`.
  std::vector<std::uint64_t> locate(SaRange range, std::uint64_t pattern_len) const;
  std::vector<std::pair<Code, SaRange>> children(SaRange range) const;

  // Text-coordinate suffix array value at row h.
  std::uint64_t sa_value(std::uint64_t h) const;
  std::uint64_t rank(std::uint8_t sym, std::uint64_t p) const;
  const std::vector<std::uint8_t>& bwt() const { return bwt_; }
  EncodedText extract_text() const;

  std::string to_bytes() const;
  static FmIndex from_bytes(std::string_view bytes);
  void save(const std::string& path) const;
  static FmIndex load(const std::string& path);

 private:
  int symbol_space() const { return sigma_ + 2; }
  std::uint8_t symbol_of(Code c) const;
  Code code_of(std::uint8_t sym) const;
  void build_checkpoints();

  AlphabetKind kind_ = AlphabetKind::Dna;
  int sigma_ = 4;
  std::uint64_t n_ = 0;
  std::vector<std::uint64_t> counts_;       // counts_[s] = symbols smaller than s
  std::vector<std::uint8_t> bwt_;           // 0 = sentinel, code + 1 otherwise
  std::vector<std::uint32_t> checkpoints_;  // per block, per symbol
  std::vector<std::uint64_t> samples_;      // sa_value(h) for h % kSampleRate == 0
  std::vector<Boundary> boundaries_;
};

}  // namespace alae
