#include "alae/fm_index.hpp"

#include <zlib.h>

#include <algorithm>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "alae/error.hpp"
#include "alae/suffix_array.hpp"

namespace alae {

std::uint8_t FmIndex::symbol_of(Code c) const {
  if (c == kUnknownCode) return static_cast<std::uint8_t>(sigma_ + 1);
  if (c >= sigma_) throw Error(Errc::InvalidSymbol, "code " + std::to_string(c) + " outside alphabet");
  return static_cast<std::uint8_t>(c + 1);
}

Code FmIndex::code_of(std::uint8_t sym) const {
  return sym == sigma_ + 1 ? kUnknownCode : static_cast<Code>(sym - 1);
}

FmIndex FmIndex::build(const EncodedText& text) {
  FmIndex idx;
  idx.kind_ = text.alphabet();
  idx.sigma_ = Alphabet::of(idx.kind_).sigma();
  idx.n_ = text.size();
  idx.boundaries_ = text.boundaries();
  if (idx.n_ == 0) throw Error(Errc::EmptyDatabase, "cannot index an empty text");

  const std::uint64_t n = idx.n_;
  std::vector<std::int32_t> rev(n + 1);
  for (std::uint64_t k = 0; k < n; ++k) rev[k] = idx.symbol_of(text.codes()[n - 1 - k]);
  rev[n] = 0;
  auto sa = build_suffix_array(rev, idx.symbol_space());

  idx.bwt_.resize(n + 1);
  idx.samples_.assign(n / kSampleRate + 1, 0);
  for (std::uint64_t h = 0; h <= n; ++h) {
    auto k = static_cast<std::uint64_t>(sa[h]);
    idx.bwt_[h] = k == 0 ? 0 : static_cast<std::uint8_t>(rev[k - 1]);
    if (h % kSampleRate == 0) idx.samples_[h / kSampleRate] = n - k;
  }
  idx.counts_.assign(idx.symbol_space() + 1, 0);
  for (auto b : idx.bwt_) ++idx.counts_[b + 1];
  for (int s = 1; s <= idx.symbol_space(); ++s) idx.counts_[s] += idx.counts_[s - 1];
  idx.build_checkpoints();
  return idx;
}

void FmIndex::build_checkpoints() {
  const int syms = symbol_space();
  std::uint64_t blocks = bwt_.size() / kBlock + 1;
  checkpoints_.assign(blocks * syms, 0);
  std::vector<std::uint32_t> running(syms, 0);
  for (std::uint64_t p = 0; p <= bwt_.size(); ++p) {
    if (p % kBlock == 0) std::copy(running.begin(), running.end(), checkpoints_.begin() + (p / kBlock) * syms);
    if (p < bwt_.size()) ++running[bwt_[p]];
  }
}

std::uint64_t FmIndex::rank(std::uint8_t sym, std::uint64_t p) const {
  std::uint64_t block = p / kBlock;
  std::uint64_t r = checkpoints_[block * symbol_space() + sym];
  const std::uint8_t* b = bwt_.data();
  for (std::uint64_t i = block * kBlock; i < p; ++i) r += (b[i] == sym);
  return r;
}

SaRange FmIndex::extend(SaRange range, Code c) const {
  std::uint8_t sym = symbol_of(c);
  if (range.empty()) return {0, -1};
  auto lo = counts_[sym] + rank(sym, static_cast<std::uint64_t>(range.lo));
  auto hi = counts_[sym] + rank(sym, static_cast<std::uint64_t>(range.hi) + 1);
  return {static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi) - 1};
}

SaRange FmIndex::find(std::span<const Code> pattern) const {
  SaRange r = full_range();
  for (Code c : pattern) {
    r = extend(r, c);
    if (r.empty()) break;
  }
  return r;
}

std::uint64_t FmIndex::sa_value(std::uint64_t h) const {
  std::uint64_t steps = 0;
  while (h % kSampleRate != 0) {
    std::uint8_t sym = bwt_[h];
    // Row of the whole reversed text: its first symbol is T[n].
    if (sym == 0) return n_ - steps;
    h = counts_[sym] + rank(sym, h);
    ++steps;
  }
  return samples_[h / kSampleRate] - steps;
}

std::vector<std::uint64_t> FmIndex::locate(SaRange range, std::uint64_t pattern_len) const {
  if (range.empty()) throw Error(Errc::EmptyRange, "locate on an empty range");
  std::vector<std::uint64_t> out;
  out.reserve(range.width());
  for (auto h = range.lo; h <= range.hi; ++h) out.push_back(sa_value(static_cast<std::uint64_t>(h)) - pattern_len + 1);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<Code, SaRange>> FmIndex::children(SaRange range) const {
  std::vector<std::pair<Code, SaRange>> out;
  if (range.empty()) return out;
  for (int s = 1; s < symbol_space(); ++s) {
    Code c = code_of(static_cast<std::uint8_t>(s));
    SaRange r = extend(range, c);
    if (!r.empty()) out.emplace_back(c, r);
  }
  return out;
}

EncodedText FmIndex::extract_text() const {
  std::vector<Code> codes(n_);
  std::uint64_t h = 0;
  for (std::uint64_t i = 0; i < n_; ++i) {
    std::uint8_t sym = bwt_[h];
    codes[i] = code_of(sym);
    h = counts_[sym] + rank(sym, h);
  }
  return EncodedText(kind_, std::move(codes), boundaries_);
}

namespace {

class Writer {
 public:
  template <class T>
  void put(T v) {
    for (std::size_t i = 0; i < sizeof(T); ++i) buf_.push_back(static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xFF));
  }
  void bytes(const void* p, std::size_t len) { buf_.append(static_cast<const char*>(p), len); }
  std::string& str() { return buf_; }

 private:
  std::string buf_;
};

class Reader {
 public:
  explicit Reader(std::string_view s) : s_(s) {}
  template <class T>
  T get() {
    need(sizeof(T));
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(s_[pos_ + i])) << (8 * i);
    pos_ += sizeof(T);
    return static_cast<T>(v);
  }
  std::string_view take(std::uint64_t len) {
    need(len);
    auto v = s_.substr(pos_, len);
    pos_ += len;
    return v;
  }
  void need(std::uint64_t len) const {
    if (len > s_.size() - pos_) throw Error(Errc::Truncated, "index file ends early");
  }
  std::size_t pos() const { return pos_; }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

constexpr char kMagic[4] = {'A', 'L', 'A', 'E'};

}  // namespace

std::string FmIndex::to_bytes() const {
  Writer w;
  w.bytes(kMagic, 4);
  w.put<std::uint32_t>(kFormatVersion);
  w.put<std::uint8_t>(static_cast<std::uint8_t>(kind_));
  w.put<std::uint64_t>(n_);
  w.put<std::uint32_t>(kBlock);
  w.put<std::uint32_t>(kSampleRate);
  for (auto c : counts_) w.put<std::uint64_t>(c);
  w.bytes(bwt_.data(), bwt_.size());
  for (auto c : checkpoints_) w.put<std::uint32_t>(c);
  for (auto s : samples_) w.put<std::uint64_t>(s);
  w.put<std::uint64_t>(boundaries_.size());
  for (const auto& b : boundaries_) {
    w.put<std::uint64_t>(b.start);
    w.put<std::uint32_t>(static_cast<std::uint32_t>(b.id.size()));
    w.bytes(b.id.data(), b.id.size());
  }
  auto crc = crc32(0L, reinterpret_cast<const Bytef*>(w.str().data()), static_cast<uInt>(w.str().size()));
  w.put<std::uint32_t>(static_cast<std::uint32_t>(crc));
  return std::move(w.str());
}

FmIndex FmIndex::from_bytes(std::string_view bytes) {
  Reader r(bytes);
  auto magic = r.take(4);
  if (std::memcmp(magic.data(), kMagic, 4) != 0) throw Error(Errc::BadMagic, "not an index file");
  auto version = r.get<std::uint32_t>();
  if (version != kFormatVersion) {
    throw Error(Errc::VersionMismatch, "format version " + std::to_string(version) + ", expected " +
                                           std::to_string(kFormatVersion));
  }
  FmIndex idx;
  auto kind = r.get<std::uint8_t>();
  if (kind > 1) throw Error(Errc::ChecksumMismatch, "bad alphabet kind");
  idx.kind_ = static_cast<AlphabetKind>(kind);
  idx.sigma_ = Alphabet::of(idx.kind_).sigma();
  idx.n_ = r.get<std::uint64_t>();
  auto block = r.get<std::uint32_t>();
  auto rate = r.get<std::uint32_t>();
  if (block != kBlock || rate != kSampleRate) throw Error(Errc::VersionMismatch, "unsupported block or sample rate");
  if (idx.n_ >= bytes.size()) throw Error(Errc::Truncated, "index file shorter than its text");
  const int syms = idx.symbol_space();
  idx.counts_.resize(syms + 1);
  for (auto& c : idx.counts_) c = r.get<std::uint64_t>();
  auto bwt = r.take(idx.n_ + 1);
  idx.bwt_.assign(bwt.begin(), bwt.end());
  std::uint64_t blocks = (idx.n_ + 1) / kBlock + 1;
  r.need(blocks * syms * 4);
  idx.checkpoints_.resize(blocks * syms);
  for (auto& c : idx.checkpoints_) c = r.get<std::uint32_t>();
  std::uint64_t nsamples = idx.n_ / kSampleRate + 1;
  r.need(nsamples * 8);
  idx.samples_.resize(nsamples);
  for (auto& s : idx.samples_) s = r.get<std::uint64_t>();
  auto nb = r.get<std::uint64_t>();
  r.need(nb * 12);
  for (std::uint64_t i = 0; i < nb; ++i) {
    Boundary b;
    b.start = r.get<std::uint64_t>();
    auto len = r.get<std::uint32_t>();
    b.id = std::string(r.take(len));
    idx.boundaries_.push_back(std::move(b));
  }
  auto body = r.pos();
  auto stored = r.get<std::uint32_t>();
  auto crc = crc32(0L, reinterpret_cast<const Bytef*>(bytes.data()), static_cast<uInt>(body));
  if (stored != static_cast<std::uint32_t>(crc)) throw Error(Errc::ChecksumMismatch, "index checksum mismatch");
  if (r.pos() != bytes.size()) throw Error(Errc::ChecksumMismatch, "trailing bytes after index");
  return idx;
}

void FmIndex::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::Io, "cannot write " + path);
  auto bytes = to_bytes();
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(Errc::Io, "write failed for " + path);
}

FmIndex FmIndex::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return from_bytes(bytes);
}

}  // namespace alae
