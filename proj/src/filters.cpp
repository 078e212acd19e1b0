#include "alae/filters.hpp"

#include <algorithm>

#include "alae/error.hpp"

namespace alae {

QGramIndex::QGramIndex(std::span<const Code> query, int q) : q_(q) {
  if (q < 1) throw Error(Errc::NonPositiveParameter, "q must be positive");
  if (query.size() < static_cast<std::size_t>(q)) {
    throw Error(Errc::QueryTooShort, "query length " + std::to_string(query.size()) + " < q=" + std::to_string(q));
  }
  std::vector<Code> gram;
  for (std::size_t p = 0; p + q <= query.size(); ++p) {
    auto window = query.subspan(p, q);
    if (std::find(window.begin(), window.end(), kUnknownCode) != window.end()) continue;
    gram.assign(window.begin(), window.end());
    grams_[gram].push_back(static_cast<std::uint32_t>(p + 1));
  }
}

const std::vector<std::uint32_t>* QGramIndex::find(std::span<const Code> gram) const {
  auto it = grams_.find(std::vector<Code>(gram.begin(), gram.end()));
  return it == grams_.end() ? nullptr : &it->second;
}

QGramIndex build_qgram_index(std::span<const Code> query, int q) { return QGramIndex(query, q); }

Score score_floor(std::uint32_t i, std::uint32_t j, const SearchParams& params, std::uint64_t pi_t_min,
                  const ScoringScheme& s) {
  // Rows of a path starting at pi_t_min run up to n - pi_t_min + 1.
  auto reach = static_cast<std::int64_t>(params.n - pi_t_min + 1);
  auto last_row = std::min<std::int64_t>(static_cast<std::int64_t>(params.max_len), reach);
  std::int64_t h = params.threshold;
  std::int64_t by_col = h - (static_cast<std::int64_t>(params.m) - j) * s.match - 1;
  std::int64_t by_row = h - (last_row - static_cast<std::int64_t>(i)) * s.match - 1;
  return static_cast<Score>(std::max<std::int64_t>({0, by_col, by_row}));
}

bool dominated(std::uint32_t j, std::span<const Code> query, const FmIndex& index, int q) {
  if (j < 2 || j + q - 1 > query.size()) return false;
  Code before = query[j - 2];
  if (before == kUnknownCode) return false;
  auto gram = query.subspan(j - 1, q);
  SaRange plain = index.find(gram);
  if (plain.empty()) return false;
  SaRange with_pred = index.extend(index.full_range(), before);
  for (Code c : gram) with_pred = index.extend(with_pred, c);
  // An occurrence at text position 1 has no predecessor, so equal counts also
  // rule that case out.
  return with_pred.width() == plain.width();
}

ForkState Fork::state(int q) const {
  if (fgoe_row) return ForkState::Open;
  if (closed_row) return ForkState::Dead;
  return diagonal.size() < static_cast<std::size_t>(q) ? ForkState::Emr : ForkState::Ngr;
}

GMatrix::GMatrix(std::uint64_t n, std::uint64_t m) : n_(n), m_(m), words_per_col_((n + 63) / 64) {
  if (n * m > kMaxBits) {
    throw Error(Errc::DimensionMismatch, "G-matrix needs n*m <= 2^26, got " + std::to_string(n * m));
  }
  words_.assign(words_per_col_ * (m + 1), 0);
}

void GMatrix::set(std::uint64_t row, std::uint64_t col) {
  std::uint64_t r = row - 1;
  words_[col * words_per_col_ + r / 64] |= std::uint64_t{1} << (r % 64);
}

bool GMatrix::test(std::uint64_t row, std::uint64_t col) const {
  std::uint64_t r = row - 1;
  return (words_[col * words_per_col_ + r / 64] >> (r % 64)) & 1U;
}

void GMatrix::update(std::uint64_t col, const std::vector<bool>& z) {
  if (z.size() != n_ || col < 1 || col > m_) throw Error(Errc::DimensionMismatch, "z must have n entries");
  for (std::uint64_t r = 0; r < n_; ++r) {
    if (z[r]) set(r + 1, col);
  }
}

bool GMatrix::check(std::uint64_t col, const std::vector<bool>& z) const {
  if (z.size() != n_ || col < 1 || col > m_) throw Error(Errc::DimensionMismatch, "z must have n entries");
  for (std::uint64_t r = 0; r < n_; ++r) {
    if (z[r] && !test(r + 1, col)) return false;
  }
  return true;
}

bool GMatrix::check_rows(std::uint64_t col, std::span<const std::uint64_t> rows) const {
  if (rows.empty()) return false;
  for (auto r : rows) {
    if (!test(r, col)) return false;
  }
  return true;
}

}  // namespace alae
