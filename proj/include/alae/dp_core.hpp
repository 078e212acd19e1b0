#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <unordered_map>
#include <vector>

#include "alae/scoring.hpp"
#include "alae/sequence.hpp"

namespace alae {

inline constexpr Score kNegInf = std::numeric_limits<Score>::min() / 4;

// Saturating add: anything at or below the sentinel stays at the sentinel.
inline Score sat_add(Score a, Score b) {
  if (a <= kNegInf) return kNegInf;
  Score r = a + b;
  return r < kNegInf ? kNegInf : r;
}

struct MatrixCell {
  Score m = kNegInf;
  Score ga = kNegInf;  // X[i] against a gap
  Score gb = kNegInf;  // P[j] against a gap

  bool live() const { return m > kNegInf; }
  friend bool operator==(const MatrixCell&, const MatrixCell&) = default;
};

inline constexpr MatrixCell kDeadCell{};

inline MatrixCell dp_cell(Score diag_m, const MatrixCell& up, const MatrixCell& left, Score d,
                          const ScoringScheme& s) {
  MatrixCell c;
  c.ga = std::max(sat_add(up.ga, s.gap_extend), sat_add(up.m, s.gap_first()));
  c.gb = std::max(sat_add(left.gb, s.gap_extend), sat_add(left.m, s.gap_first()));
  c.m = std::max({sat_add(diag_m, d), c.ga, c.gb});
  return c;
}

class DpMatrix {
 public:
  DpMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), cells_((rows + 1) * (cols + 1)) {}
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  MatrixCell& at(std::size_t i, std::size_t j) { return cells_[i * (cols_ + 1) + j]; }
  const MatrixCell& at(std::size_t i, std::size_t j) const { return cells_[i * (cols_ + 1) + j]; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<MatrixCell> cells_;
};

// Row 0 and column 0 filled, interior left dead.
DpMatrix init_borders(std::size_t rows, std::size_t cols, const ScoringScheme& s);

// Every cell of M_X for X against P.
DpMatrix align_matrix(std::span<const Code> x, std::span<const Code> p, const ScoringScheme& s);

class SparseMatrix {
 public:
  static std::uint64_t key(std::uint32_t i, std::uint32_t j) { return (static_cast<std::uint64_t>(i) << 32) | j; }
  const MatrixCell* find(std::uint32_t i, std::uint32_t j) const;
  // Keeps the larger M when a coordinate is written twice.
  void put(std::uint32_t i, std::uint32_t j, const MatrixCell& c);
  std::size_t size() const { return cells_.size(); }
  const std::unordered_map<std::uint64_t, MatrixCell>& cells() const { return cells_; }

 private:
  std::unordered_map<std::uint64_t, MatrixCell> cells_;
};

struct AlignmentHit {
  std::uint64_t end_t;
  std::uint32_t end_p;
  Score score;
  std::uint64_t start_t;

  friend bool operator==(const AlignmentHit&, const AlignmentHit&) = default;
  friend bool operator<(const AlignmentHit& a, const AlignmentHit& b) {
    if (a.end_t != b.end_t) return a.end_t < b.end_t;
    return a.end_p < b.end_p;
  }
};

// Every end pair whose best local alignment reaches the threshold, sorted by
// (end_t, end_p). start_t is the smallest start among optimal alignments whose
// running score stays positive after every column.
std::vector<AlignmentHit> oracle_search(std::span<const Code> text, std::span<const Code> query,
                                        const ScoringScheme& s, Score threshold);

}  // namespace alae
