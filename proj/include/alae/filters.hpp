#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "alae/fm_index.hpp"
#include "alae/scoring.hpp"
#include "alae/sequence.hpp"

namespace alae {

// Inverted lists of the query's q-grams. Grams containing the never-match
// code are left out since they cannot match the text exactly.
class QGramIndex {
 public:
  QGramIndex(std::span<const Code> query, int q);

  int q() const { return q_; }
  const std::vector<std::uint32_t>* find(std::span<const Code> gram) const;
  const std::map<std::vector<Code>, std::vector<std::uint32_t>>& grams() const { return grams_; }

 private:
  int q_;
  std::map<std::vector<Code>, std::vector<std::uint32_t>> grams_;
};

QGramIndex build_qgram_index(std::span<const Code> query, int q);

// Largest score an entry can hold and still be meaningless. pi_t_min is the
// smallest text start among the occurrences sharing the matrix.
Score score_floor(std::uint32_t i, std::uint32_t j, const SearchParams& params, std::uint64_t pi_t_min,
                  const ScoringScheme& s);

inline bool fgoe_reached(Score m_value, const ScoringScheme& s) { return m_value > -s.gap_first(); }

// Whether every occurrence of P[j, j+q-1] in T is preceded by P[j-1]. j is 1-based.
bool dominated(std::uint32_t j, std::span<const Code> query, const FmIndex& index, int q);

enum class ForkState { Emr, Ngr, Open, Dead };

struct FgoeCell {
  std::uint32_t row;
  std::uint32_t col;
};

// One seed of a matrix: the diagonal that starts at query column origin_col.
struct Fork {
  std::uint32_t origin_col = 0;
  std::vector<Score> diagonal;  // M on the diagonal for rows 1..size()
  std::uint32_t fgoe_row = 0;   // 0 while the diagonal has not opened a gap region
  std::uint32_t closed_row = 0; // row at which the diagonal died, 0 if it has not

  std::optional<FgoeCell> fgoe() const {
    if (!fgoe_row) return std::nullopt;
    return FgoeCell{fgoe_row, origin_col + fgoe_row - 1};
  }
  ForkState state(int q) const;
};

class GMatrix {
 public:
  static constexpr std::uint64_t kMaxBits = std::uint64_t{1} << 26;

  GMatrix(std::uint64_t n, std::uint64_t m);
  std::uint64_t rows() const { return n_; }
  std::uint64_t cols() const { return m_; }

  void set(std::uint64_t row, std::uint64_t col);
  bool test(std::uint64_t row, std::uint64_t col) const;
  // z has one flag per text position (1-based row r at index r-1).
  void update(std::uint64_t col, const std::vector<bool>& z);
  bool check(std::uint64_t col, const std::vector<bool>& z) const;
  bool check_rows(std::uint64_t col, std::span<const std::uint64_t> rows) const;

 private:
  std::uint64_t n_;
  std::uint64_t m_;
  std::vector<std::uint64_t> words_;  // column-major, 64 rows per word
  std::uint64_t words_per_col_;
};

}  // namespace alae
