#include "alae/dp_core.hpp"

#include <algorithm>

namespace alae {

DpMatrix init_borders(std::size_t rows, std::size_t cols, const ScoringScheme& s) {
  DpMatrix mat(rows, cols);
  for (std::size_t j = 0; j <= cols; ++j) mat.at(0, j) = {0, kNegInf, kNegInf};
  for (std::size_t i = 1; i <= rows; ++i) {
    Score v = s.gap_open + static_cast<Score>(i) * s.gap_extend;
    mat.at(i, 0) = {v, v, kNegInf};
  }
  return mat;
}

DpMatrix align_matrix(std::span<const Code> x, std::span<const Code> p, const ScoringScheme& s) {
  DpMatrix mat = init_borders(x.size(), p.size(), s);
  for (std::size_t i = 1; i <= x.size(); ++i) {
    for (std::size_t j = 1; j <= p.size(); ++j) {
      mat.at(i, j) = dp_cell(mat.at(i - 1, j - 1).m, mat.at(i - 1, j), mat.at(i, j - 1), delta(x[i - 1], p[j - 1], s), s);
    }
  }
  return mat;
}

const MatrixCell* SparseMatrix::find(std::uint32_t i, std::uint32_t j) const {
  auto it = cells_.find(key(i, j));
  return it == cells_.end() ? nullptr : &it->second;
}

void SparseMatrix::put(std::uint32_t i, std::uint32_t j, const MatrixCell& c) {
  auto [it, fresh] = cells_.try_emplace(key(i, j), c);
  if (!fresh && c.m > it->second.m) it->second = c;
}

namespace {

struct Tagged {
  Score score = kNegInf;
  std::uint64_t start = 0;

  void offer(Score v, std::uint64_t st) {
    if (v <= 0) return;
    if (v > score || (v == score && st < start)) {
      score = v;
      start = st;
    }
  }
  Tagged plus(Score d) const {
    Tagged t;
    if (score > kNegInf) t.offer(score + d, start);
    return t;
  }
};

}  // namespace

std::vector<AlignmentHit> oracle_search(std::span<const Code> text, std::span<const Code> query,
                                        const ScoringScheme& s, Score threshold) {
  const std::size_t m = query.size();
  std::vector<AlignmentHit> hits;
  std::vector<Tagged> prev_m(m + 1), prev_ga(m + 1), cur_m(m + 1), cur_ga(m + 1);
  for (std::size_t i = 1; i <= text.size(); ++i) {
    Tagged gb;  // running horizontal gap state along the row
    cur_m[0] = Tagged{};
    cur_ga[0] = Tagged{};
    for (std::size_t j = 1; j <= m; ++j) {
      Tagged ga = prev_ga[j].plus(s.gap_extend);
      Tagged open_up = prev_m[j].plus(s.gap_first());
      ga.offer(open_up.score, open_up.start);
      Tagged next_gb = gb.plus(s.gap_extend);
      Tagged open_left = cur_m[j - 1].plus(s.gap_first());
      next_gb.offer(open_left.score, open_left.start);
      gb = next_gb;

      Score d = delta(text[i - 1], query[j - 1], s);
      Tagged best = prev_m[j - 1].plus(d);
      if (d > 0) best.offer(d, i);
      best.offer(ga.score, ga.start);
      best.offer(gb.score, gb.start);
      cur_m[j] = best;
      cur_ga[j] = ga;
      if (best.score >= threshold) {
        hits.push_back({i, static_cast<std::uint32_t>(j), best.score, best.start});
      }
    }
    std::swap(prev_m, cur_m);
    std::swap(prev_ga, cur_ga);
  }
  return hits;
}

}  // namespace alae
