#include "alae/reuse_engine.hpp"

#include <algorithm>
#include <cassert>

namespace alae {

std::vector<FgoeEntry> FgoeQueue::pop_group() {
  std::vector<FgoeEntry> group;
  if (entries_.empty()) return group;
  std::uint32_t row = UINT32_MAX;
  for (const auto& e : entries_) row = std::min(row, e.row);
  std::vector<FgoeEntry> rest;
  for (const auto& e : entries_) (e.row == row ? group : rest).push_back(e);
  entries_ = std::move(rest);
  std::sort(group.begin(), group.end(), [](const FgoeEntry& a, const FgoeEntry& b) { return a.col < b.col; });
  return group;
}

const MatrixCell& JointArea::Row::at(std::uint32_t j) const {
  auto it = std::lower_bound(cols.begin(), cols.end(), j);
  if (it == cols.end() || *it != j) return kDeadCell;
  return cells[static_cast<std::size_t>(it - cols.begin())];
}

namespace {

const MatrixCell& feed_at(const JointArea::Feed& f, std::uint32_t j) {
  auto it = std::lower_bound(f.begin(), f.end(), j, [](const auto& e, std::uint32_t c) { return e.first < c; });
  if (it == f.end() || it->first != j) return kDeadCell;
  return it->second;
}

MatrixCell best_of(const MatrixCell& a, const MatrixCell& b) {
  return {std::max(a.m, b.m), std::max(a.ga, b.ga), std::max(a.gb, b.gb)};
}

// Sorts by column and folds duplicates into their componentwise maximum.
void settle(JointArea::Feed& f) {
  std::sort(f.begin(), f.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t w = 0;
  for (std::size_t r = 0; r < f.size(); ++r) {
    if (w && f[w - 1].first == f[r].first) {
      f[w - 1].second = best_of(f[w - 1].second, f[r].second);
    } else {
      f[w++] = f[r];
    }
  }
  f.resize(w);
}

}  // namespace

void JointArea::extend(Code x, const Inputs& in, const EngineConfig& cfg, Counters& counters) {
  const std::uint32_t i = rows() + 1;
  const std::uint32_t m = cfg.m();
  const Row& prev = row(i - 1);
  std::vector<std::uint32_t> cand;
  cand.reserve(2 * prev.cols.size() + in.hand_prev.size() + in.hand_cur.size() + in.seeds.size());
  for (auto c : prev.cols) {
    cand.push_back(c);
    cand.push_back(c + 1);
  }
  for (const auto& e : in.hand_prev) cand.push_back(e.first + 1);
  for (const auto& e : in.hand_cur) cand.push_back(e.first + 1);
  for (const auto& e : in.seeds) cand.push_back(e.first);
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  while (!cand.empty() && cand.back() > m) cand.pop_back();

  Row out;
  std::size_t ci = 0;
  std::uint32_t chain = 0;
  while (true) {
    std::uint32_t j;
    if (chain && chain <= m && (ci >= cand.size() || chain <= cand[ci])) {
      j = chain;
      if (ci < cand.size() && cand[ci] == chain) ++ci;
    } else if (ci < cand.size()) {
      j = cand[ci++];
    } else {
      break;
    }
    chain = 0;
    const MatrixCell& up = prev.at(j);
    const MatrixCell diag = best_of(prev.at(j - 1), feed_at(in.hand_prev, j - 1));
    const MatrixCell& own_left = (!out.cols.empty() && out.cols.back() + 1 == j) ? out.cells.back() : kDeadCell;
    const MatrixCell left = best_of(own_left, feed_at(in.hand_cur, j - 1));
    MatrixCell cell;
    bool present = false;
    if (up.live() || diag.live() || left.live()) {
      cell = dp_cell(diag.m, up, left, delta(x, cfg.query[j - 1], cfg.scheme), cfg.scheme);
      ++counters.calculated;
      counters.weighted_cost += (up.live() && diag.live() && left.live()) ? 3 : 2;
      present = true;
    }
    if (const auto& seed = feed_at(in.seeds, j); seed.live()) {
      cell.m = std::max(cell.m, seed.m);
      present = true;
    }
    if (!present) continue;
    if (const auto& d = feed_at(in.diagonals, j); d.live()) cell.m = std::max(cell.m, d.m);
    const Score f = cfg.floor(i, j);
    if (cell.m <= f) continue;
    if (cell.ga <= f) cell.ga = kNegInf;
    if (cell.gb <= f) cell.gb = kNegInf;
    out.cols.push_back(j);
    out.cells.push_back(cell);
    chain = j + 1;
  }
  rows_.push_back(std::move(out));
}

ForkSet::ForkSet(std::span<const std::uint32_t> origins) {
  forks_.reserve(origins.size());
  std::vector<std::uint32_t> all;
  for (auto o : origins) {
    Fork f;
    f.origin_col = o;
    all.push_back(static_cast<std::uint32_t>(forks_.size()));
    forks_.push_back(std::move(f));
  }
  open_.push_back(std::move(all));
}

void ForkSet::step(Code x, const EngineConfig& cfg, FgoeQueue& fgoes, Counters& counters, const JointArea* joint) {
  const std::uint32_t i = rows() + 1;
  const auto& s = cfg.scheme;
  std::vector<std::uint32_t> next;
  for (auto id : open_[i - 1]) {
    Fork& f = forks_[id];
    const std::uint32_t j = f.origin_col + i - 1;
    if (j > cfg.m()) {
      f.closed_row = i;
      ++counters.pruned_forks;
      continue;
    }
    if (joint && i > 1 && joint->at(i - 1, j - 1).live()) {
      f.closed_row = i;
      ++counters.pruned_forks;
      continue;
    }
    Score v = i <= static_cast<std::uint32_t>(cfg.q) ? s.match * static_cast<Score>(i)
                                                      : f.diagonal.back() + delta(x, cfg.query[j - 1], s);
    ++counters.calculated;
    ++counters.weighted_cost;
    if (v <= cfg.floor(i, j)) {
      f.closed_row = i;
      ++counters.pruned_forks;
      continue;
    }
    f.diagonal.push_back(v);
    if (fgoe_reached(v, s)) {
      f.fgoe_row = i;
      fgoes.push({i, j, id, v});
    } else {
      next.push_back(id);
    }
  }
  open_.push_back(std::move(next));
}

void ForkSet::truncate(std::uint32_t rows) {
  if (rows >= this->rows()) return;
  open_.resize(rows + 1);
  for (auto& f : forks_) {
    if (f.diagonal.size() > rows) f.diagonal.resize(rows);
    if (f.fgoe_row > rows) f.fgoe_row = 0;
    if (f.closed_row > rows) f.closed_row = 0;
  }
}

GapGroup::GapGroup(std::uint32_t row, const std::vector<FgoeEntry>& entries, const EngineConfig& cfg,
                   bool hand_over)
    : row_(row), base_col_(entries.front().col) {
  std::vector<std::uint32_t> cols;
  for (const auto& e : entries) cols.push_back(e.col);
  if (cfg.reuse) tree_ = construct_cptree(cfg.query, cols);
  std::vector<std::uint32_t> uses(tree_.node_count(), 0);
  for (const auto& e : entries) {
    GapRegion r;
    r.fork = e.fork;
    r.origin_col = e.col;
    r.fgoe_row = e.row;
    r.fgoe_score = e.score;
    r.depth = e.row - 1;
    r.last_live_row = e.row - 1;
    if (cfg.reuse) {
      r.path = tree_.path(e.col);
      for (auto node : r.path) ++uses[node];
    }
    r.limit = cfg.m() - e.col + 1;
    regions_.push_back(std::move(r));
  }
  if (!hand_over) return;
  // Node users only shrink going down a path, so the copied columns are a prefix.
  for (auto& r : regions_) {
    std::uint32_t shared = 0;
    for (auto node : r.path) {
      if (uses[node] > 1) shared = std::max(shared, tree_.node(node).depth);
    }
    r.limit = std::min(r.limit, shared);
  }
}

namespace {

void append_cell(GapColumn& col, std::uint32_t row, const MatrixCell& cell) {
  if (col.cells.empty()) {
    col.top = row;
  } else {
    while (col.bottom() + 1 < row) col.cells.push_back(kDeadCell);
  }
  col.cells.push_back(cell);
}

}  // namespace

void GapGroup::extend_region(std::uint32_t w, std::uint32_t depth, std::span<const Code> rows,
                             const EngineConfig& cfg, Counters& counters) {
  GapRegion& r = regions_[w];
  if (r.depth >= depth) return;
  const std::uint32_t before = r.depth;
  if (before >= r.fgoe_row && r.last_live_row < before) {
    // The region died out; deeper rows cannot revive it.
    r.depth = depth;
    return;
  }
  const auto& s = cfg.scheme;
  std::uint32_t deepest_live = 0;
  std::size_t seg = 0;
  for (std::uint32_t k = 0;; ++k) {
    const std::uint32_t j = r.origin_col + k;
    if (k >= r.limit) break;
    std::uint32_t owner = w;
    std::uint32_t node = UINT32_MAX;
    if (cfg.reuse) {
      while (seg < r.path.size() && tree_.node(r.path[seg]).depth <= k) ++seg;
      if (seg < r.path.size()) {
        node = r.path[seg];
        owner = tree_.node(node).owner;
      }
    }
    if (owner != w) {
      const GapRegion& src = regions_[owner];
      assert(src.fgoe_score == r.fgoe_score);
      if (k >= src.columns.size()) break;
      const GapColumn& oc = src.columns[k];
      std::uint32_t lo = std::max(oc.top, before + 1);
      std::uint32_t hi = std::min(oc.bottom(), depth);
      if (hi >= lo) counters.reused += hi - lo + 1;
      if (k < r.columns.size()) {
        // Earlier copies are a prefix of the owner's column; append the rest.
        auto& mine = r.columns[k];
        if (mine.empty() || mine.top != oc.top || mine.cells.size() > oc.cells.size()) {
          mine = oc;
        } else {
          mine.cells.insert(mine.cells.end(), oc.cells.begin() + mine.cells.size(), oc.cells.end());
        }
      } else {
        r.columns.push_back(oc);
      }
      deepest_live = std::max(deepest_live, std::min(oc.bottom(), depth));
      continue;
    }

    GapColumn fresh;
    const bool exists = k < r.columns.size();
    GapColumn& col = exists ? r.columns[k] : fresh;
    const GapColumn* prev = k ? &r.columns[k - 1] : nullptr;
    std::uint32_t start = before + 1;
    if (col.empty()) start = std::max(start, prev ? prev->top : r.fgoe_row);
    const std::uint32_t reach = prev ? prev->bottom() + 1 : r.fgoe_row;
    const Code pj = cfg.query[j - 1];
    for (std::uint32_t i = start; i <= depth; ++i) {
      MatrixCell cell;
      if (k == 0 && i == r.fgoe_row) {
        cell = {r.fgoe_score, kNegInf, kNegInf};
      } else {
        const MatrixCell& up = col.at(i - 1);
        const MatrixCell& diag = prev ? prev->at(i - 1) : kDeadCell;
        const MatrixCell& left = prev ? prev->at(i) : kDeadCell;
        if (!up.live() && !diag.live() && !left.live()) {
          if (i > reach) break;
          continue;
        }
        cell = dp_cell(diag.m, up, left, delta(rows[i - 1], pj, s), s);
        ++counters.calculated;
        counters.weighted_cost += (up.live() && diag.live() && left.live()) ? 3 : 2;
        const Score f = cfg.floor(i, base_col_ + k);
        if (cell.m <= f) continue;
        if (cell.ga <= f) cell.ga = kNegInf;
        if (cell.gb <= f) cell.gb = kNegInf;
      }
      append_cell(col, i, cell);
      deepest_live = std::max(deepest_live, i);
    }
    if (col.empty()) break;
    if (node != UINT32_MAX && tree_.node(node).column == 0) tree_.node(node).column = r.origin_col;
    if (!exists) r.columns.push_back(std::move(fresh));
  }
  r.depth = depth;
  r.last_live_row = std::max(r.last_live_row, deepest_live);
}

void GapGroup::extend(std::uint32_t depth, std::span<const Code> rows, const EngineConfig& cfg, Counters& counters) {
  for (std::uint32_t w = 0; w < regions_.size(); ++w) extend_region(w, depth, rows, cfg, counters);
}

void GapGroup::truncate(std::uint32_t depth) {
  for (auto& r : regions_) {
    if (r.depth <= depth) continue;
    r.depth = depth;
    r.last_live_row = std::min(r.last_live_row, depth);
    for (std::size_t k = 0; k < r.columns.size(); ++k) {
      auto& col = r.columns[k];
      if (col.top > depth) {
        r.columns.resize(k);
        break;
      }
      col.cells.resize(std::min<std::size_t>(col.cells.size(), depth - col.top + 1));
      while (!col.cells.back().live()) col.cells.pop_back();
    }
  }
}

bool GapGroup::live_at(std::uint32_t row) const {
  for (const auto& r : regions_) {
    if (r.depth >= row && r.last_live_row == row) return true;
  }
  return false;
}

ForkMatrix::ForkMatrix(const EngineConfig& cfg, std::span<const std::uint32_t> origins, Counters& counters)
    : cfg_(cfg), counters_(counters), origins_(origins.begin(), origins.end()), forks_(origins_) {}

bool ForkMatrix::append_row(Code x) {
  path_.push_back(x);
  const std::uint32_t i = depth();
  FgoeQueue fgoes;
  forks_.step(x, cfg_, fgoes, counters_, &joint_);
  if (!fgoes.empty()) groups_.emplace_back(i, fgoes.pop_group(), cfg_, true);
  bool live = !forks_.open_after(i).empty();
  JointArea::Inputs in;
  for (auto& g : groups_) {
    g.extend(i, path_, cfg_, counters_);
    live = live || g.live_at(i);
    for (const auto& r : g.regions()) {
      if (r.limit == 0) {
        if (g.row() == i) in.seeds.push_back({r.origin_col, {r.fgoe_score, kNegInf, kNegInf}});
        continue;
      }
      if (r.columns.size() < r.limit) continue;
      const GapColumn& last = r.columns.back();
      const std::uint32_t h = r.origin_col + r.limit - 1;
      if (last.at(i - 1).live()) in.hand_prev.push_back({h, last.at(i - 1)});
      if (last.at(i).live()) in.hand_cur.push_back({h, last.at(i)});
    }
  }
  for (auto id : forks_.open_after(i - 1)) {
    const Fork& f = forks_.forks()[id];
    if (f.diagonal.size() >= i) in.diagonals.push_back({f.origin_col + i - 1, {f.diagonal[i - 1], kNegInf, kNegInf}});
  }
  settle(in.seeds);
  settle(in.hand_prev);
  settle(in.hand_cur);
  settle(in.diagonals);
  joint_.extend(x, in, cfg_, counters_);
  return live || !joint_.row(i).empty();
}

void ForkMatrix::truncate(std::uint32_t rows) {
  if (rows >= depth()) return;
  path_.resize(rows);
  forks_.truncate(rows);
  joint_.truncate(rows);
  while (!groups_.empty() && groups_.back().row() > rows) groups_.pop_back();
  for (auto& g : groups_) g.truncate(rows);
}

void ForkMatrix::reset() {
  path_.clear();
  forks_ = ForkSet(origins_);
  groups_.clear();
  joint_.clear();
}

void ForkMatrix::last_row(Score min_score, std::vector<RowEntry>& out) const {
  out.clear();
  const std::uint32_t d = depth();
  if (d == 0) return;
  for (auto id : forks_.open_after(d)) {
    const Fork& f = forks_.forks()[id];
    if (f.diagonal.back() >= min_score) out.push_back({f.origin_col + d - 1, f.diagonal.back()});
  }
  for (const auto& g : groups_) {
    for (const auto& r : g.regions()) {
      if (r.last_live_row != d) continue;
      for (std::uint32_t k = 0; k < r.columns.size(); ++k) {
        const MatrixCell& c = r.columns[k].at(d);
        if (c.live() && c.m >= min_score) out.push_back({r.origin_col + k, c.m});
      }
    }
  }
  const auto& jr = joint_.row(d);
  for (std::size_t t = 0; t < jr.cols.size(); ++t) {
    if (jr.cells[t].m >= min_score) out.push_back({jr.cols[t], jr.cells[t].m});
  }
  std::sort(out.begin(), out.end(), [](const RowEntry& a, const RowEntry& b) {
    return a.col != b.col ? a.col < b.col : a.score > b.score;
  });
  out.erase(std::unique(out.begin(), out.end(), [](const RowEntry& a, const RowEntry& b) { return a.col == b.col; }),
            out.end());
}

namespace {

void export_diagonals(const ForkSet& forks, SparseMatrix& out) {
  for (const auto& f : forks.forks()) {
    for (std::uint32_t i = 1; i <= f.diagonal.size(); ++i) {
      out.put(i, f.origin_col + i - 1, {f.diagonal[i - 1], kNegInf, kNegInf});
    }
  }
}

void export_group(const GapGroup& g, SparseMatrix& out) {
  for (const auto& r : g.regions()) {
    for (std::uint32_t k = 0; k < r.columns.size(); ++k) {
      const auto& col = r.columns[k];
      for (std::uint32_t i = 0; i < col.cells.size(); ++i) {
        if (col.cells[i].live()) out.put(col.top + i, r.origin_col + k, col.cells[i]);
      }
    }
  }
}

}  // namespace

void ForkMatrix::export_cells(SparseMatrix& out) const {
  export_diagonals(forks_, out);
  for (const auto& g : groups_) export_group(g, out);
  for (std::uint32_t i = 1; i <= joint_.rows(); ++i) {
    const auto& r = joint_.row(i);
    for (std::size_t t = 0; t < r.cols.size(); ++t) out.put(i, r.cols[t], r.cells[t]);
  }
}

FgoeQueue cal_matrix_by_row(std::span<const Code> x, ForkSet& forks, SparseMatrix& out, const EngineConfig& cfg,
                            Counters& counters) {
  FgoeQueue fgoes;
  const auto rows = std::min<std::uint32_t>(static_cast<std::uint32_t>(x.size()), cfg.row_limit);
  for (std::uint32_t i = 1; i <= rows; ++i) {
    forks.step(x[i - 1], cfg, fgoes, counters);
    if (forks.open_after(i).empty()) break;
  }
  export_diagonals(forks, out);
  return fgoes;
}

void cal_matrix_by_column(std::span<const Code> x, const std::vector<FgoeEntry>& group, SparseMatrix& out,
                          const EngineConfig& cfg, Counters& counters) {
  if (group.empty()) return;
  GapGroup g(group.front().row, group, cfg, false);
  const auto rows = std::min<std::uint32_t>(static_cast<std::uint32_t>(x.size()), cfg.row_limit);
  g.extend(rows, x, cfg, counters);
  export_group(g, out);
}

SparseMatrix hybrid(std::span<const Code> x, const QGramIndex& qgrams, const EngineConfig& cfg, Counters& counters) {
  SparseMatrix out;
  if (x.size() < static_cast<std::size_t>(cfg.q)) return out;
  const auto* origins = qgrams.find(x.first(cfg.q));
  if (!origins) return out;
  ForkMatrix matrix(cfg, *origins, counters);
  const auto rows = std::min<std::uint32_t>(static_cast<std::uint32_t>(x.size()), cfg.row_limit);
  for (std::uint32_t i = 0; i < rows; ++i) {
    if (!matrix.append_row(x[i])) break;
  }
  matrix.export_cells(out);
  return out;
}

void traverse_prefix_class(std::span<const Code> gram, SaRange range, std::span<const std::uint32_t> origins,
                           const FmIndex& index, const EngineConfig& cfg, const TraverseOptions& opts,
                           const RowSink& sink, Counters& counters) {
  const auto q = static_cast<std::uint32_t>(gram.size());
  if (origins.empty() || range.empty() || cfg.row_limit < q) return;
  ForkMatrix matrix(cfg, origins, counters);
  std::vector<RowEntry> entries;
  auto emit = [&](SaRange r) {
    matrix.last_row(opts.emit_min, entries);
    if (!entries.empty()) sink(r, matrix.depth(), entries);
  };
  // Rows above q are shorter than the gram the range stands for, and cannot
  // reach the threshold anyway.
  for (std::uint32_t d = 0; d < q; ++d) {
    if (!matrix.append_row(gram[d])) return;
    if (opts.emit_shallow && d + 1 < q) emit(range);
  }
  emit(range);
  ++counters.trie_nodes;

  struct Frame {
    std::uint32_t depth;
    std::vector<std::pair<Code, SaRange>> kids;
    std::size_t next = 0;
  };
  std::vector<Frame> stack;
  if (q < cfg.row_limit) stack.push_back({q, index.children(range)});
  std::vector<Code> replay;
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next == f.kids.size()) {
      stack.pop_back();
      continue;
    }
    auto [c, r] = f.kids[f.next++];
    const std::uint32_t d = f.depth;
    if (matrix.depth() != d) {
      if (opts.path_sharing) {
        matrix.truncate(d);
      } else {
        replay.assign(matrix.path().begin(), matrix.path().begin() + d);
        matrix.reset();
        for (Code sym : replay) matrix.append_row(sym);
      }
    }
    bool live = matrix.append_row(c);
    ++counters.trie_nodes;
    emit(r);
    if (live && d + 1 < cfg.row_limit) stack.push_back({d + 1, index.children(r)});
  }
}

}  // namespace alae
