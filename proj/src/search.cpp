#include "alae/search.hpp"

#include <algorithm>
#include <atomic>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <tuple>

#include "alae/error.hpp"
#include "alae/filters.hpp"
#include "alae/reuse_engine.hpp"

namespace alae {

SearchMode parse_mode(std::string_view name) {
  if (name == "alae") return SearchMode::Alae;
  if (name == "bwtsw") return SearchMode::Bwtsw;
  if (name == "oracle") return SearchMode::Oracle;
  throw Error(Errc::InvalidSymbol, "unknown mode '" + std::string(name) + "'");
}

std::string_view mode_name(SearchMode mode) {
  switch (mode) {
    case SearchMode::Alae: return "alae";
    case SearchMode::Bwtsw: return "bwtsw";
    case SearchMode::Oracle: return "oracle";
  }
  return "?";
}

void AlignmentTable::offer(const AlignmentHit& hit) {
  auto [it, fresh] = best_.try_emplace(key(hit.end_t, hit.end_p), hit);
  if (fresh) return;
  auto& cur = it->second;
  if (hit.score > cur.score || (hit.score == cur.score && hit.start_t < cur.start_t)) cur = hit;
}

void AlignmentTable::merge(const AlignmentTable& other) {
  for (const auto& [k, hit] : other.best_) offer(hit);
}

std::vector<AlignmentHit> AlignmentTable::hits(Score threshold) const {
  std::vector<AlignmentHit> out;
  for (const auto& [k, hit] : best_) {
    if (hit.score >= threshold) out.push_back(hit);
  }
  std::sort(out.begin(), out.end());
  return out;
}

AlignmentTable aggregate(std::span<const AlignmentHit> candidates) {
  AlignmentTable t;
  for (const auto& c : candidates) t.offer(c);
  return t;
}

Ratios ratios(const Counters& c) {
  if (c.baseline_calculated == 0) throw Error(Errc::MissingBaseline, "no baseline entry count");
  double base = static_cast<double>(c.baseline_calculated);
  return {(base - static_cast<double>(c.calculated)) / base, reusing_ratio(c)};
}

double reusing_ratio(const Counters& c) {
  return c.accessed() == 0 ? 0.0 : static_cast<double>(c.reused) / static_cast<double>(c.accessed());
}

namespace {

struct Worker {
  AlignmentTable table;
  Counters counters;
};

// Runs job(i, worker) for every i in [0, jobs) on up to `threads` threads.
template <class Fn>
std::vector<Worker> run_jobs(std::size_t jobs, unsigned threads, Fn&& job) {
  unsigned count = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(jobs, 1))));
  std::vector<Worker> workers(count);
  if (count == 1) {
    for (std::size_t i = 0; i < jobs; ++i) job(i, workers[0]);
    return workers;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_lock;
  for (unsigned t = 0; t < count; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = next++; i < jobs; i = next++) job(i, workers[t]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_lock);
        if (!failure) failure = std::current_exception();
        next = jobs;
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return workers;
}

void collect(std::vector<Worker>& workers, AlignmentTable& table, Counters& counters) {
  for (auto& w : workers) {
    table.merge(w.table);
    counters += w.counters;
  }
}

std::size_t record_index(const std::vector<Boundary>& bounds, std::uint64_t pos) {
  auto it = std::upper_bound(bounds.begin(), bounds.end(), pos,
                             [](std::uint64_t p, const Boundary& b) { return p < b.start; });
  return static_cast<std::size_t>(it - bounds.begin());
}

void drop_cross_record(std::vector<AlignmentHit>& hits, const std::vector<Boundary>& bounds) {
  if (bounds.size() < 2) return;
  std::erase_if(hits, [&](const AlignmentHit& h) { return record_index(bounds, h.start_t) != record_index(bounds, h.end_t); });
}

// `span` is the length of the string `range` stands for; rows above q reuse the gram's range.
void emit_hits(const FmIndex& index, SaRange range, std::uint32_t span, std::uint32_t depth,
               std::span<const RowEntry> entries, Score threshold, AlignmentTable& table, GMatrix* gm,
               Score gmatrix_min) {
  bool want = false;
  for (const auto& e : entries) want = want || e.score >= threshold || (gm && e.score >= gmatrix_min);
  if (!want) return;
  auto starts = index.locate(range, span);
  for (const auto& e : entries) {
    for (auto t : starts) {
      if (e.score >= threshold) table.offer({t + depth - 1, e.col, e.score, t});
      if (gm && e.score >= gmatrix_min) gm->set(t + depth - 1, e.col);
    }
  }
}

// Sparse row of the baseline DP: live cells only, ascending column.
struct SparseRow {
  std::vector<std::uint32_t> cols;
  std::vector<MatrixCell> cells;
  bool empty() const { return cols.empty(); }
};

void baseline_row(const SparseRow* prev, Code x, std::span<const Code> query, const ScoringScheme& s, SparseRow& out,
                  Counters& counters) {
  out.cols.clear();
  out.cells.clear();
  const auto m = static_cast<std::uint32_t>(query.size());
  auto keep = [&](std::uint32_t j, MatrixCell c) {
    if (c.m <= 0) return;
    if (c.ga <= 0) c.ga = kNegInf;
    if (c.gb <= 0) c.gb = kNegInf;
    out.cols.push_back(j);
    out.cells.push_back(c);
  };
  auto left_of = [&](std::uint32_t j) -> const MatrixCell& {
    return (!out.cols.empty() && out.cols.back() + 1 == j) ? out.cells.back() : kDeadCell;
  };
  if (!prev) {
    const MatrixCell top{0, kNegInf, kNegInf};
    for (std::uint32_t j = 1; j <= m; ++j) {
      MatrixCell c = dp_cell(0, top, left_of(j), delta(x, query[j - 1], s), s);
      ++counters.calculated;
      counters.weighted_cost += 3;
      keep(j, c);
    }
    return;
  }
  std::vector<std::uint32_t> cand;
  cand.reserve(prev->cols.size() * 2);
  for (auto c : prev->cols) {
    if (cand.empty() || cand.back() < c) cand.push_back(c);
    if (c + 1 <= m) cand.push_back(c + 1);
  }
  std::size_t ci = 0;
  std::size_t pp = 0;
  std::uint32_t chain = 0;
  while (true) {
    std::uint32_t j;
    if (chain && (ci >= cand.size() || chain <= cand[ci])) {
      j = chain;
      if (ci < cand.size() && cand[ci] == chain) ++ci;
    } else if (ci < cand.size()) {
      j = cand[ci++];
    } else {
      break;
    }
    while (pp < prev->cols.size() && prev->cols[pp] + 1 < j) ++pp;
    const MatrixCell* diag = &kDeadCell;
    const MatrixCell* up = &kDeadCell;
    for (std::size_t t = pp; t < prev->cols.size() && prev->cols[t] <= j; ++t) {
      if (prev->cols[t] + 1 == j) diag = &prev->cells[t];
      if (prev->cols[t] == j) up = &prev->cells[t];
    }
    MatrixCell c = dp_cell(diag->m, *up, left_of(j), delta(x, query[j - 1], s), s);
    ++counters.calculated;
    counters.weighted_cost += 3;
    std::size_t before = out.cols.size();
    keep(j, c);
    chain = (out.cols.size() > before && j + 1 <= m) ? j + 1 : 0;
  }
}

void baseline_subtree(const FmIndex& index, std::span<const Code> query, const ScoringScheme& s, Score threshold,
                      std::uint64_t max_depth, Code first, SaRange first_range, Worker& worker) {
  struct Frame {
    SparseRow row;
    std::uint32_t depth;
    std::vector<std::pair<Code, SaRange>> kids;
    std::size_t next = 0;
  };
  std::vector<RowEntry> entries;
  auto emit = [&](const SparseRow& row, SaRange range, std::uint32_t depth) {
    entries.clear();
    for (std::size_t t = 0; t < row.cols.size(); ++t) {
      if (row.cells[t].m >= threshold) entries.push_back({row.cols[t], row.cells[t].m});
    }
    if (!entries.empty()) emit_hits(index, range, depth, depth, entries, threshold, worker.table, nullptr, 0);
  };
  std::vector<Frame> stack;
  Frame root;
  root.depth = 1;
  baseline_row(nullptr, first, query, s, root.row, worker.counters);
  ++worker.counters.trie_nodes;
  emit(root.row, first_range, 1);
  if (root.row.empty() || max_depth <= 1) return;
  root.kids = index.children(first_range);
  stack.push_back(std::move(root));
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next == f.kids.size()) {
      stack.pop_back();
      continue;
    }
    auto [c, r] = f.kids[f.next++];
    Frame child;
    child.depth = f.depth + 1;
    baseline_row(&f.row, c, query, s, child.row, worker.counters);
    ++worker.counters.trie_nodes;
    emit(child.row, r, child.depth);
    if (!child.row.empty() && child.depth < max_depth) {
      child.kids = index.children(r);
      stack.push_back(std::move(child));
    }
  }
}

SearchResult run_baseline(const FmIndex& index, const Query& query, const ScoringScheme& s, Score threshold,
                          const SearchParams& params, unsigned threads) {
  auto roots = index.children(index.full_range());
  auto workers = run_jobs(roots.size(), threads, [&](std::size_t i, Worker& w) {
    baseline_subtree(index, query.codes, s, threshold, params.max_len, roots[i].first, roots[i].second, w);
  });
  AlignmentTable table;
  SearchResult res;
  collect(workers, table, res.counters);
  res.hits = table.hits(threshold);
  return res;
}

struct PrefixClass {
  std::vector<Code> gram;
  SaRange range;
  std::vector<std::uint32_t> origins;
  std::vector<std::uint64_t> occurrences;  // sorted 1-based starts of the gram in T
};

SearchResult run_alae(const FmIndex& index, const Query& query, const ScoringScheme& s, Score threshold,
                      const SearchParams& params, const SearchOptions& opts) {
  const auto& p = query.codes;
  const int q = q_value(s);
  // A prefix of q matches may already outscore H; never seed on more than min_len symbols.
  const int q_eff = opts.prefix_filter ? static_cast<int>(std::min<std::uint64_t>(q, params.min_len)) : 1;
  QGramIndex grams(p, q_eff);

  SearchResult res;
  std::vector<PrefixClass> classes;
  for (const auto& [gram, positions] : grams.grams()) {
    SaRange range = index.find(gram);
    if (range.empty()) continue;
    PrefixClass pc{gram, range, {}, {}};
    for (auto j : positions) {
      if (opts.domination && dominated(j, p, index, q_eff)) {
        ++res.counters.dominated_forks;
        continue;
      }
      pc.origins.push_back(j);
    }
    if (pc.origins.empty()) continue;
    pc.occurrences = index.locate(range, q_eff);
    classes.push_back(std::move(pc));
  }

  // Earlier query columns first, so the G-matrix already holds their diagonals
  // when later forks are checked.
  std::stable_sort(classes.begin(), classes.end(),
                   [](const PrefixClass& a, const PrefixClass& b) { return a.origins.front() < b.origins.front(); });

  std::unique_ptr<GMatrix> gm;
  if (opts.gmatrix) gm = std::make_unique<GMatrix>(params.n, params.m);
  const unsigned threads = gm ? 1U : opts.threads;
  const Score emit_min = gm ? std::min(threshold, s.match) : threshold;

  auto workers = run_jobs(classes.size(), threads, [&](std::size_t i, Worker& w) {
    const PrefixClass& pc = classes[i];
    std::vector<std::uint32_t> origins;
    for (auto j : pc.origins) {
      if (gm && gm->check_rows(j, pc.occurrences)) {
        ++w.counters.gmatrix_skipped_forks;
        continue;
      }
      origins.push_back(j);
    }
    if (origins.empty()) return;
    EngineConfig cfg;
    cfg.scheme = s;
    cfg.query = p;
    cfg.threshold = threshold;
    cfg.q = q_eff;
    std::uint64_t reach = params.n - pc.occurrences.front() + 1;
    cfg.row_limit = static_cast<std::uint32_t>(opts.length_filter ? std::min(reach, params.max_len) : reach);
    cfg.score_filter = opts.score_filter;
    cfg.reuse = opts.reuse;
    TraverseOptions topts{opts.path_sharing, emit_min, gm != nullptr};
    auto sink = [&](SaRange range, std::uint32_t depth, std::span<const RowEntry> entries) {
      emit_hits(index, range, std::max<std::uint32_t>(depth, q_eff), depth, entries, threshold, w.table, gm.get(), s.match);
    };
    traverse_prefix_class(pc.gram, pc.range, origins, index, cfg, topts, sink, w.counters);
  });
  AlignmentTable table;
  collect(workers, table, res.counters);
  res.hits = table.hits(threshold);
  return res;
}

}  // namespace

SearchResult search(const FmIndex& index, const EncodedText& text, const Query& query, const ScoringScheme& scheme,
                    Score threshold, const SearchOptions& opts) {
  scheme.validate();
  if (threshold < 1) throw Error(Errc::NonPositiveParameter, "threshold must be at least 1");
  if (query.codes.size() < static_cast<std::size_t>(q_value(scheme))) {
    throw Error(Errc::QueryTooShort, "query length " + std::to_string(query.codes.size()) + " is below q=" +
                                         std::to_string(q_value(scheme)));
  }
  const std::uint64_t n = index.text_size();
  const std::uint64_t m = query.codes.size();
  SearchParams params = make_search_params(scheme, m, n, threshold);

  SearchResult res;
  switch (opts.mode) {
    case SearchMode::Oracle: {
      if (n * m > kOracleCellLimit) {
        throw Error(Errc::OracleTooLarge, "oracle needs n*m <= 1e8, got " + std::to_string(n * m));
      }
      res.hits = oracle_search(text.codes(), query.codes, scheme, threshold);
      res.counters.calculated = n * m;
      res.counters.weighted_cost = 3 * n * m;
      break;
    }
    case SearchMode::Bwtsw:
      res = run_baseline(index, query, scheme, threshold, params, opts.threads);
      break;
    case SearchMode::Alae:
      res = run_alae(index, query, scheme, threshold, params, opts);
      break;
  }
  drop_cross_record(res.hits, index.boundaries());
  return res;
}

std::string format_hits_tsv(const EncodedText& text, std::string_view query_id, std::span<const AlignmentHit> hits) {
  struct Row {
    std::size_t record;
    std::uint64_t start;
    std::uint64_t end;
    std::uint32_t end_p;
    Score score;
  };
  std::vector<Row> rows;
  rows.reserve(hits.size());
  for (const auto& h : hits) {
    auto s = text.resolve(h.start_t);
    auto e = text.resolve(h.end_t);
    rows.push_back({s.record, s.offset, e.offset, h.end_p, h.score});
  }
  std::sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) {
    return std::tie(x.record, x.start, x.end, x.end_p) < std::tie(y.record, y.start, y.end, y.end_p);
  });
  std::string out;
  for (const auto& r : rows) {
    out += query_id;
    out += '\t' + text.boundaries()[r.record].id + '\t' + std::to_string(r.start) + '\t' + std::to_string(r.end) +
           '\t' + std::to_string(r.end_p) + '\t' + std::to_string(r.score) + '\n';
  }
  return out;
}

}  // namespace alae
