#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "alae/counters.hpp"
#include "alae/dp_core.hpp"
#include "alae/filters.hpp"
#include "alae/fm_index.hpp"
#include "alae/scoring.hpp"

namespace alae {

// Settings shared by every matrix of one prefix class.
struct EngineConfig {
  ScoringScheme scheme;
  std::span<const Code> query;
  Score threshold = 1;
  int q = 1;                    // rows 1..q of every fork are exact matches
  std::uint32_t row_limit = 0;  // deepest row worth evaluating
  bool score_filter = true;
  bool reuse = true;

  std::uint32_t m() const { return static_cast<std::uint32_t>(query.size()); }
  // Scores at or below this are meaningless at (i, j).
  Score floor(std::uint32_t i, std::uint32_t j) const {
    if (!score_filter) return 0;
    std::int64_t h = threshold;
    std::int64_t by_col = h - (static_cast<std::int64_t>(m()) - j) * scheme.match - 1;
    std::int64_t by_row = h - (static_cast<std::int64_t>(row_limit) - i) * scheme.match - 1;
    return static_cast<Score>(std::max<std::int64_t>({0, by_col, by_row}));
  }
};

struct CptNode {
  std::uint32_t offset = 0;  // label of the entering edge: P[offset, offset + length), 0-based
  std::uint32_t length = 0;
  std::uint32_t depth = 0;   // string depth at the bottom of the edge
  std::vector<std::pair<Code, std::uint32_t>> children;
  std::uint32_t owner = UINT32_MAX;  // first suffix (by column) whose path uses this edge
  std::uint32_t column = 0;          // origin column of the fork that evaluated the edge, 0 = never
};

// Trie of the query suffixes P[j_w, m], assembled from the pieces
// P[j_w, j_{w+1} - 1] by appending each new piece below the ends of the
// fragments inserted so far.
class CpTree {
 public:
  static constexpr std::uint32_t kRoot = 0;

  CpTree() = default;
  CpTree(std::span<const Code> query, std::span<const std::uint32_t> columns);

  const CptNode& node(std::uint32_t id) const { return nodes_[id]; }
  CptNode& node(std::uint32_t id) { return nodes_[id]; }
  std::size_t node_count() const { return nodes_.size(); }
  std::uint64_t inserted_chars() const { return inserted_; }
  std::uint32_t child(std::uint32_t id, Code c) const;
  // Nodes whose edges spell P[column, m], root excluded.
  std::vector<std::uint32_t> path(std::uint32_t column) const;
  bool contains_suffix(std::uint32_t column) const;

 private:
  std::uint32_t insert(std::uint32_t from, std::uint32_t begin, std::uint32_t end);

  std::span<const Code> query_;
  std::vector<CptNode> nodes_;
  std::uint64_t inserted_ = 0;
};

CpTree construct_cptree(std::span<const Code> query, std::span<const std::uint32_t> columns);

struct FgoeEntry {
  std::uint32_t row;
  std::uint32_t col;
  std::uint32_t fork;
  Score score;
};

class FgoeQueue {
 public:
  void push(const FgoeEntry& e) { entries_.push_back(e); }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  // Removes and returns every entry on the smallest row, by ascending column.
  std::vector<FgoeEntry> pop_group();

 private:
  std::vector<FgoeEntry> entries_;
};

// Gap cells evaluated once per entry from the best value any fork offers.
// Every alignment of a matrix starts at the same text position, so only the
// per-entry maximum matters to the hits.
class JointArea {
 public:
  struct Row {
    std::vector<std::uint32_t> cols;
    std::vector<MatrixCell> cells;
    bool empty() const { return cols.empty(); }
    const MatrixCell& at(std::uint32_t j) const;
  };
  // Cells another component contributes on one row, sorted by column.
  using Feed = std::vector<std::pair<std::uint32_t, MatrixCell>>;
  struct Inputs {
    Feed seeds;      // first gap-open entries that start here, taken as is
    Feed hand_prev;  // last copyable column of each region, row i-1
    Feed hand_cur;   // same, row i
    Feed diagonals;  // fork diagonal cells of row i, merged where this area has an entry
  };

  std::uint32_t rows() const { return static_cast<std::uint32_t>(rows_.size()); }
  const Row& row(std::uint32_t i) const { return i >= 1 && i <= rows_.size() ? rows_[i - 1] : empty_; }
  const MatrixCell& at(std::uint32_t i, std::uint32_t j) const { return row(i).at(j); }
  // Evaluates row rows()+1 for text symbol x.
  void extend(Code x, const Inputs& in, const EngineConfig& cfg, Counters& counters);
  void truncate(std::uint32_t rows) {
    if (rows_.size() > rows) rows_.resize(rows);
  }
  void clear() { rows_.clear(); }

 private:
  std::vector<Row> rows_;
  Row empty_;
};

// The diagonals of every fork in one matrix, advanced a row at a time.
class ForkSet {
 public:
  explicit ForkSet(std::span<const std::uint32_t> origins);

  const std::vector<Fork>& forks() const { return forks_; }
  std::uint32_t rows() const { return static_cast<std::uint32_t>(open_.size()) - 1; }
  // Forks still on their diagonal after `row`.
  const std::vector<std::uint32_t>& open_after(std::uint32_t row) const { return open_[row]; }
  // A fork whose previous cell lies inside `joint` is closed: the joint area
  // already carries its diagonal.
  void step(Code x, const EngineConfig& cfg, FgoeQueue& fgoes, Counters& counters, const JointArea* joint = nullptr);
  void truncate(std::uint32_t rows);

 private:
  std::vector<Fork> forks_;
  std::vector<std::vector<std::uint32_t>> open_;
};

struct GapColumn {
  std::uint32_t top = 0;
  std::vector<MatrixCell> cells;  // rows top.., first and last are live

  bool empty() const { return cells.empty(); }
  std::uint32_t bottom() const { return top + static_cast<std::uint32_t>(cells.size()) - 1; }
  const MatrixCell& at(std::uint32_t row) const {
    if (cells.empty() || row < top || row > bottom()) return kDeadCell;
    return cells[row - top];
  }
};

struct GapRegion {
  std::uint32_t fork = 0;
  std::uint32_t origin_col = 0;  // query column of the FGOE
  std::uint32_t fgoe_row = 0;
  Score fgoe_score = 0;
  std::uint32_t depth = 0;           // rows evaluated so far
  std::uint32_t last_live_row = 0;   // rows fgoe_row..last_live_row hold live cells
  std::uint32_t limit = 0;           // columns evaluated per fork; the joint area takes the rest
  std::vector<GapColumn> columns;    // column k is query column origin_col + k
  std::vector<std::uint32_t> path;   // CPT nodes along P[origin_col, m]
};

// Gap regions opened on one row of one matrix. They share a CPT so that a
// later region copies columns its suffix shares with an earlier one.
class GapGroup {
 public:
  // With hand_over, a region keeps only the columns some later region copies
  // and leaves everything right of them to the joint area. Without it every
  // region is evaluated in full on its own.
  GapGroup(std::uint32_t row, const std::vector<FgoeEntry>& entries, const EngineConfig& cfg, bool hand_over);

  std::uint32_t row() const { return row_; }
  const std::vector<GapRegion>& regions() const { return regions_; }
  const CpTree& tree() const { return tree_; }
  // Evaluates rows up to `depth`; rows[i-1] is X[i].
  void extend(std::uint32_t depth, std::span<const Code> rows, const EngineConfig& cfg, Counters& counters);
  void truncate(std::uint32_t depth);
  bool live_at(std::uint32_t row) const;

 private:
  void extend_region(std::uint32_t w, std::uint32_t depth, std::span<const Code> rows, const EngineConfig& cfg,
                     Counters& counters);

  std::uint32_t row_;
  std::uint32_t base_col_;  // leftmost FGOE column; the column floor is taken relative to it
  CpTree tree_;
  std::vector<GapRegion> regions_;
};

struct RowEntry {
  std::uint32_t col;
  Score score;
  friend bool operator==(const RowEntry&, const RowEntry&) = default;
};

// Incremental matrix for the paths below one q-prefix: rows are appended
// while descending the suffix trie and dropped while backtracking.
class ForkMatrix {
 public:
  ForkMatrix(const EngineConfig& cfg, std::span<const std::uint32_t> origins, Counters& counters);

  std::uint32_t depth() const { return static_cast<std::uint32_t>(path_.size()); }
  const std::vector<Code>& path() const { return path_; }
  const ForkSet& forks() const { return forks_; }
  const std::vector<GapGroup>& groups() const { return groups_; }
  const JointArea& joint() const { return joint_; }

  // Adds row depth()+1 for text symbol x. Returns whether that row has a live entry.
  bool append_row(Code x);
  void truncate(std::uint32_t rows);
  void reset();
  // Best entry per column on the last row, restricted to M >= min_score.
  void last_row(Score min_score, std::vector<RowEntry>& out) const;
  void export_cells(SparseMatrix& out) const;

 private:
  const EngineConfig& cfg_;
  Counters& counters_;
  std::vector<std::uint32_t> origins_;
  std::vector<Code> path_;
  ForkSet forks_;
  std::vector<GapGroup> groups_;
  JointArea joint_;
};

// Row pass over a fixed path: diagonals only, writing them into `out`.
FgoeQueue cal_matrix_by_row(std::span<const Code> x, ForkSet& forks, SparseMatrix& out, const EngineConfig& cfg,
                            Counters& counters);
// Column pass for one same-row FGOE group over a fixed path.
void cal_matrix_by_column(std::span<const Code> x, const std::vector<FgoeEntry>& group, SparseMatrix& out,
                          const EngineConfig& cfg, Counters& counters);
SparseMatrix hybrid(std::span<const Code> x, const QGramIndex& qgrams, const EngineConfig& cfg, Counters& counters);

using RowSink = std::function<void(SaRange range, std::uint32_t depth, std::span<const RowEntry> entries)>;

struct TraverseOptions {
  bool path_sharing = true;
  Score emit_min = 1;  // smallest M handed to the sink
  bool emit_shallow = false;  // also hand over rows above q, with the gram's range
};

// Depth-first walk of the trie below `gram`, whose SA range is `range`.
void traverse_prefix_class(std::span<const Code> gram, SaRange range, std::span<const std::uint32_t> origins,
                           const FmIndex& index, const EngineConfig& cfg, const TraverseOptions& opts,
                           const RowSink& sink, Counters& counters);

}  // namespace alae
