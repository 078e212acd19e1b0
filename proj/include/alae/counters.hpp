#pragma once

#include <cstdint>

namespace alae {

struct Counters {
  std::uint64_t calculated = 0;
  std::uint64_t reused = 0;
  std::uint64_t baseline_calculated = 0;
  std::uint64_t weighted_cost = 0;
  std::uint64_t baseline_weighted_cost = 0;
  std::uint64_t pruned_forks = 0;
  std::uint64_t dominated_forks = 0;
  std::uint64_t gmatrix_skipped_forks = 0;
  std::uint64_t trie_nodes = 0;

  std::uint64_t accessed() const { return calculated + reused; }

  Counters& operator+=(const Counters& o) {
    calculated += o.calculated;
    reused += o.reused;
    baseline_calculated += o.baseline_calculated;
    weighted_cost += o.weighted_cost;
    baseline_weighted_cost += o.baseline_weighted_cost;
    pruned_forks += o.pruned_forks;
    dominated_forks += o.dominated_forks;
    gmatrix_skipped_forks += o.gmatrix_skipped_forks;
    trie_nodes += o.trie_nodes;
    return *this;
  }
  friend bool operator==(const Counters&, const Counters&) = default;
};

}  // namespace alae
