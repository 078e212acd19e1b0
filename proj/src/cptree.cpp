#include "alae/reuse_engine.hpp"

#include <algorithm>

namespace alae {

CpTree::CpTree(std::span<const Code> query, std::span<const std::uint32_t> columns) : query_(query) {
  nodes_.emplace_back();
  const auto m = static_cast<std::uint32_t>(query.size());
  // Bottom nodes of the fragments P[j_w, j_current - 1] inserted so far.
  std::vector<std::uint32_t> ends;
  for (std::size_t w = 0; w < columns.size(); ++w) {
    std::uint32_t begin = columns[w] - 1;
    std::uint32_t end = w + 1 < columns.size() ? columns[w + 1] - 1 : m;
    for (auto& e : ends) e = insert(e, begin, end);
    ends.push_back(insert(kRoot, begin, end));
  }
  for (std::uint32_t w = 0; w < columns.size(); ++w) {
    for (auto id : path(columns[w])) {
      if (nodes_[id].owner == UINT32_MAX) nodes_[id].owner = w;
    }
  }
}

std::uint32_t CpTree::child(std::uint32_t id, Code c) const {
  for (const auto& [sym, kid] : nodes_[id].children) {
    if (sym == c) return kid;
  }
  return UINT32_MAX;
}

std::uint32_t CpTree::insert(std::uint32_t from, std::uint32_t begin, std::uint32_t end) {
  inserted_ += end - begin;
  std::uint32_t node = from;
  std::uint32_t pos = begin;
  while (pos < end) {
    Code c = query_[pos];
    std::uint32_t kid = child(node, c);
    if (kid == UINT32_MAX) {
      CptNode leaf;
      leaf.offset = pos;
      leaf.length = end - pos;
      leaf.depth = nodes_[node].depth + leaf.length;
      nodes_.push_back(leaf);
      auto id = static_cast<std::uint32_t>(nodes_.size() - 1);
      auto& kids = nodes_[node].children;
      kids.emplace_back(c, id);
      std::sort(kids.begin(), kids.end());
      return id;
    }
    const std::uint32_t off = nodes_[kid].offset;
    const std::uint32_t len = nodes_[kid].length;
    std::uint32_t k = 0;
    while (k < len && pos + k < end && query_[off + k] == query_[pos + k]) ++k;
    if (k == len) {
      node = kid;
      pos += len;
      continue;
    }
    // Split the edge after k symbols.
    CptNode mid;
    mid.offset = off;
    mid.length = k;
    mid.depth = nodes_[node].depth + k;
    mid.children.emplace_back(query_[off + k], kid);
    nodes_.push_back(mid);
    auto mid_id = static_cast<std::uint32_t>(nodes_.size() - 1);
    nodes_[kid].offset = off + k;
    nodes_[kid].length = len - k;
    for (auto& entry : nodes_[node].children) {
      if (entry.first == c) entry.second = mid_id;
    }
    node = mid_id;
    pos += k;
  }
  return node;
}

std::vector<std::uint32_t> CpTree::path(std::uint32_t column) const {
  std::vector<std::uint32_t> out;
  const auto m = static_cast<std::uint32_t>(query_.size());
  std::uint32_t node = kRoot;
  std::uint32_t depth = 0;
  const std::uint32_t total = m - column + 1;
  while (depth < total) {
    std::uint32_t kid = child(node, query_[column - 1 + depth]);
    if (kid == UINT32_MAX) break;
    out.push_back(kid);
    node = kid;
    depth = nodes_[kid].depth;
  }
  return out;
}

bool CpTree::contains_suffix(std::uint32_t column) const {
  const auto m = static_cast<std::uint32_t>(query_.size());
  std::uint32_t node = kRoot;
  std::uint32_t depth = 0;
  const std::uint32_t total = m - column + 1;
  while (depth < total) {
    std::uint32_t kid = child(node, query_[column - 1 + depth]);
    if (kid == UINT32_MAX) return false;
    const auto& n = nodes_[kid];
    for (std::uint32_t k = 0; k < n.length; ++k) {
      if (depth + k >= total) return true;
      if (query_[n.offset + k] != query_[column - 1 + depth + k]) return false;
    }
    depth += n.length;
    node = kid;
  }
  return depth == total;
}

CpTree construct_cptree(std::span<const Code> query, std::span<const std::uint32_t> columns) {
  return CpTree(query, columns);
}

}  // namespace alae
