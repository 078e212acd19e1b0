#include "alae/suffix_array.hpp"

#include <algorithm>
#include <stdexcept>

namespace alae {

namespace {

void bucket_bounds(const std::int32_t* s, std::int32_t n, std::int32_t k, std::vector<std::int32_t>& bkt, bool ends) {
  std::fill(bkt.begin(), bkt.end(), 0);
  for (std::int32_t i = 0; i < n; ++i) ++bkt[s[i]];
  std::int32_t sum = 0;
  for (std::int32_t c = 0; c < k; ++c) {
    sum += bkt[c];
    bkt[c] = ends ? sum : sum - bkt[c];
  }
}

void sais(const std::int32_t* s, std::int32_t* sa, std::int32_t n, std::int32_t k) {
  std::vector<bool> stype(n);
  stype[n - 1] = true;
  for (std::int32_t i = n - 2; i >= 0; --i) {
    stype[i] = s[i] < s[i + 1] || (s[i] == s[i + 1] && stype[i + 1]);
  }
  auto is_lms = [&](std::int32_t i) { return i > 0 && stype[i] && !stype[i - 1]; };
  std::vector<std::int32_t> bkt(k);

  auto induce = [&] {
    bucket_bounds(s, n, k, bkt, false);
    for (std::int32_t i = 0; i < n; ++i) {
      std::int32_t j = sa[i] - 1;
      if (sa[i] > 0 && !stype[j]) sa[bkt[s[j]]++] = j;
    }
    bucket_bounds(s, n, k, bkt, true);
    for (std::int32_t i = n - 1; i >= 0; --i) {
      std::int32_t j = sa[i] - 1;
      if (sa[i] > 0 && stype[j]) sa[--bkt[s[j]]] = j;
    }
  };

  // Sort LMS substrings.
  bucket_bounds(s, n, k, bkt, true);
  std::fill(sa, sa + n, -1);
  for (std::int32_t i = 1; i < n; ++i) {
    if (is_lms(i)) sa[--bkt[s[i]]] = i;
  }
  induce();

  std::int32_t n1 = 0;
  for (std::int32_t i = 0; i < n; ++i) {
    if (is_lms(sa[i])) sa[n1++] = sa[i];
  }

  // Name them.
  std::fill(sa + n1, sa + n, -1);
  std::int32_t name = 0;
  std::int32_t prev = -1;
  for (std::int32_t i = 0; i < n1; ++i) {
    std::int32_t pos = sa[i];
    bool diff = false;
    for (std::int32_t d = 0; d < n; ++d) {
      if (prev == -1 || s[pos + d] != s[prev + d] || stype[pos + d] != stype[prev + d]) {
        diff = true;
        break;
      }
      if (d > 0 && (is_lms(pos + d) || is_lms(prev + d))) break;
    }
    if (diff) {
      ++name;
      prev = pos;
    }
    sa[n1 + pos / 2] = name - 1;
  }
  for (std::int32_t i = n - 1, j = n - 1; i >= n1; --i) {
    if (sa[i] >= 0) sa[j--] = sa[i];
  }

  // Sort the reduced problem.
  std::int32_t* s1 = sa + n - n1;
  std::int32_t* sa1 = sa;
  if (name < n1) {
    sais(s1, sa1, n1, name);
  } else {
    for (std::int32_t i = 0; i < n1; ++i) sa1[s1[i]] = i;
  }

  // Induce the full order from sorted LMS suffixes.
  bucket_bounds(s, n, k, bkt, true);
  for (std::int32_t i = 1, j = 0; i < n; ++i) {
    if (is_lms(i)) s1[j++] = i;
  }
  for (std::int32_t i = 0; i < n1; ++i) sa1[i] = s1[sa1[i]];
  std::fill(sa + n1, sa + n, -1);
  for (std::int32_t i = n1 - 1; i >= 0; --i) {
    std::int32_t j = sa[i];
    sa[i] = -1;
    sa[--bkt[s[j]]] = j;
  }
  induce();
}

}  // namespace

std::vector<std::int32_t> build_suffix_array(std::span<const std::int32_t> text, std::int32_t alphabet_size) {
  if (text.empty() || text.back() != 0) throw std::invalid_argument("text must end with sentinel 0");
  if (text.size() > static_cast<std::size_t>(INT32_MAX)) throw std::length_error("text too long");
  auto n = static_cast<std::int32_t>(text.size());
  std::vector<std::int32_t> sa(n);
  if (n == 1) {
    sa[0] = 0;
    return sa;
  }
  sais(text.data(), sa.data(), n, alphabet_size);
  return sa;
}

}  // namespace alae
