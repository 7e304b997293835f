#include "ebpd/repeats.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace ebpd::repeats {

std::vector<std::size_t> suffix_array(const std::vector<int>& seq) {
  const std::size_t n = seq.size();
  std::vector<std::size_t> sa(n), rank(n), tmp(n);
  std::iota(sa.begin(), sa.end(), 0);

  std::vector<int> normalized = seq;
  {
    std::vector<int> sorted = seq;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (std::size_t i = 0; i < n; ++i)
      normalized[i] = static_cast<int>(
          std::lower_bound(sorted.begin(), sorted.end(), seq[i]) - sorted.begin());
  }
  for (std::size_t i = 0; i < n; ++i) rank[i] = static_cast<std::size_t>(normalized[i]);

  for (std::size_t len = 1;; len *= 2) {
    auto key = [&](std::size_t i) {
      return std::make_pair(rank[i], i + len < n ? rank[i + len] + 1 : 0);
    };
    std::sort(sa.begin(), sa.end(),
              [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
    tmp.assign(n, 0);
    for (std::size_t i = 1; i < n; ++i)
      tmp[sa[i]] = tmp[sa[i - 1]] + (key(sa[i - 1]) < key(sa[i]) ? 1 : 0);
    rank = tmp;
    if (n == 0 || rank[sa.back()] == n - 1) break;
  }
  return sa;
}

std::vector<std::size_t> lcp_array(const std::vector<int>& seq,
                                   const std::vector<std::size_t>& sa) {
  const std::size_t n = seq.size();
  if (n == 0) return {};
  std::vector<std::size_t> rank(n), lcp(n > 0 ? n - 1 : 0, 0);
  for (std::size_t i = 0; i < n; ++i) rank[sa[i]] = i;
  std::size_t h = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (rank[i] + 1 == n) {
      h = 0;
      continue;
    }
    std::size_t j = sa[rank[i] + 1];
    while (i + h < n && j + h < n && seq[i + h] == seq[j + h]) ++h;
    lcp[rank[i]] = h;
    if (h > 0) --h;
  }
  return lcp;
}

SuffixIndex::SuffixIndex(std::vector<int> seq) : seq_(std::move(seq)) {
  sa_ = suffix_array(seq_);
  lcp_ = lcp_array(seq_, sa_);
  rank_.assign(seq_.size(), 0);
  for (std::size_t i = 0; i < sa_.size(); ++i) rank_[sa_[i]] = i;

  // Sparse table over the LCP array.
  const std::size_t m = lcp_.size();
  sparse_.clear();
  if (m > 0) {
    sparse_.push_back(lcp_);
    for (std::size_t k = 1; (1ULL << k) <= m; ++k) {
      const auto& prev = sparse_.back();
      std::vector<std::size_t> row(m - (1ULL << k) + 1);
      for (std::size_t i = 0; i < row.size(); ++i)
        row[i] = std::min(prev[i], prev[i + (1ULL << (k - 1))]);
      sparse_.push_back(std::move(row));
    }
  }
}

std::size_t SuffixIndex::range_min(std::size_t lo, std::size_t hi) const {
  const std::size_t width = hi - lo;
  const std::size_t k = static_cast<std::size_t>(std::bit_width(width) - 1);
  return std::min(sparse_[k][lo], sparse_[k][hi - (1ULL << k)]);
}

std::size_t SuffixIndex::pair_lcp(std::size_t i, std::size_t j) const {
  if (i == j) return seq_.size() - i;
  std::size_t a = rank_[i], b = rank_[j];
  if (a > b) std::swap(a, b);
  return range_min(a, b);
}

std::size_t SuffixIndex::nlcp(std::size_t i, std::size_t j) const {
  const std::size_t gap = i < j ? j - i : i - j;
  return std::min(pair_lcp(i, j), gap);
}

std::vector<std::size_t> SuffixIndex::nlcp_consecutive() const {
  std::vector<std::size_t> out(lcp_.size());
  for (std::size_t i = 0; i < lcp_.size(); ++i) {
    const std::size_t gap = sa_[i] < sa_[i + 1] ? sa_[i + 1] - sa_[i] : sa_[i] - sa_[i + 1];
    out[i] = std::min(lcp_[i], gap);
  }
  return out;
}

namespace {

// Maximal repeat count of the period [s, s+p) inside [s, limit): adjacent
// copies are confirmed by NLCP(s+k*p, s+(k+1)*p) == p.
std::size_t repeats_within(const SuffixIndex& idx, std::size_t s, std::size_t p,
                           std::size_t limit) {
  std::size_t r = 1;
  while (s + (r + 1) * p <= limit && idx.nlcp(s + (r - 1) * p, s + r * p) == p) ++r;
  return r;
}

}  // namespace

std::vector<Run> find_runs(const std::vector<int>& seq) {
  const std::size_t n = seq.size();
  std::vector<Run> out;
  if (n < 2) return out;

  SuffixIndex idx(seq);

  // Unclaimed gaps, rescanned after each claim. Sequences here are short
  // (plans), so the quadratic scan per round is fine.
  std::vector<std::pair<std::size_t, std::size_t>> gaps{{0, n}};
  while (true) {
    bool found = false;
    Run best;
    for (const auto& [lo, hi] : gaps) {
      const std::size_t len = hi - lo;
      for (std::size_t p = 1; 2 * p <= len; ++p) {
        for (std::size_t s = lo; s + 2 * p <= hi; ++s) {
          const std::size_t r = repeats_within(idx, s, p, hi);
          if (r < 2) continue;
          const Run cand{s, p, r};
          // Longest run wins; ties go to the leftmost start, then the
          // shortest (fundamental) period.
          const bool better =
              !found || cand.length() > best.length() ||
              (cand.length() == best.length() &&
               (cand.start < best.start ||
                (cand.start == best.start && cand.period < best.period)));
          if (better) best = cand;
          found = true;
        }
      }
    }
    if (!found) break;
    out.push_back(best);
    std::vector<std::pair<std::size_t, std::size_t>> next;
    for (const auto& [lo, hi] : gaps) {
      if (best.start >= hi || best.start + best.length() <= lo) {
        next.emplace_back(lo, hi);
        continue;
      }
      if (best.start > lo) next.emplace_back(lo, best.start);
      if (best.start + best.length() < hi) next.emplace_back(best.start + best.length(), hi);
    }
    gaps = std::move(next);
  }

  std::sort(out.begin(), out.end(),
            [](const Run& a, const Run& b) { return a.start < b.start; });
  return out;
}

}  // namespace ebpd::repeats
