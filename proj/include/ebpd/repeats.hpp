#pragma once

#include <cstddef>
#include <vector>

namespace ebpd::repeats {

/// Suffix array over an integer sequence (doubling construction).
std::vector<std::size_t> suffix_array(const std::vector<int>& seq);

/// Kasai longest-common-prefix array: lcp[i] is the common prefix length of
/// the suffixes at sa[i] and sa[i+1]. Empty input yields an empty array.
std::vector<std::size_t> lcp_array(const std::vector<int>& seq,
                                   const std::vector<std::size_t>& sa);

/// Suffix array + LCP array + sparse-table range minimum, giving pairwise
/// longest-common-prefix queries between arbitrary suffixes.
class SuffixIndex {
 public:
  explicit SuffixIndex(std::vector<int> seq);

  const std::vector<int>& sequence() const { return seq_; }
  const std::vector<std::size_t>& sa() const { return sa_; }
  const std::vector<std::size_t>& lcp() const { return lcp_; }

  /// Longest common prefix of the suffixes at positions i and j.
  std::size_t pair_lcp(std::size_t i, std::size_t j) const;

  /// Non-overlapping LCP: the pairwise LCP capped at the distance between
  /// the two suffix start positions.
  std::size_t nlcp(std::size_t i, std::size_t j) const;

  /// The NLCP values between consecutive suffixes of the suffix array.
  std::vector<std::size_t> nlcp_consecutive() const;

 private:
  std::vector<int> seq_;
  std::vector<std::size_t> sa_;
  std::vector<std::size_t> rank_;
  std::vector<std::size_t> lcp_;
  std::vector<std::vector<std::size_t>> sparse_;

  std::size_t range_min(std::size_t lo, std::size_t hi) const;  // [lo, hi)
};

/// A contiguous run of `repeats` adjacent copies of a period of length
/// `period`, starting at `start`.
struct Run {
  std::size_t start = 0;
  std::size_t period = 0;
  std::size_t repeats = 0;

  std::size_t length() const { return period * repeats; }
  bool operator==(const Run&) const = default;
};

/// Greedy detection of non-overlapping periodic runs: repeatedly take the
/// run with the longest total length (ties: leftmost start, then shortest
/// period), claim its region, and continue on the remaining gaps. Runs never
/// span a previously claimed region. Result is sorted by start position.
std::vector<Run> find_runs(const std::vector<int>& seq);

}  // namespace ebpd::repeats
