#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "oppm/corestr.hpp"

namespace oppm {

/// Stable permutation putting a determinate string's characters in
/// non-decreasing order; equal characters keep ascending position order.
std::vector<std::size_t> sorted_indexes(const IndetString& x);

/// Positions of x with equal characters are grouped (following pi) and the
/// other string's candidate sets are intersected within each group.
struct GroupedString {
    /// Per group, the surviving candidate characters, ascending. A group may
    /// be empty, in which case no match is possible.
    std::vector<std::vector<Char>> groups;
    /// Per group, the half-open [begin, end) range of pi indexes it covers.
    std::vector<std::pair<std::size_t, std::size_t>> group_spans;
};

GroupedString group_and_intersect(const IndetString& x, const IndetString& y,
                                  const std::vector<std::size_t>& pi);

/// Does indeterminate y op-match determinate x? Sorts x, intersects y's sets
/// within equal-character groups, then greedily picks the smallest usable
/// character per group, left to right. Returns a witness for y on success.
std::optional<Assignment> verify_greedy(const IndetString& x, const IndetString& y);

/// Same verdict via a longest-strictly-increasing-subsequence length test:
/// concatenate each group's characters in descending order; a match exists
/// iff the LIS picks exactly one character from every group.
bool verify_lis(const IndetString& x, const IndetString& y);

/// The sequence the LIS check runs on (exposed for inspection).
std::vector<Char> lis_sequence(const GroupedString& g);
/// Patience length of the longest strictly increasing subsequence.
std::size_t lis_strict_length(const std::vector<Char>& z);

}  // namespace oppm
