#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "oppm/corestr.hpp"

namespace oppm {

inline constexpr std::uint64_t kDefaultOracleBudget = 10'000'000;

/// Brute-force match check: enumerate every assignment pair and test
/// order-isomorphism. No pruning; the reference for everything else.
/// Enumeration is position-major with characters ascending, first string
/// outermost, so the returned witness is the lexicographically first pair.
/// Throws BudgetExceeded when the pair count exceeds the budget.
std::optional<WitnessPair> oracle_match(const IndetString& x, const IndetString& y,
                                        std::uint64_t budget = kDefaultOracleBudget);

/// Brute-force search: oracle_match against every window of t.
std::vector<std::size_t> oracle_search(const IndetString& p, const IndetString& t,
                                       std::uint64_t budget = kDefaultOracleBudget);

enum class GenMode { Determinate, OneIndet, BothIndet, Alternate };

struct InstanceGenSpec {
    std::size_t m = 1;
    std::size_t r_max = 1;
    Char alphabet_size = 1;  // characters drawn from 0 .. alphabet_size-1
    std::uint64_t seed = 0;
    GenMode mode = GenMode::Determinate;
};

/// Deterministic instance generator: the same parameters always yield the
/// same pair. OneIndet leaves the second string determinate; Alternate never puts
/// indeterminacy at the same index in both strings.
std::pair<IndetString, IndetString> gen_instance(const InstanceGenSpec& spec);

}  // namespace oppm
