#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "oppm/corestr.hpp"
#include "oppm/oracle.hpp"

namespace oppm {

// Ternary relation between adjacent positions: ONE when every choice
// ascends, ZERO when every choice stays level or descends, STAR otherwise.
enum class TriBit : unsigned char { Zero = 0, One = 1, Star = 2 };

using EncodedString = std::vector<TriBit>;

// Length m-1 encoding of an m-length string; length-1 strings have no
// encoding and bypass filtering. Throws std::invalid_argument when |s| < 2.
EncodedString encode_binary(const IndetString& s);

// All alignments i such that p_enc[k] and t_enc[i+k] are compatible (equal
// or either STAR) for every k. Bit-parallel shift-and when the pattern fits
// a machine word, naive scan with early abort otherwise.
// Throws std::invalid_argument when p_enc is empty or longer than t_enc.
std::vector<std::size_t> wildcard_match(const EncodedString& p_enc, const EncodedString& t_enc);

enum class Method {
    Auto,       // route each window by its shape
    Greedy,     // requires one determinate side
    Lis,        // reference check, verdict only, one determinate side
    Eq1,        // CNF encoding, one determinate side
    Eq2,        // general CNF encoding
    Alternate,  // 2-SAT pipeline, requires alternation per window
    Naive,      // Auto routing with filtering disabled
    Oracle,     // exhaustive assignment enumeration
};

struct SearchStats {
    std::uint64_t windows_total = 0;
    std::uint64_t candidates_after_filter = 0;
    std::uint64_t verified_matches = 0;
};

struct VerifyOutcome {
    bool match = false;
    std::optional<WitnessPair> witness;  // absent for verdict-only methods
};

// Decides whether two equal-length strings op-match using the selected
// method. Throws std::invalid_argument on length or shape mismatch (for
// example, greedy with both sides indeterminate).
VerifyOutcome verify_match(const IndetString& x, const IndetString& y, Method method,
                           std::uint64_t oracle_budget = kDefaultOracleBudget);

struct WindowMatch {
    std::size_t start = 0;
    std::optional<WitnessPair> witness;
};

struct MatchReport {
    SearchStats stats;
    std::vector<WindowMatch> matches;  // ascending start positions
};

struct SearchOptions {
    Method method = Method::Auto;
    bool use_filter = true;
    std::uint64_t oracle_budget = kDefaultOracleBudget;
};

// Incremental search: text positions are fed one at a time and matches are
// reported as their window completes. State stays O(m·r): the last m
// character sets plus the encoded-comparison automaton.
class StreamSearcher {
public:
    explicit StreamSearcher(IndetString pattern, SearchOptions options = {});

    // Consumes the next text position; returns the match of the window
    // ending here, if it is one.
    std::optional<WindowMatch> push(const CharSet& next);

    const SearchStats& stats() const { return stats_; }
    std::size_t positions_consumed() const { return consumed_; }

private:
    bool candidate_after_bit(TriBit bit);

    IndetString pattern_;
    SearchOptions opts_;
    EncodedString p_enc_;
    bool filtering_ = false;
    bool word_sized_ = false;
    std::array<std::uint64_t, 3> masks_{};
    std::uint64_t state_ = 0;
    std::deque<CharSet> window_;
    std::deque<TriBit> enc_window_;  // wide-pattern fallback
    std::size_t consumed_ = 0;
    SearchStats stats_;
};

// Finds every window of t that op-matches p. With use_filter, only windows
// whose ternary encodings are compatible are verified; without, every
// window is verified. Throws std::invalid_argument when p is empty, longer
// than t, or shaped wrongly for the method.
MatchReport search(const IndetString& p, const IndetString& t, const SearchOptions& options = {});

}  // namespace oppm
