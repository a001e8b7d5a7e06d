#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace oppm {

using Char = std::int64_t;

/// A concrete choice of one character per position.
using Assignment = std::vector<Char>;

/// A pair of assignments, one per string; used for match witnesses.
using WitnessPair = std::pair<Assignment, Assignment>;

/// Thrown when an operation with a configurable work budget would exceed it.
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One position of an indeterminate string: a nonempty set of candidate
/// characters, kept sorted ascending and deduplicated.
class CharSet {
public:
    explicit CharSet(std::vector<Char> chars);
    static CharSet singleton(Char c) { return CharSet({c}); }

    const std::vector<Char>& chars() const { return chars_; }
    std::size_t size() const { return chars_.size(); }
    bool is_singleton() const { return chars_.size() == 1; }
    Char min() const { return chars_.front(); }
    Char max() const { return chars_.back(); }
    Char operator[](std::size_t k) const { return chars_[k]; }
    bool contains(Char c) const;

    auto begin() const { return chars_.begin(); }
    auto end() const { return chars_.end(); }
    bool operator==(const CharSet&) const = default;

private:
    std::vector<Char> chars_;
};

/// A sequence of character sets. Determinate iff every position is a
/// singleton. Immutable after construction.
class IndetString {
public:
    IndetString() = default;
    explicit IndetString(std::vector<CharSet> positions) : positions_(std::move(positions)) {}
    static IndetString determinate(const Assignment& values);

    std::size_t length() const { return positions_.size(); }
    bool empty() const { return positions_.empty(); }
    const CharSet& operator[](std::size_t i) const { return positions_[i]; }
    const std::vector<CharSet>& positions() const { return positions_; }

    bool is_determinate() const;
    /// Largest per-position set size (the indeterminacy degree r).
    std::size_t max_indeterminacy() const;
    IndetString window(std::size_t start, std::size_t len) const;
    /// The unique assignment of a determinate string.
    Assignment as_assignment() const;

    auto begin() const { return positions_.begin(); }
    auto end() const { return positions_.end(); }
    bool operator==(const IndetString&) const = default;

private:
    std::vector<CharSet> positions_;
};

/// True iff a picks one candidate character per position of s.
bool is_valid_assignment(const IndetString& s, const Assignment& a);

/// Textual format: positions separated by whitespace or commas, alternatives
/// within a position separated by '|', characters as signed base-10 integers.
IndetString parse_string(std::string_view text);
std::string serialize_string(const IndetString& s);

/// Order-isomorphism: x[i] <= x[j] iff y[i] <= y[j] for all pairs i, j.
/// One pass over the co-sorted ranks of x.
bool op_iso(const Assignment& x, const Assignment& y);

}  // namespace oppm
