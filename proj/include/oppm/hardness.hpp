#pragma once

#include <array>
#include <vector>

#include "oppm/cnf.hpp"
#include "oppm/corestr.hpp"

namespace oppm {

// A 3CNF clause: variable indices z (0-based) with polarity bits l
// (0 = positive, 1 = negated). Clauses with fewer than three distinct
// literals repeat one of them; a repeat carries the same polarity.
struct Clause3 {
    std::array<int, 3> z;
    std::array<int, 3> l;
    bool operator==(const Clause3&) const = default;
};

struct Cnf3Instance {
    int num_vars = 0;
    std::vector<Clause3> clauses;
};

// The matching instance a 3CNF formula reduces to. Variable positions come
// first (pattern {v+1}, text {2v+1, 2v+2}), then one position per clause
// (pattern: its variables, text: one character per literal, even when the
// literal is positive).
struct ReductionOutput {
    IndetString pattern;
    IndetString text;
    std::size_t var_offset = 0;  // number of variable positions
};

// Normalizes raw clauses of 1-based signed literals: deduplicates repeated
// literals, drops tautological clauses, pads short clauses by repeating a
// literal. Throws std::invalid_argument on an empty clause, more than three
// literals, or a variable outside 1..num_vars.
Cnf3Instance sanitize_3cnf(int num_vars, const std::vector<std::vector<int>>& raw);

// Builds the matching instance. Requires num_vars >= 1 and sanitized
// clauses: a variable repeated within a clause with opposite polarities
// throws std::invalid_argument.
ReductionOutput reduce_3sat(const Cnf3Instance& f);

// The same formula as a general CNF (for the DPLL solver); padded repeats
// collapse to one literal per clause.
CnfFormula to_cnf_formula(const Cnf3Instance& f);

// Reads a variable valuation off a match witness: variable v is true iff
// the text-side character at position v is the even (larger) alternative.
// Throws std::invalid_argument unless the witness is a valid
// order-isomorphic assignment pair for (pattern, text).
std::vector<bool> extract_assignment(const ReductionOutput& out, const WitnessPair& witness);

// Builds the canonical match witness induced by a satisfying valuation:
// each clause position picks its first satisfied literal. Throws
// std::invalid_argument if the valuation does not satisfy the formula.
WitnessPair inject_assignment(const Cnf3Instance& f, const std::vector<bool>& valuation);

}  // namespace oppm
