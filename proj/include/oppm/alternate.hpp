#pragma once

#include <optional>
#include <vector>

#include "oppm/cnf.hpp"
#include "oppm/corestr.hpp"

namespace oppm {

// Matching for alternating instances: at every position at least one of the
// two strings is determinate. These instances reduce to 2-SAT.

// Result of the simplification pass: positions sharing a determinate
// character on the same side are fused (their opposite sets intersected),
// and characters that would force an impossible equality are dropped.
struct AlternatePrep {
    bool feasible = true;
    IndetString x;  // fused instance, positions ordered by first original index
    IndetString y;
    std::vector<std::size_t> remap;  // original position -> fused position
};

// Throws std::invalid_argument unless min(|x[i]|, |y[i]|) == 1 at every
// position. A returned feasible == false means no assignment pair can be
// order-isomorphic.
AlternatePrep preprocess_alternate(const IndetString& x, const IndetString& y);

// True iff some combination of characters at the two positions is
// sign-consistent; a false pair rules out the whole instance.
bool check_pair(const IndetString& x, const IndetString& y, std::size_t alpha, std::size_t beta);

// Variable g(side, i, k): the character selected at position i of that side
// is >= the k-th smallest element of its set.
struct ThresholdKey {
    char side;  // 'x' or 'y'
    std::size_t pos;
    std::size_t level;
};

struct AlternateEncoding {
    CnfFormula formula;
    std::vector<ThresholdKey> keys;
};

struct AlternateOptions {
    // When set, pairs whose shared determinate side is known at both
    // positions are constrained only against the nearest determinate values
    // seen so far (the rest follows by transitivity) instead of exhaustively.
    bool adjacent_type2 = false;
};

// Encodes a fused alternating instance as 2-SAT. Positions with equal
// determinate characters on the same side must have been fused first;
// otherwise throws std::invalid_argument.
AlternateEncoding encode_alternate(const IndetString& x, const IndetString& y,
                                   const AlternateOptions& options = {});

// Reads the selected characters out of a satisfying model and expands them
// back to the original positions. Throws std::logic_error if the model is
// not downward closed or does not describe a match (an encoding bug).
WitnessPair extract_alternate(const AlternateEncoding& enc, const AlternatePrep& prep,
                              const std::vector<bool>& model);

// Full pipeline: simplify, screen position pairs, encode, solve, extract.
std::optional<WitnessPair> alternate_match(const IndetString& x, const IndetString& y,
                                           const AlternateOptions& options = {});

}  // namespace oppm
