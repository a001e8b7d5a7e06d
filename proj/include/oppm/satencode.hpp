#pragma once

#include <optional>
#include <vector>

#include "oppm/cnf.hpp"
#include "oppm/corestr.hpp"

namespace oppm {

// Encoding of the one-indeterminate matching problem (x determinate, y
// indeterminate) as CNF. One variable per (position, candidate character);
// a model selects one character per position such that the selection is
// order-isomorphic to x.
struct Eq1Key {
    std::size_t pos;
    Char ch;
};

struct Eq1Encoding {
    CnfFormula formula;
    std::vector<Eq1Key> keys;  // keys[v-1] describes variable v
};

Eq1Encoding encode_eq1(const IndetString& x, const IndetString& y);

// Reads the chosen character per position out of a satisfying model.
// Throws std::logic_error if the model does not describe a valid
// order-isomorphic assignment (which would indicate an encoding bug).
Assignment decode_eq1(const Eq1Encoding& enc, const IndetString& x, const IndetString& y,
                      const std::vector<bool>& model);

// Encoding of the general matching problem (both strings indeterminate).
// One variable per (position, x candidate, y candidate); a model selects a
// pair per position such that the two selections are order-isomorphic.
struct Eq2Key {
    std::size_t pos;
    Char xc;
    Char yc;
};

struct Eq2Encoding {
    CnfFormula formula;
    std::vector<Eq2Key> keys;
};

Eq2Encoding encode_eq2(const IndetString& x, const IndetString& y);

WitnessPair decode_eq2(const Eq2Encoding& enc, const IndetString& x, const IndetString& y,
                       const std::vector<bool>& model);

// Solves with the 2-SAT engine when every clause has width <= 2 and with
// DPLL otherwise.
SatResult solve_routed(const CnfFormula& f, std::uint64_t max_decisions = 1'000'000);

// End-to-end one-indeterminate match via the CNF encoding; returns the
// selected y assignment on success.
std::optional<Assignment> match_eq1(const IndetString& x, const IndetString& y);

// End-to-end general match via the CNF encoding.
std::optional<WitnessPair> match_eq2(const IndetString& x, const IndetString& y);

}  // namespace oppm
