#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oppm/corestr.hpp"

namespace oppm {

/// CNF over variables 1..num_vars; literals are signed variable ids.
struct CnfFormula {
    int num_vars = 0;
    std::vector<std::vector<int>> clauses;
    /// Optional per-variable annotation, round-tripped through DIMACS as
    /// "c meta <id> <tag>" comment lines.
    std::map<int, std::string> var_meta;

    /// Registers a fresh variable and returns its id.
    int add_var(std::string meta = {});
    /// Appends a clause; literals must reference registered variables.
    void add_clause(std::vector<int> lits);
    /// Appends an explicitly empty clause (an unsatisfiability witness).
    void add_empty_clause() { clauses.emplace_back(); }

    std::size_t max_clause_width() const;
};

struct SatResult {
    bool satisfiable = false;
    /// Indexed by variable id (slot 0 unused); present iff satisfiable.
    std::optional<std::vector<bool>> model;
    std::uint64_t decisions = 0;  // DPLL branch count (0 for the 2SAT solver)
};

bool model_satisfies(const CnfFormula& f, const std::vector<bool>& model);

/// Implication-graph 2SAT: strongly connected components in linear time; a
/// variable sharing a component with its negation refutes the formula, else
/// the reverse topological order of components yields a model. Clauses of
/// width 1 act as (l v l); clauses wider than 2 are rejected.
SatResult solve_2sat(const CnfFormula& f);

/// Complete DPLL with unit propagation and pure-literal elimination.
/// Branches on the lowest-id unassigned variable, trying true first. Throws
/// BudgetExceeded past max_decisions branch points.
SatResult solve_dpll(const CnfFormula& f, std::uint64_t max_decisions = 1'000'000);

std::string write_dimacs(const CnfFormula& f);
CnfFormula read_dimacs(std::string_view text);

}  // namespace oppm
