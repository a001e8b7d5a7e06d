#include "oppm/hardness.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace oppm {

Cnf3Instance sanitize_3cnf(int num_vars, const std::vector<std::vector<int>>& raw) {
    if (num_vars < 1) throw std::invalid_argument("sanitize_3cnf: need at least one variable");
    Cnf3Instance f;
    f.num_vars = num_vars;
    for (std::size_t c = 0; c < raw.size(); ++c) {
        const auto fail = [&](const std::string& why) {
            throw std::invalid_argument("sanitize_3cnf: clause " + std::to_string(c) + ": " + why);
        };
        if (raw[c].empty()) fail("empty clause");
        if (raw[c].size() > 3) fail("more than three literals");
        std::vector<int> lits;
        bool tautology = false;
        for (int lit : raw[c]) {
            if (lit == 0) fail("zero literal");
            if (std::abs(lit) > num_vars) fail("variable out of range");
            if (std::find(lits.begin(), lits.end(), -lit) != lits.end()) tautology = true;
            if (std::find(lits.begin(), lits.end(), lit) == lits.end()) lits.push_back(lit);
        }
        if (tautology) continue;  // always satisfied; drop
        while (lits.size() < 3) lits.push_back(lits.back());  // repeats collapse in the CharSet
        Clause3 cl{};
        for (std::size_t k = 0; k < 3; ++k) {
            cl.z[k] = std::abs(lits[k]) - 1;
            cl.l[k] = lits[k] < 0 ? 1 : 0;
        }
        f.clauses.push_back(cl);
    }
    return f;
}

namespace {

void require_sanitized(const Cnf3Instance& f, const char* who) {
    if (f.num_vars < 1) throw std::invalid_argument(std::string(who) + ": need at least one variable");
    for (const Clause3& cl : f.clauses)
        for (std::size_t a = 0; a < 3; ++a) {
            if (cl.z[a] < 0 || cl.z[a] >= f.num_vars)
                throw std::invalid_argument(std::string(who) + ": variable out of range");
            if (cl.l[a] != 0 && cl.l[a] != 1)
                throw std::invalid_argument(std::string(who) + ": polarity bit out of range");
            for (std::size_t b = a + 1; b < 3; ++b)
                if (cl.z[a] == cl.z[b] && cl.l[a] != cl.l[b])
                    throw std::invalid_argument(std::string(who) +
                                                ": clause repeats a variable with opposite "
                                                "polarities; sanitize first");
        }
}

// Text-side character encoding a literal: the even value 2(v+1) stands for
// variable v true, the odd value 2(v+1)-1 for false.
Char literal_char(int var, int neg) { return 2 * (static_cast<Char>(var) + 1) - neg; }

}  // namespace

ReductionOutput reduce_3sat(const Cnf3Instance& f) {
    require_sanitized(f, "reduce_3sat");
    const std::size_t V = static_cast<std::size_t>(f.num_vars);
    std::vector<CharSet> pat, txt;
    pat.reserve(V + f.clauses.size());
    txt.reserve(V + f.clauses.size());
    for (std::size_t v = 0; v < V; ++v) {
        pat.push_back(CharSet::singleton(static_cast<Char>(v) + 1));
        txt.push_back(CharSet({2 * static_cast<Char>(v) + 1, 2 * static_cast<Char>(v) + 2}));
    }
    for (const Clause3& cl : f.clauses) {
        std::vector<Char> p, t;
        for (std::size_t k = 0; k < 3; ++k) {
            p.push_back(static_cast<Char>(cl.z[k]) + 1);
            t.push_back(literal_char(cl.z[k], cl.l[k]));
        }
        pat.push_back(CharSet(std::move(p)));
        txt.push_back(CharSet(std::move(t)));
    }
    return {IndetString(std::move(pat)), IndetString(std::move(txt)), V};
}

CnfFormula to_cnf_formula(const Cnf3Instance& f) {
    require_sanitized(f, "to_cnf_formula");
    CnfFormula out;
    out.num_vars = f.num_vars;
    for (const Clause3& cl : f.clauses) {
        std::vector<int> lits;
        for (std::size_t k = 0; k < 3; ++k) {
            const int lit = (cl.z[k] + 1) * (cl.l[k] ? -1 : 1);
            if (std::find(lits.begin(), lits.end(), lit) == lits.end()) lits.push_back(lit);
        }
        out.add_clause(std::move(lits));
    }
    return out;
}

std::vector<bool> extract_assignment(const ReductionOutput& out, const WitnessPair& witness) {
    if (!is_valid_assignment(out.pattern, witness.first) ||
        !is_valid_assignment(out.text, witness.second) ||
        !op_iso(witness.first, witness.second))
        throw std::invalid_argument("extract_assignment: witness is not a match");
    std::vector<bool> valuation(out.var_offset);
    for (std::size_t v = 0; v < out.var_offset; ++v)
        valuation[v] = witness.second[v] == 2 * (static_cast<Char>(v) + 1);
    return valuation;
}

WitnessPair inject_assignment(const Cnf3Instance& f, const std::vector<bool>& valuation) {
    require_sanitized(f, "inject_assignment");
    const std::size_t V = static_cast<std::size_t>(f.num_vars);
    if (valuation.size() != V)
        throw std::invalid_argument("inject_assignment: valuation size mismatch");
    WitnessPair w;
    for (std::size_t v = 0; v < V; ++v) {
        w.first.push_back(static_cast<Char>(v) + 1);
        w.second.push_back(literal_char(static_cast<int>(v), valuation[v] ? 0 : 1));
    }
    for (std::size_t c = 0; c < f.clauses.size(); ++c) {
        const Clause3& cl = f.clauses[c];
        std::size_t hit = 3;
        for (std::size_t k = 0; k < 3 && hit == 3; ++k)
            if (valuation[static_cast<std::size_t>(cl.z[k])] == (cl.l[k] == 0)) hit = k;
        if (hit == 3)
            throw std::invalid_argument("inject_assignment: valuation leaves clause " +
                                        std::to_string(c) + " unsatisfied");
        w.first.push_back(static_cast<Char>(cl.z[hit]) + 1);
        w.second.push_back(literal_char(cl.z[hit], cl.l[hit]));
    }
    return w;
}

}  // namespace oppm
