#include "oppm/cnf.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <limits>

namespace oppm {

int CnfFormula::add_var(std::string meta) {
    const int id = ++num_vars;
    if (!meta.empty()) var_meta.emplace(id, std::move(meta));
    return id;
}

void CnfFormula::add_clause(std::vector<int> lits) {
    if (lits.empty())
        throw std::invalid_argument("add_clause: empty clause (use add_empty_clause)");
    for (int l : lits)
        if (l == 0 || l > num_vars || l < -num_vars)
            throw std::invalid_argument("add_clause: literal out of range: " + std::to_string(l));
    clauses.push_back(std::move(lits));
}

std::size_t CnfFormula::max_clause_width() const {
    std::size_t w = 0;
    for (const auto& c : clauses) w = std::max(w, c.size());
    return w;
}

bool model_satisfies(const CnfFormula& f, const std::vector<bool>& model) {
    for (const auto& clause : f.clauses) {
        bool sat = false;
        for (int l : clause) {
            const std::size_t v = static_cast<std::size_t>(l > 0 ? l : -l);
            if (v < model.size() && model[v] == (l > 0)) {
                sat = true;
                break;
            }
        }
        if (!sat) return false;
    }
    return true;
}

namespace {

constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();

// Iterative Tarjan; component ids are assigned in completion order, so an
// edge u -> v across components always sees comp[v] < comp[u].
std::vector<std::uint32_t> tarjan_scc(std::size_t n, const std::vector<std::size_t>& head,
                                      const std::vector<std::uint32_t>& adj) {
    std::vector<std::uint32_t> comp(n, kUnset), index(n, kUnset), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::uint32_t> stack;
    std::vector<std::pair<std::uint32_t, std::size_t>> call;  // node, next edge offset
    std::uint32_t next_index = 0, n_comps = 0;

    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != kUnset) continue;
        call.emplace_back(static_cast<std::uint32_t>(root), head[root]);
        index[root] = low[root] = next_index++;
        stack.push_back(static_cast<std::uint32_t>(root));
        on_stack[root] = true;
        while (!call.empty()) {
            auto& [u, ep] = call.back();
            if (ep < head[u + 1]) {
                const std::uint32_t v = adj[ep++];
                if (index[v] == kUnset) {
                    index[v] = low[v] = next_index++;
                    stack.push_back(v);
                    on_stack[v] = true;
                    call.emplace_back(v, head[v]);
                } else if (on_stack[v]) {
                    low[u] = std::min(low[u], index[v]);
                }
            } else {
                if (low[u] == index[u]) {
                    while (true) {
                        const std::uint32_t w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp[w] = n_comps;
                        if (w == u) break;
                    }
                    ++n_comps;
                }
                const std::uint32_t done = u;
                call.pop_back();
                if (!call.empty())
                    low[call.back().first] = std::min(low[call.back().first], low[done]);
            }
        }
    }
    return comp;
}

}  // namespace

SatResult solve_2sat(const CnfFormula& f) {
    const std::size_t n = static_cast<std::size_t>(f.num_vars);
    // Literal nodes: variable v true -> 2(v-1), false -> 2(v-1)+1.
    auto node = [](int lit) {
        return lit > 0 ? 2 * static_cast<std::size_t>(lit - 1)
                       : 2 * static_cast<std::size_t>(-lit - 1) + 1;
    };

    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    edges.reserve(2 * f.clauses.size());
    for (const auto& clause : f.clauses) {
        if (clause.empty()) return {};  // explicit empty clause: unsatisfiable
        if (clause.size() > 2)
            throw std::invalid_argument("solve_2sat: clause wider than 2 literals");
        const int a = clause[0];
        const int b = clause.size() == 2 ? clause[1] : clause[0];
        edges.emplace_back(static_cast<std::uint32_t>(node(-a)), static_cast<std::uint32_t>(node(b)));
        if (a != b)
            edges.emplace_back(static_cast<std::uint32_t>(node(-b)),
                               static_cast<std::uint32_t>(node(a)));
    }

    const std::size_t nn = 2 * n;
    std::vector<std::size_t> head(nn + 1, 0);
    for (const auto& [u, v] : edges) ++head[u + 1];
    for (std::size_t i = 0; i < nn; ++i) head[i + 1] += head[i];
    std::vector<std::uint32_t> adj(edges.size());
    std::vector<std::size_t> fill(head.begin(), head.end() - 1);
    for (const auto& [u, v] : edges) adj[fill[u]++] = v;

    const std::vector<std::uint32_t> comp = tarjan_scc(nn, head, adj);

    SatResult res;
    std::vector<bool> model(n + 1, false);
    for (std::size_t v = 0; v < n; ++v) {
        if (comp[2 * v] == comp[2 * v + 1]) return {};  // v equivalent to its negation
        model[v + 1] = comp[2 * v] < comp[2 * v + 1];   // true iff later in topological order
    }
    res.satisfiable = true;
    res.model = std::move(model);
    return res;
}

namespace {

// Scan-based DPLL working state; assignments are copied per branch, which is
// plenty for the desk-scale formulas this solver is asked to decide.
struct Dpll {
    const std::vector<std::vector<int>>& clauses;
    std::size_t num_vars;
    std::uint64_t max_decisions;
    std::uint64_t decisions = 0;
    std::vector<int8_t> model;  // final assignment when satisfiable

    bool solve(std::vector<int8_t> val) {
        // Unit propagation and pure-literal elimination to fixpoint.
        while (true) {
            bool changed = false, all_satisfied = true;
            for (const auto& clause : clauses) {
                int unassigned = 0;
                int unit = 0;
                bool sat = false;
                for (int l : clause) {
                    const int8_t v = val[static_cast<std::size_t>(std::abs(l))];
                    if (v == 0) {
                        ++unassigned;
                        unit = l;
                    } else if ((v > 0) == (l > 0)) {
                        sat = true;
                        break;
                    }
                }
                if (sat) continue;
                if (unassigned == 0) return false;  // conflict
                all_satisfied = false;
                if (unassigned == 1) {
                    val[static_cast<std::size_t>(std::abs(unit))] = unit > 0 ? 1 : -1;
                    changed = true;
                }
            }
            if (all_satisfied) {
                model = std::move(val);
                return true;
            }
            if (changed) continue;

            // Pure literals: variables appearing with one polarity among the
            // not-yet-satisfied clauses. Assigning them satisfies clauses
            // without ever shortening one, so no conflict can arise.
            std::vector<uint8_t> polarity(num_vars + 1, 0);  // bit0 pos, bit1 neg
            for (const auto& clause : clauses) {
                bool sat = false;
                for (int l : clause)
                    if (val[static_cast<std::size_t>(std::abs(l))] != 0 &&
                        (val[static_cast<std::size_t>(std::abs(l))] > 0) == (l > 0)) {
                        sat = true;
                        break;
                    }
                if (sat) continue;
                for (int l : clause)
                    if (val[static_cast<std::size_t>(std::abs(l))] == 0)
                        polarity[static_cast<std::size_t>(std::abs(l))] |= l > 0 ? 1 : 2;
            }
            bool assigned_pure = false;
            for (std::size_t v = 1; v <= num_vars; ++v) {
                if (val[v] != 0 || polarity[v] == 0 || polarity[v] == 3) continue;
                val[v] = polarity[v] == 1 ? 1 : -1;
                assigned_pure = true;
            }
            if (!assigned_pure) break;
        }

        std::size_t branch_var = 0;
        for (std::size_t v = 1; v <= num_vars; ++v)
            if (val[v] == 0) {
                branch_var = v;
                break;
            }
        // No unassigned variable left would mean every clause is decided,
        // which the scan above already classified.

        if (++decisions > max_decisions)
            throw BudgetExceeded("solve_dpll: decision budget exceeded");
        std::vector<int8_t> tryval = val;
        tryval[branch_var] = 1;
        if (solve(std::move(tryval))) return true;
        val[branch_var] = -1;
        return solve(std::move(val));
    }
};

}  // namespace

SatResult solve_dpll(const CnfFormula& f, std::uint64_t max_decisions) {
    Dpll engine{f.clauses, static_cast<std::size_t>(f.num_vars), max_decisions, 0, {}};
    std::vector<int8_t> val(static_cast<std::size_t>(f.num_vars) + 1, 0);
    SatResult res;
    if (engine.solve(std::move(val))) {
        res.satisfiable = true;
        std::vector<bool> model(static_cast<std::size_t>(f.num_vars) + 1, false);
        for (std::size_t v = 1; v < model.size(); ++v) model[v] = engine.model[v] > 0;
        res.model = std::move(model);
    }
    res.decisions = engine.decisions;
    return res;
}

std::string write_dimacs(const CnfFormula& f) {
    std::string out;
    for (const auto& [id, tag] : f.var_meta)
        out += "c meta " + std::to_string(id) + " " + tag + "\n";
    out += "p cnf " + std::to_string(f.num_vars) + " " + std::to_string(f.clauses.size()) + "\n";
    for (const auto& clause : f.clauses) {
        for (int l : clause) {
            out += std::to_string(l);
            out += ' ';
        }
        out += "0\n";
    }
    return out;
}

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            if (start < text.size()) lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return lines;
}

bool parse_int(std::string_view tok, long long& out) {
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc() && ptr == tok.data() + tok.size();
}

}  // namespace

CnfFormula read_dimacs(std::string_view text) {
    CnfFormula f;
    bool have_header = false;
    long long declared_clauses = 0;
    std::vector<int> current;
    bool clause_open = false;

    for (std::string_view line : split_lines(text)) {
        // Trim trailing carriage return from CRLF input.
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        if (line[0] == 'c') {
            // "c meta <id> <tag...>" round-trips variable annotations.
            std::string_view rest = line.substr(1);
            while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
            if (rest.rfind("meta ", 0) == 0) {
                rest.remove_prefix(5);
                std::size_t sp = rest.find(' ');
                long long id = 0;
                if (sp != std::string_view::npos && parse_int(rest.substr(0, sp), id))
                    f.var_meta[static_cast<int>(id)] = std::string(rest.substr(sp + 1));
            }
            continue;
        }
        if (line[0] == 'p') {
            if (have_header) throw std::invalid_argument("read_dimacs: duplicate header");
            long long nv = 0;
            // Expected form: p cnf <vars> <clauses>
            std::size_t i = 1;
            auto skip_ws = [&] { while (i < line.size() && line[i] == ' ') ++i; };
            auto take_tok = [&] {
                skip_ws();
                std::size_t b = i;
                while (i < line.size() && line[i] != ' ') ++i;
                return line.substr(b, i - b);
            };
            if (take_tok() != "cnf" || !parse_int(take_tok(), nv) ||
                !parse_int(take_tok(), declared_clauses) || nv < 0 || declared_clauses < 0)
                throw std::invalid_argument("read_dimacs: malformed header");
            f.num_vars = static_cast<int>(nv);
            have_header = true;
            continue;
        }
        if (!have_header) throw std::invalid_argument("read_dimacs: clause before header");
        // Clause literal tokens; clauses may span lines and end at 0.
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
            if (i >= line.size()) break;
            std::size_t b = i;
            while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
            long long lit = 0;
            if (!parse_int(line.substr(b, i - b), lit))
                throw std::invalid_argument("read_dimacs: bad literal token");
            if (lit == 0) {
                f.clauses.push_back(std::move(current));
                current.clear();
                clause_open = false;
            } else {
                if (lit > f.num_vars || lit < -static_cast<long long>(f.num_vars))
                    throw std::invalid_argument("read_dimacs: literal out of range: " +
                                                std::to_string(lit));
                current.push_back(static_cast<int>(lit));
                clause_open = true;
            }
        }
    }
    if (!have_header) throw std::invalid_argument("read_dimacs: missing header");
    if (clause_open) throw std::invalid_argument("read_dimacs: missing clause terminator");
    if (static_cast<long long>(f.clauses.size()) != declared_clauses)
        throw std::invalid_argument("read_dimacs: clause count mismatch with header");
    for (const auto& [id, tag] : f.var_meta)
        if (id < 1 || id > f.num_vars)
            throw std::invalid_argument("read_dimacs: meta id out of range");
    return f;
}

}  // namespace oppm
