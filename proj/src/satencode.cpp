#include "oppm/satencode.hpp"

#include <stdexcept>
#include <string>

#include "oppm/orderctx.hpp"

namespace oppm {

namespace {

void require_same_length(const IndetString& x, const IndetString& y, const char* who) {
    if (x.length() == 0) throw std::invalid_argument(std::string(who) + ": empty pattern");
    if (x.length() != y.length())
        throw std::invalid_argument(std::string(who) + ": length mismatch");
}

}  // namespace

Eq1Encoding encode_eq1(const IndetString& x, const IndetString& y) {
    require_same_length(x, y, "encode_eq1");
    if (!x.is_determinate())
        throw std::invalid_argument("encode_eq1: first string must be determinate");
    const std::size_t m = x.length();

    Eq1Encoding enc;
    // var(i, j) selects the j-th candidate character of y[i].
    std::vector<std::size_t> base(m);
    for (std::size_t i = 0; i < m; ++i) {
        base[i] = enc.keys.size();
        for (Char c : y[i].chars()) {
            enc.formula.add_var("z i=" + std::to_string(i) + " y=" + std::to_string(c));
            enc.keys.push_back({i, c});
        }
    }
    auto var = [&](std::size_t i, std::size_t j) {
        return static_cast<int>(base[i] + j + 1);
    };

    // At least one character is selected at every position.
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<int> clause;
        for (std::size_t j = 0; j < y[i].size(); ++j) clause.push_back(var(i, j));
        enc.formula.add_clause(std::move(clause));
    }

    // Conflict clauses: where x relates position i to an earlier position k
    // (equal / largest smaller / smallest larger), the selected characters of
    // y must satisfy the same relation; every violating combination is
    // forbidden pairwise.
    const DetOrderContext ctx = det_context(x);
    auto forbid = [&](std::size_t i, std::size_t k, auto violates) {
        for (std::size_t j = 0; j < y[i].size(); ++j)
            for (std::size_t l = 0; l < y[k].size(); ++l)
                if (violates(y[i][j], y[k][l]))
                    enc.formula.add_clause({-var(i, j), -var(k, l)});
    };
    for (std::size_t i = 0; i < m; ++i) {
        if (ctx.leq[i])
            forbid(i, *ctx.leq[i], [](Char c, Char d) { return c != d; });
        if (ctx.lmax[i])
            forbid(i, *ctx.lmax[i], [](Char c, Char d) { return c <= d; });
        if (ctx.lmin[i])
            forbid(i, *ctx.lmin[i], [](Char c, Char d) { return c >= d; });
    }
    return enc;
}

Assignment decode_eq1(const Eq1Encoding& enc, const IndetString& x, const IndetString& y,
                      const std::vector<bool>& model) {
    const std::size_t m = y.length();
    Assignment out(m);
    std::vector<bool> chosen(m, false);
    for (std::size_t v = 0; v < enc.keys.size(); ++v) {
        if (v + 1 >= model.size() || !model[v + 1]) continue;
        const Eq1Key& key = enc.keys[v];
        if (!chosen[key.pos]) {
            chosen[key.pos] = true;
            out[key.pos] = key.ch;
        }
    }
    for (std::size_t i = 0; i < m; ++i)
        if (!chosen[i]) throw std::logic_error("decode_eq1: no character selected at a position");
    if (!is_valid_assignment(y, out) || !op_iso(x.as_assignment(), out))
        throw std::logic_error("decode_eq1: model does not describe an order-isomorphic match");
    return out;
}

Eq2Encoding encode_eq2(const IndetString& x, const IndetString& y) {
    require_same_length(x, y, "encode_eq2");
    const std::size_t m = x.length();

    Eq2Encoding enc;
    std::vector<std::size_t> base(m);
    for (std::size_t i = 0; i < m; ++i) {
        base[i] = enc.keys.size();
        for (Char a : x[i].chars())
            for (Char b : y[i].chars()) {
                enc.formula.add_var("z i=" + std::to_string(i) + " x=" + std::to_string(a) +
                                    " y=" + std::to_string(b));
                enc.keys.push_back({i, a, b});
            }
    }
    auto var = [&](std::size_t i, std::size_t j) {
        return static_cast<int>(base[i] + j + 1);
    };

    for (std::size_t i = 0; i < m; ++i) {
        std::vector<int> clause;
        const std::size_t combos = x[i].size() * y[i].size();
        for (std::size_t j = 0; j < combos; ++j) clause.push_back(var(i, j));
        enc.formula.add_clause(std::move(clause));
    }

    // Forbid every pair of selections whose x characters and y characters
    // compare differently.
    auto sign3 = [](Char a, Char b) { return a < b ? -1 : a > b ? 1 : 0; };
    for (std::size_t i = 1; i < m; ++i) {
        const std::size_t ni = x[i].size() * y[i].size();
        for (std::size_t k = 0; k < i; ++k) {
            const std::size_t nk = x[k].size() * y[k].size();
            for (std::size_t j = 0; j < ni; ++j) {
                const Eq2Key& ki = enc.keys[base[i] + j];
                for (std::size_t l = 0; l < nk; ++l) {
                    const Eq2Key& kk = enc.keys[base[k] + l];
                    if (sign3(ki.xc, kk.xc) != sign3(ki.yc, kk.yc))
                        enc.formula.add_clause({-var(i, j), -var(k, l)});
                }
            }
        }
    }
    return enc;
}

WitnessPair decode_eq2(const Eq2Encoding& enc, const IndetString& x, const IndetString& y,
                       const std::vector<bool>& model) {
    const std::size_t m = x.length();
    WitnessPair out{Assignment(m), Assignment(m)};
    std::vector<bool> chosen(m, false);
    for (std::size_t v = 0; v < enc.keys.size(); ++v) {
        if (v + 1 >= model.size() || !model[v + 1]) continue;
        const Eq2Key& key = enc.keys[v];
        if (!chosen[key.pos]) {
            chosen[key.pos] = true;
            out.first[key.pos] = key.xc;
            out.second[key.pos] = key.yc;
        }
    }
    for (std::size_t i = 0; i < m; ++i)
        if (!chosen[i]) throw std::logic_error("decode_eq2: no pair selected at a position");
    if (!is_valid_assignment(x, out.first) || !is_valid_assignment(y, out.second) ||
        !op_iso(out.first, out.second))
        throw std::logic_error("decode_eq2: model does not describe an order-isomorphic match");
    return out;
}

SatResult solve_routed(const CnfFormula& f, std::uint64_t max_decisions) {
    if (f.max_clause_width() <= 2) return solve_2sat(f);
    return solve_dpll(f, max_decisions);
}

std::optional<Assignment> match_eq1(const IndetString& x, const IndetString& y) {
    const Eq1Encoding enc = encode_eq1(x, y);
    const SatResult res = solve_routed(enc.formula);
    if (!res.satisfiable) return std::nullopt;
    return decode_eq1(enc, x, y, *res.model);
}

std::optional<WitnessPair> match_eq2(const IndetString& x, const IndetString& y) {
    const Eq2Encoding enc = encode_eq2(x, y);
    // The general encoding is not 2-CNF in any interesting case; always DPLL.
    const SatResult res = solve_dpll(enc.formula);
    if (!res.satisfiable) return std::nullopt;
    return decode_eq2(enc, x, y, *res.model);
}

}  // namespace oppm
