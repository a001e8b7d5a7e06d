#include "oppm/alternate.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace oppm {

namespace {

void require_alternating(const IndetString& x, const IndetString& y, const char* who) {
    if (x.length() == 0) throw std::invalid_argument(std::string(who) + ": empty strings");
    if (x.length() != y.length())
        throw std::invalid_argument(std::string(who) + ": length mismatch");
    for (std::size_t i = 0; i < x.length(); ++i)
        if (!x[i].is_singleton() && !y[i].is_singleton())
            throw std::invalid_argument(std::string(who) +
                                        ": both sides indeterminate at position " +
                                        std::to_string(i));
}

struct Group {
    std::vector<Char> x, y;          // sorted candidate sets
    std::vector<std::size_t> members;  // original positions, ascending
};

bool erase_char(std::vector<Char>& set, Char c) {
    auto it = std::lower_bound(set.begin(), set.end(), c);
    if (it == set.end() || *it != c) return false;
    set.erase(it);
    return true;
}

// Fuses all groups sharing a determinate character in `side`, intersecting
// the opposite sets. Returns false on an empty intersection, sets `changed`
// when any fusion happened.
bool fuse_equal_determinate(std::vector<Group>& groups, std::vector<Char> Group::* side,
                            std::vector<Char> Group::* other, bool& changed) {
    std::map<Char, std::size_t> first_with;  // determinate value -> group index
    for (std::size_t g = 0; g < groups.size(); ++g) {
        if ((groups[g].*side).size() != 1) continue;
        const Char v = (groups[g].*side).front();
        auto [it, inserted] = first_with.emplace(v, g);
        if (inserted) continue;
        Group& dst = groups[it->second];
        Group& src = groups[g];
        std::vector<Char> merged;
        std::set_intersection((dst.*other).begin(), (dst.*other).end(), (src.*other).begin(),
                              (src.*other).end(), std::back_inserter(merged));
        if (merged.empty()) return false;
        dst.*other = std::move(merged);
        dst.members.insert(dst.members.end(), src.members.begin(), src.members.end());
        std::sort(dst.members.begin(), dst.members.end());
        groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(g));
        changed = true;
        --g;
        // Re-resolve indexes shifted by the erase.
        first_with.clear();
        for (std::size_t h = 0; h <= g; ++h)
            if ((groups[h].*side).size() == 1) first_with.emplace((groups[h].*side).front(), h);
    }
    return true;
}

}  // namespace

AlternatePrep preprocess_alternate(const IndetString& x, const IndetString& y) {
    require_alternating(x, y, "preprocess_alternate");
    const std::size_t m = x.length();

    std::vector<Group> groups(m);
    for (std::size_t i = 0; i < m; ++i)
        groups[i] = {x[i].chars(), y[i].chars(), {i}};

    AlternatePrep prep;
    for (bool changed = true; changed;) {
        changed = false;
        if (!fuse_equal_determinate(groups, &Group::x, &Group::y, changed) ||
            !fuse_equal_determinate(groups, &Group::y, &Group::x, changed)) {
            prep.feasible = false;
            return prep;
        }
        // One-sided equality pruning: take positions P (x determinate a,
        // y open) and Q (y determinate b, x open). Selecting a at Q forces
        // b at P and vice versa, so if only one of the two is available the
        // equality can never be realized and that character is dead.
        for (Group& p : groups) {
            if (p.x.size() != 1 || p.y.size() <= 1) continue;
            const Char a = p.x.front();
            for (Group& q : groups) {
                // An erase below can make p determinate mid-scan; stop pruning
                // against it then — the fuse pass owns determinate equalities.
                if (p.y.size() <= 1) break;
                if (q.y.size() != 1 || q.x.size() <= 1) continue;
                const Char b = q.y.front();
                const bool a_in_qx = std::binary_search(q.x.begin(), q.x.end(), a);
                const bool b_in_py = std::binary_search(p.y.begin(), p.y.end(), b);
                if (a_in_qx == b_in_py) continue;
                changed = true;
                if (a_in_qx)
                    erase_char(q.x, a);
                else
                    erase_char(p.y, b);
            }
        }
    }

    std::sort(groups.begin(), groups.end(),
              [](const Group& a, const Group& b) { return a.members.front() < b.members.front(); });
    std::vector<CharSet> px, py;
    prep.remap.resize(m);
    for (std::size_t g = 0; g < groups.size(); ++g) {
        px.push_back(CharSet(groups[g].x));
        py.push_back(CharSet(groups[g].y));
        for (std::size_t pos : groups[g].members) prep.remap[pos] = g;
    }
    prep.x = IndetString(std::move(px));
    prep.y = IndetString(std::move(py));
    return prep;
}

bool check_pair(const IndetString& x, const IndetString& y, std::size_t alpha, std::size_t beta) {
    auto sign3 = [](Char a, Char b) { return a < b ? -1 : a > b ? 1 : 0; };
    for (Char xa : x[alpha])
        for (Char xb : x[beta])
            for (Char ya : y[alpha])
                for (Char yb : y[beta])
                    if (sign3(xa, xb) == sign3(ya, yb)) return true;
    return false;
}

namespace {

// A threshold literal that may have collapsed to a constant: level 0 is
// forced true, and a threshold past the top of the set is plainly false.
struct ELit {
    enum Kind { kFalse, kTrue, kVar } kind;
    int var = 0;  // meaningful for kVar; positive id, sign carried separately
    bool negated = false;
};

ELit negate(ELit l) {
    switch (l.kind) {
        case ELit::kFalse: return {ELit::kTrue, 0, false};
        case ELit::kTrue: return {ELit::kFalse, 0, false};
        default: l.negated = !l.negated; return l;
    }
}

class PairEmitter {
public:
    explicit PairEmitter(CnfFormula& f) : formula_(f) {}

    // Adds L -> R; constants fold to units or an empty clause.
    void imply(ELit l, ELit r) {
        l = negate(l);
        if (l.kind == ELit::kTrue || r.kind == ELit::kTrue) return;
        if (l.kind == ELit::kFalse && r.kind == ELit::kFalse) {
            emit({});
            return;
        }
        std::vector<int> clause;
        if (l.kind == ELit::kVar) clause.push_back(l.negated ? -l.var : l.var);
        if (r.kind == ELit::kVar) clause.push_back(r.negated ? -r.var : r.var);
        emit(std::move(clause));
    }

    void equiv(ELit l, ELit r) {
        imply(l, r);
        imply(r, l);
    }

    void emit(std::vector<int> clause) {
        std::vector<int> key = clause;
        std::sort(key.begin(), key.end());
        if (!seen_.insert(key).second) return;  // duplicate within this pair
        if (clause.empty())
            formula_.add_empty_clause();
        else
            formula_.add_clause(std::move(clause));
    }

private:
    CnfFormula& formula_;
    std::set<std::vector<int>> seen_;
};

struct Encoder {
    const IndetString& x;
    const IndetString& y;
    AlternateEncoding& enc;
    // var_base[i] is the first variable id of position i; x-side levels come
    // first, then y-side levels.
    std::vector<int> var_base;

    int var(char side, std::size_t i, std::size_t level) const {
        const std::size_t off = side == 'x' ? level : x[i].size() + level;
        return var_base[i] + static_cast<int>(off);
    }

    const IndetString& str(char side) const { return side == 'x' ? x : y; }

    // Literal for "selected character of `side` at position i > c" (or >= c).
    ELit above(char side, std::size_t i, Char c, bool strict) const {
        const CharSet& set = str(side)[i];
        const auto& v = set.chars();
        auto it = strict ? std::upper_bound(v.begin(), v.end(), c)
                         : std::lower_bound(v.begin(), v.end(), c);
        if (it == v.end()) return {ELit::kFalse, 0, false};
        const std::size_t level = static_cast<std::size_t>(it - v.begin());
        if (level == 0) return {ELit::kTrue, 0, false};
        return {ELit::kVar, var(side, i, level), false};
    }

    // Pair with x determinate at p and y determinate at q: the selected
    // characters u = x-side at q and v = y-side at p must satisfy
    // sign(a - u) == sign(v - b).
    void emit_mixed(std::size_t p, std::size_t q) {
        const Char a = x[p][0];
        const Char b = y[q][0];
        PairEmitter out(enc.formula);
        // u > a  <->  v < b,   u < a  <->  v > b; the equality case follows.
        out.equiv(above('x', q, a, true), negate(above('y', p, b, false)));
        out.equiv(negate(above('x', q, a, false)), above('y', p, b, true));
    }

    // Pair determinate on `side` at both positions: the opposite selections
    // must be ordered the same way as the two determinate characters.
    void emit_shared(char side, std::size_t alpha, std::size_t beta) {
        const Char a = str(side)[alpha][0];
        const Char b = str(side)[beta][0];
        if (a == b)
            throw std::invalid_argument(
                "encode_alternate: equal determinate characters; preprocess first");
        const char other = side == 'x' ? 'y' : 'x';
        std::size_t lo = alpha, hi = beta;  // selection at hi must exceed selection at lo
        if (a > b) std::swap(lo, hi);
        const auto& lo_set = str(other)[lo].chars();
        PairEmitter out(enc.formula);
        for (std::size_t i = 0; i < lo_set.size(); ++i) {
            const ELit gt = above(other, hi, lo_set[i], true);
            const ELit at = i == 0 ? ELit{ELit::kTrue, 0, false}
                                   : ELit{ELit::kVar, var(other, lo, i), false};
            out.imply(at, gt);
        }
    }
};

}  // namespace

AlternateEncoding encode_alternate(const IndetString& x, const IndetString& y,
                                   const AlternateOptions& options) {
    require_alternating(x, y, "encode_alternate");
    const std::size_t m = x.length();

    AlternateEncoding enc;
    Encoder e{x, y, enc, {}};
    e.var_base.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        e.var_base[i] = enc.formula.num_vars + 1;
        for (char side : {'x', 'y'}) {
            const CharSet& set = (side == 'x' ? x : y)[i];
            for (std::size_t k = 0; k < set.size(); ++k) {
                enc.formula.add_var("g s=" + std::string(1, side) + " i=" + std::to_string(i) +
                                    " k=" + std::to_string(k));
                enc.keys.push_back({side, i, k});
            }
            // Thresholds are downward closed and the lowest always holds.
            enc.formula.add_clause({e.var(side, i, 0)});
            for (std::size_t k = 1; k < set.size(); ++k)
                enc.formula.add_clause({-e.var(side, i, k), e.var(side, i, k - 1)});
        }
    }

    const bool adjacent = options.adjacent_type2;
    // Nearest earlier determinate values per side, used in adjacent mode.
    auto adjacent_partners = [&](char side, std::size_t i) {
        std::vector<std::size_t> partners;
        const Char v = e.str(side)[i][0];
        std::map<Char, std::size_t> latest;  // value -> latest earlier position
        for (std::size_t k = 0; k < i; ++k)
            if (e.str(side)[k].is_singleton()) latest[e.str(side)[k][0]] = k;
        auto it = latest.lower_bound(v);
        if (it != latest.end()) partners.push_back(it->second);
        if (it != latest.begin()) partners.push_back(std::prev(it)->second);
        return partners;
    };

    for (std::size_t i = 0; i < m; ++i) {
        if (adjacent) {
            for (char side : {'x', 'y'}) {
                if (!e.str(side)[i].is_singleton()) continue;
                for (std::size_t k : adjacent_partners(side, i)) e.emit_shared(side, k, i);
            }
            for (std::size_t k = 0; k < i; ++k) {
                const bool via_x = x[i].is_singleton() && x[k].is_singleton();
                const bool via_y = y[i].is_singleton() && y[k].is_singleton();
                if (!via_x && !via_y) {
                    if (x[i].is_singleton())
                        e.emit_mixed(i, k);
                    else
                        e.emit_mixed(k, i);
                }
            }
        } else {
            for (std::size_t k = 0; k < i; ++k) {
                if (x[i].is_singleton() && x[k].is_singleton())
                    e.emit_shared('x', k, i);
                else if (y[i].is_singleton() && y[k].is_singleton())
                    e.emit_shared('y', k, i);
                else if (x[i].is_singleton())
                    e.emit_mixed(i, k);
                else
                    e.emit_mixed(k, i);
            }
        }
    }
    return enc;
}

WitnessPair extract_alternate(const AlternateEncoding& enc, const AlternatePrep& prep,
                              const std::vector<bool>& model) {
    const std::size_t fused = prep.x.length();
    Assignment fx(fused), fy(fused);
    std::size_t v = 0;
    for (std::size_t i = 0; i < fused; ++i) {
        for (char side : {'x', 'y'}) {
            const CharSet& set = (side == 'x' ? prep.x : prep.y)[i];
            std::size_t top = 0;
            for (std::size_t k = 0; k < set.size(); ++k, ++v) {
                const bool val = v + 1 < model.size() && model[v + 1];
                if (val && k != top)
                    throw std::logic_error("extract_alternate: thresholds not downward closed");
                if (val) top = k + 1;
            }
            if (top == 0) throw std::logic_error("extract_alternate: lowest threshold unset");
            (side == 'x' ? fx : fy)[i] = set[top - 1];
        }
    }
    if (v != enc.keys.size()) throw std::logic_error("extract_alternate: variable count mismatch");

    WitnessPair out{Assignment(prep.remap.size()), Assignment(prep.remap.size())};
    for (std::size_t pos = 0; pos < prep.remap.size(); ++pos) {
        out.first[pos] = fx[prep.remap[pos]];
        out.second[pos] = fy[prep.remap[pos]];
    }
    return out;
}

std::optional<WitnessPair> alternate_match(const IndetString& x, const IndetString& y,
                                           const AlternateOptions& options) {
    const AlternatePrep prep = preprocess_alternate(x, y);
    if (!prep.feasible) return std::nullopt;
    for (std::size_t beta = 1; beta < prep.x.length(); ++beta)
        for (std::size_t alpha = 0; alpha < beta; ++alpha)
            if (!check_pair(prep.x, prep.y, alpha, beta)) return std::nullopt;
    const AlternateEncoding enc = encode_alternate(prep.x, prep.y, options);
    const SatResult res = solve_2sat(enc.formula);
    if (!res.satisfiable) return std::nullopt;
    WitnessPair w = extract_alternate(enc, prep, *res.model);
    if (!is_valid_assignment(x, w.first) || !is_valid_assignment(y, w.second) ||
        !op_iso(w.first, w.second))
        throw std::logic_error("alternate_match: extracted witness is not a match");
    return w;
}

}  // namespace oppm
