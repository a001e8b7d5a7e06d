#include "oppm/verify.hpp"

#include <algorithm>

namespace oppm {

namespace {

void require_pair(const IndetString& x, const IndetString& y, const char* who) {
    if (x.empty() || y.empty()) throw std::invalid_argument(std::string(who) + ": empty string");
    if (x.length() != y.length())
        throw std::invalid_argument(std::string(who) + ": length mismatch");
    if (!x.is_determinate())
        throw std::invalid_argument(std::string(who) + ": first string must be determinate");
}

}  // namespace

namespace {

// (character, position) pairs in lexicographic order: sorting these is
// stable by construction and keeps comparisons off the per-position heap
// buffers, which matters once the string outgrows the cache.
std::vector<std::pair<Char, std::size_t>> sorted_keys(const IndetString& x) {
    std::vector<std::pair<Char, std::size_t>> keyed(x.length());
    for (std::size_t i = 0; i < x.length(); ++i) keyed[i] = {x[i].min(), i};
    std::sort(keyed.begin(), keyed.end());
    return keyed;
}

}  // namespace

std::vector<std::size_t> sorted_indexes(const IndetString& x) {
    if (!x.is_determinate())
        throw std::invalid_argument("sorted_indexes: string must be determinate");
    const auto keyed = sorted_keys(x);
    std::vector<std::size_t> pi(x.length());
    for (std::size_t i = 0; i < pi.size(); ++i) pi[i] = keyed[i].second;
    return pi;
}

GroupedString group_and_intersect(const IndetString& x, const IndetString& y,
                                  const std::vector<std::size_t>& pi) {
    require_pair(x, y, "group_and_intersect");
    if (pi.size() != x.length())
        throw std::invalid_argument("group_and_intersect: permutation length mismatch");

    GroupedString out;
    std::size_t k = 0;
    while (k < pi.size()) {
        const Char v = x[pi[k]].min();
        std::vector<Char> inter(y[pi[k]].chars());
        std::size_t e = k + 1;
        for (; e < pi.size() && x[pi[e]].min() == v; ++e) {
            const std::vector<Char>& next = y[pi[e]].chars();
            std::vector<Char> merged;
            std::set_intersection(inter.begin(), inter.end(), next.begin(), next.end(),
                                  std::back_inserter(merged));
            inter = std::move(merged);
        }
        out.groups.push_back(std::move(inter));
        out.group_spans.emplace_back(k, e);
        k = e;
    }
    return out;
}

std::optional<Assignment> verify_greedy(const IndetString& x, const IndetString& y) {
    require_pair(x, y, "verify_greedy");
    const auto keyed = sorted_keys(x);

    // Sweep groups in ascending character order of x, always taking the
    // smallest candidate strictly above the previous pick. Groups are
    // consumed as they are formed; the two intersection buffers are reused
    // so a call allocates O(1) vectors regardless of the group count.
    Assignment witness(x.length());
    std::vector<Char> inter, merged;
    std::optional<Char> prev;
    std::size_t k = 0;
    while (k < keyed.size()) {
        const Char v = keyed[k].first;
        inter = y[keyed[k].second].chars();
        std::size_t e = k + 1;
        for (; e < keyed.size() && keyed[e].first == v; ++e) {
            const std::vector<Char>& next = y[keyed[e].second].chars();
            merged.clear();
            std::set_intersection(inter.begin(), inter.end(), next.begin(), next.end(),
                                  std::back_inserter(merged));
            inter.swap(merged);
        }
        auto it = prev ? std::upper_bound(inter.begin(), inter.end(), *prev) : inter.begin();
        if (it == inter.end()) return std::nullopt;
        const Char pick = *it;
        prev = pick;
        for (std::size_t j = k; j < e; ++j) witness[keyed[j].second] = pick;
        k = e;
    }
    return witness;
}

std::vector<Char> lis_sequence(const GroupedString& g) {
    std::vector<Char> z;
    for (const std::vector<Char>& grp : g.groups)
        for (std::size_t k = grp.size(); k-- > 0;) z.push_back(grp[k]);
    return z;
}

std::size_t lis_strict_length(const std::vector<Char>& z) {
    std::vector<Char> tails;  // tails[l] = smallest tail of an increasing run of length l+1
    for (Char v : z) {
        auto it = std::lower_bound(tails.begin(), tails.end(), v);
        if (it == tails.end())
            tails.push_back(v);
        else
            *it = v;
    }
    return tails.size();
}

bool verify_lis(const IndetString& x, const IndetString& y) {
    require_pair(x, y, "verify_lis");
    const std::vector<std::size_t> pi = sorted_indexes(x);
    const GroupedString g = group_and_intersect(x, y, pi);
    for (const std::vector<Char>& grp : g.groups)
        if (grp.empty()) return false;
    return lis_strict_length(lis_sequence(g)) == g.groups.size();
}

}  // namespace oppm
