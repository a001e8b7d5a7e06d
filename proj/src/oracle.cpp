#include "oppm/oracle.hpp"

#include <random>
#include <string>

namespace oppm {

namespace {

// Odometer over all assignments of s, positions left to right, characters
// ascending: the rightmost position spins fastest.
class AssignmentEnumerator {
public:
    explicit AssignmentEnumerator(const IndetString& s) : s_(s), idx_(s.length(), 0) {}

    Assignment current() const {
        Assignment a(idx_.size());
        for (std::size_t i = 0; i < idx_.size(); ++i) a[i] = s_[i][idx_[i]];
        return a;
    }

    void fill(Assignment& a) const {
        for (std::size_t i = 0; i < idx_.size(); ++i) a[i] = s_[i][idx_[i]];
    }

    bool advance() {
        for (std::size_t i = idx_.size(); i-- > 0;) {
            if (++idx_[i] < s_[i].size()) return true;
            idx_[i] = 0;
        }
        return false;  // wrapped around
    }

private:
    const IndetString& s_;
    std::vector<std::size_t> idx_;
};

// Saturating product of per-position set sizes: anything above cap reports
// as UINT64_MAX so callers can compare against the budget without overflow.
std::uint64_t assignment_count(const IndetString& s, std::uint64_t cap) {
    std::uint64_t p = 1;
    for (std::size_t i = 0; i < s.length(); ++i) {
        const std::uint64_t k = s[i].size();
        if (k > 1 && p > cap / k) return UINT64_MAX;
        p *= k;
        if (p > cap) return UINT64_MAX;
    }
    return p;
}

void require_matchable(const IndetString& x, const IndetString& y, const char* who) {
    if (x.empty() || y.empty())
        throw std::invalid_argument(std::string(who) + ": empty string");
    if (x.length() != y.length())
        throw std::invalid_argument(std::string(who) + ": length mismatch");
}

}  // namespace

std::optional<WitnessPair> oracle_match(const IndetString& x, const IndetString& y,
                                        std::uint64_t budget) {
    require_matchable(x, y, "oracle_match");
    const std::uint64_t cx = assignment_count(x, budget);
    const std::uint64_t cy = assignment_count(y, budget);
    if (cx > budget || cy > budget || cx > budget / cy)
        throw BudgetExceeded("oracle_match: assignment pair count exceeds budget of " +
                             std::to_string(budget));

    AssignmentEnumerator ex(x);
    Assignment ax(x.length()), ay(y.length());
    do {
        ex.fill(ax);
        AssignmentEnumerator ey(y);
        do {
            ey.fill(ay);
            if (op_iso(ax, ay)) return WitnessPair{ax, ay};
        } while (ey.advance());
    } while (ex.advance());
    return std::nullopt;
}

std::vector<std::size_t> oracle_search(const IndetString& p, const IndetString& t,
                                       std::uint64_t budget) {
    if (p.empty()) throw std::invalid_argument("oracle_search: empty pattern");
    if (p.length() > t.length())
        throw std::invalid_argument("oracle_search: pattern longer than text");
    std::vector<std::size_t> hits;
    for (std::size_t i = 0; i + p.length() <= t.length(); ++i)
        if (oracle_match(p, t.window(i, p.length()), budget)) hits.push_back(i);
    return hits;
}

std::pair<IndetString, IndetString> gen_instance(const InstanceGenSpec& spec) {
    if (spec.m == 0) throw std::invalid_argument("gen_instance: m must be >= 1");
    if (spec.r_max == 0) throw std::invalid_argument("gen_instance: r_max must be >= 1");
    if (spec.alphabet_size <= 0)
        throw std::invalid_argument("gen_instance: alphabet_size must be >= 1");

    std::mt19937_64 rng(spec.seed);
    auto draw = [&](std::uint64_t n) { return rng() % n; };
    auto draw_set = [&](std::size_t size) {
        std::vector<Char> cs(size);
        for (Char& c : cs) c = static_cast<Char>(draw(static_cast<std::uint64_t>(spec.alphabet_size)));
        return CharSet(std::move(cs));  // canonicalization may shrink the set
    };

    std::vector<CharSet> xs, ys;
    xs.reserve(spec.m);
    ys.reserve(spec.m);
    for (std::size_t i = 0; i < spec.m; ++i) {
        std::size_t sx = 1, sy = 1;
        switch (spec.mode) {
            case GenMode::Determinate:
                break;
            case GenMode::OneIndet:
                sx = 1 + draw(spec.r_max);
                break;
            case GenMode::BothIndet:
                sx = 1 + draw(spec.r_max);
                sy = 1 + draw(spec.r_max);
                break;
            case GenMode::Alternate:
                if (draw(2) == 0)
                    sx = 1 + draw(spec.r_max);
                else
                    sy = 1 + draw(spec.r_max);
                break;
        }
        xs.push_back(draw_set(sx));
        ys.push_back(draw_set(sy));
    }
    return {IndetString(std::move(xs)), IndetString(std::move(ys))};
}

}  // namespace oppm
