#include "oppm/filtration.hpp"

#include <algorithm>
#include <stdexcept>

#include "oppm/alternate.hpp"
#include "oppm/satencode.hpp"
#include "oppm/verify.hpp"

namespace oppm {

namespace {

TriBit encode_pair(const CharSet& a, const CharSet& b) {
    if (a.max() < b.min()) return TriBit::One;
    if (a.min() >= b.max()) return TriBit::Zero;
    return TriBit::Star;
}

bool compatible(TriBit a, TriBit b) {
    return a == b || a == TriBit::Star || b == TriBit::Star;
}

}  // namespace

EncodedString encode_binary(const IndetString& s) {
    if (s.length() < 2) throw std::invalid_argument("encode_binary: need at least two positions");
    EncodedString out;
    out.reserve(s.length() - 1);
    for (std::size_t i = 0; i + 1 < s.length(); ++i) out.push_back(encode_pair(s[i], s[i + 1]));
    return out;
}

std::vector<std::size_t> wildcard_match(const EncodedString& p_enc, const EncodedString& t_enc) {
    if (p_enc.empty()) throw std::invalid_argument("wildcard_match: empty pattern");
    if (p_enc.size() > t_enc.size())
        throw std::invalid_argument("wildcard_match: pattern longer than text");
    const std::size_t len = p_enc.size();
    std::vector<std::size_t> hits;

    if (len <= 64) {
        std::array<std::uint64_t, 3> masks{};
        for (std::size_t k = 0; k < len; ++k)
            for (std::size_t sym = 0; sym < 3; ++sym)
                if (compatible(p_enc[k], static_cast<TriBit>(sym)))
                    masks[sym] |= std::uint64_t{1} << k;
        const std::uint64_t accept = std::uint64_t{1} << (len - 1);
        std::uint64_t state = 0;
        for (std::size_t i = 0; i < t_enc.size(); ++i) {
            state = ((state << 1) | 1) & masks[static_cast<std::size_t>(t_enc[i])];
            if (state & accept) hits.push_back(i + 1 - len);
        }
        return hits;
    }

    for (std::size_t i = 0; i + len <= t_enc.size(); ++i) {
        bool ok = true;
        for (std::size_t k = 0; k < len && ok; ++k) ok = compatible(p_enc[k], t_enc[i + k]);
        if (ok) hits.push_back(i);
    }
    return hits;
}

namespace {

bool alternating(const IndetString& x, const IndetString& y) {
    for (std::size_t i = 0; i < x.length(); ++i)
        if (!x[i].is_singleton() && !y[i].is_singleton()) return false;
    return true;
}

// Greedy/LIS/Eq-1 all need one determinate side; returns true when the
// sides must be swapped so the determinate one comes first.
bool orient_determinate(const IndetString& x, const IndetString& y, const char* who) {
    if (x.is_determinate()) return false;
    if (y.is_determinate()) return true;
    throw std::invalid_argument(std::string(who) + ": needs one determinate side");
}

VerifyOutcome greedy_outcome(const IndetString& x, const IndetString& y, bool swapped) {
    auto witness = verify_greedy(x, y);
    if (!witness) return {};
    WitnessPair pair{x.as_assignment(), std::move(*witness)};
    if (swapped) std::swap(pair.first, pair.second);
    return {true, std::move(pair)};
}

VerifyOutcome auto_outcome(const IndetString& x, const IndetString& y,
                           std::uint64_t oracle_budget) {
    (void)oracle_budget;
    if (x.is_determinate()) return greedy_outcome(x, y, false);
    if (y.is_determinate()) return greedy_outcome(y, x, true);
    if (alternating(x, y)) {
        auto w = alternate_match(x, y);
        if (!w) return {};
        return {true, std::move(w)};
    }
    auto w = match_eq2(x, y);
    if (!w) return {};
    return {true, std::move(w)};
}

}  // namespace

VerifyOutcome verify_match(const IndetString& x, const IndetString& y, Method method,
                           std::uint64_t oracle_budget) {
    if (x.length() == 0) throw std::invalid_argument("verify_match: empty strings");
    if (x.length() != y.length()) throw std::invalid_argument("verify_match: length mismatch");
    switch (method) {
        case Method::Auto:
        case Method::Naive:
            return auto_outcome(x, y, oracle_budget);
        case Method::Greedy: {
            const bool swapped = orient_determinate(x, y, "greedy");
            return swapped ? greedy_outcome(y, x, true) : greedy_outcome(x, y, false);
        }
        case Method::Lis: {
            const bool swapped = orient_determinate(x, y, "lis");
            const bool ok = swapped ? verify_lis(y, x) : verify_lis(x, y);
            return {ok, std::nullopt};
        }
        case Method::Eq1: {
            const bool swapped = orient_determinate(x, y, "eq1");
            auto w = swapped ? match_eq1(y, x) : match_eq1(x, y);
            if (!w) return {};
            WitnessPair pair{(swapped ? y : x).as_assignment(), std::move(*w)};
            if (swapped) std::swap(pair.first, pair.second);
            return {true, std::move(pair)};
        }
        case Method::Eq2: {
            auto w = match_eq2(x, y);
            if (!w) return {};
            return {true, std::move(w)};
        }
        case Method::Alternate: {
            auto w = alternate_match(x, y);
            if (!w) return {};
            return {true, std::move(w)};
        }
        case Method::Oracle: {
            auto w = oracle_match(x, y, oracle_budget);
            if (!w) return {};
            return {true, std::move(w)};
        }
    }
    throw std::invalid_argument("verify_match: unknown method");
}

StreamSearcher::StreamSearcher(IndetString pattern, SearchOptions options)
    : pattern_(std::move(pattern)), opts_(options) {
    if (pattern_.length() == 0)
        throw std::invalid_argument("StreamSearcher: empty pattern");
    const std::size_t m = pattern_.length();
    filtering_ = opts_.use_filter && opts_.method != Method::Naive && m >= 2;
    if (filtering_) {
        p_enc_ = encode_binary(pattern_);
        word_sized_ = p_enc_.size() <= 64;
        if (word_sized_)
            for (std::size_t k = 0; k < p_enc_.size(); ++k)
                for (std::size_t sym = 0; sym < 3; ++sym)
                    if (compatible(p_enc_[k], static_cast<TriBit>(sym)))
                        masks_[sym] |= std::uint64_t{1} << k;
    }
}

bool StreamSearcher::candidate_after_bit(TriBit bit) {
    if (word_sized_) {
        state_ = ((state_ << 1) | 1) & masks_[static_cast<std::size_t>(bit)];
        return (state_ >> (p_enc_.size() - 1)) & 1;
    }
    enc_window_.push_back(bit);
    if (enc_window_.size() > p_enc_.size()) enc_window_.pop_front();
    if (enc_window_.size() < p_enc_.size()) return false;
    for (std::size_t k = 0; k < p_enc_.size(); ++k)
        if (!compatible(p_enc_[k], enc_window_[k])) return false;
    return true;
}

std::optional<WindowMatch> StreamSearcher::push(const CharSet& next) {
    const std::size_t m = pattern_.length();
    bool candidate = !filtering_;
    if (filtering_ && !window_.empty())
        candidate = candidate_after_bit(encode_pair(window_.back(), next));
    window_.push_back(next);
    if (window_.size() > m) window_.pop_front();
    ++consumed_;
    if (window_.size() < m) return std::nullopt;

    ++stats_.windows_total;
    if (!candidate) return std::nullopt;
    ++stats_.candidates_after_filter;

    const IndetString win(std::vector<CharSet>(window_.begin(), window_.end()));
    VerifyOutcome outcome = verify_match(pattern_, win, opts_.method, opts_.oracle_budget);
    if (!outcome.match) return std::nullopt;
    ++stats_.verified_matches;
    return WindowMatch{consumed_ - m, std::move(outcome.witness)};
}

MatchReport search(const IndetString& p, const IndetString& t, const SearchOptions& options) {
    if (p.length() == 0) throw std::invalid_argument("search: empty pattern");
    if (p.length() > t.length()) throw std::invalid_argument("search: pattern longer than text");
    if (options.method == Method::Greedy || options.method == Method::Lis ||
        options.method == Method::Eq1)
        if (!p.is_determinate() && !t.is_determinate())
            throw std::invalid_argument("search: method needs one determinate side");

    StreamSearcher searcher(p, options);
    MatchReport report;
    for (const CharSet& c : t)
        if (auto hit = searcher.push(c)) report.matches.push_back(std::move(*hit));
    report.stats = searcher.stats();
    return report;
}

}  // namespace oppm
