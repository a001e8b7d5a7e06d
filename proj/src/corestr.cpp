#include "oppm/corestr.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <numeric>

namespace oppm {

CharSet::CharSet(std::vector<Char> chars) : chars_(std::move(chars)) {
    if (chars_.empty()) throw std::invalid_argument("CharSet: empty character set");
    std::sort(chars_.begin(), chars_.end());
    chars_.erase(std::unique(chars_.begin(), chars_.end()), chars_.end());
}

bool CharSet::contains(Char c) const {
    return std::binary_search(chars_.begin(), chars_.end(), c);
}

IndetString IndetString::determinate(const Assignment& values) {
    std::vector<CharSet> positions;
    positions.reserve(values.size());
    for (Char v : values) positions.push_back(CharSet::singleton(v));
    return IndetString(std::move(positions));
}

bool IndetString::is_determinate() const {
    for (const CharSet& cs : positions_)
        if (!cs.is_singleton()) return false;
    return true;
}

std::size_t IndetString::max_indeterminacy() const {
    std::size_t r = 0;
    for (const CharSet& cs : positions_) r = std::max(r, cs.size());
    return r;
}

IndetString IndetString::window(std::size_t start, std::size_t len) const {
    if (start > positions_.size() || len > positions_.size() - start)
        throw std::invalid_argument("IndetString::window: out of range");
    return IndetString(std::vector<CharSet>(positions_.begin() + start,
                                            positions_.begin() + start + len));
}

Assignment IndetString::as_assignment() const {
    Assignment a;
    a.reserve(positions_.size());
    for (const CharSet& cs : positions_) {
        if (!cs.is_singleton())
            throw std::invalid_argument("as_assignment: string is not determinate");
        a.push_back(cs.min());
    }
    return a;
}

bool is_valid_assignment(const IndetString& s, const Assignment& a) {
    if (s.length() != a.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!s[i].contains(a[i])) return false;
    return true;
}

namespace {

bool is_separator(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v' || c == ',';
}

Char parse_char(std::string_view piece, std::size_t pos_index) {
    Char value = 0;
    auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), value);
    if (ec != std::errc() || ptr != piece.data() + piece.size())
        throw std::invalid_argument("parse_string: position " + std::to_string(pos_index) +
                                    ": invalid integer '" + std::string(piece) + "'");
    return value;
}

}  // namespace

IndetString parse_string(std::string_view text) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && is_separator(text[i])) ++i;
        if (i >= text.size()) break;
        std::size_t j = i;
        while (j < text.size() && !is_separator(text[j])) ++j;
        tokens.push_back(text.substr(i, j - i));
        i = j;
    }
    if (tokens.empty()) throw std::invalid_argument("parse_string: empty input");

    std::vector<CharSet> positions;
    positions.reserve(tokens.size());
    for (std::size_t p = 0; p < tokens.size(); ++p) {
        std::string_view tok = tokens[p];
        std::vector<Char> chars;
        std::size_t begin = 0;
        while (begin <= tok.size()) {
            std::size_t bar = tok.find('|', begin);
            std::string_view piece =
                tok.substr(begin, bar == std::string_view::npos ? bar : bar - begin);
            if (piece.empty())
                throw std::invalid_argument("parse_string: position " + std::to_string(p) +
                                            ": empty alternative");
            chars.push_back(parse_char(piece, p));
            if (bar == std::string_view::npos) break;
            begin = bar + 1;
        }
        positions.emplace_back(std::move(chars));
    }
    return IndetString(std::move(positions));
}

std::string serialize_string(const IndetString& s) {
    std::string out;
    for (std::size_t i = 0; i < s.length(); ++i) {
        if (i) out += ' ';
        const CharSet& cs = s[i];
        for (std::size_t k = 0; k < cs.size(); ++k) {
            if (k) out += '|';
            out += std::to_string(cs[k]);
        }
    }
    return out;
}

namespace {

// Shared tail of the isomorphism check: with idx holding a stable sort of x,
// adjacent co-sorted pairs must agree on equality vs. strict increase.
template <typename Idx>
bool co_sorted_ok(const Assignment& x, const Assignment& y, const Idx* idx, std::size_t m) {
    for (std::size_t k = 0; k + 1 < m; ++k) {
        const std::size_t i = idx[k], j = idx[k + 1];
        if (x[i] == x[j] ? y[i] != y[j] : y[i] >= y[j]) return false;
    }
    return true;
}

}  // namespace

bool op_iso(const Assignment& x, const Assignment& y) {
    if (x.size() != y.size()) throw std::invalid_argument("op_iso: length mismatch");
    const std::size_t m = x.size();
    if (m < 2) return true;
    if (m <= 32) {
        // Allocation-free path for short strings (hot in enumeration loops).
        std::array<std::uint8_t, 32> idx;
        for (std::size_t k = 0; k < m; ++k) idx[k] = static_cast<std::uint8_t>(k);
        // Insertion sort keeps equal characters in ascending position order.
        for (std::size_t k = 1; k < m; ++k) {
            std::uint8_t cur = idx[k];
            std::size_t w = k;
            while (w > 0 && x[cur] < x[idx[w - 1]]) {
                idx[w] = idx[w - 1];
                --w;
            }
            idx[w] = cur;
        }
        return co_sorted_ok(x, y, idx.data(), m);
    }
    std::vector<std::size_t> idx(m);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    return co_sorted_ok(x, y, idx.data(), m);
}

}  // namespace oppm
