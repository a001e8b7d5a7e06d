#include <algorithm>
#include <random>

#include "doctest.h"
#include "oppm/filtration.hpp"
#include "oppm/oracle.hpp"
#include "test_util.hpp"

using namespace oppm;
using testutil::istr;

namespace {

const TriBit O = TriBit::Zero;
const TriBit I = TriBit::One;
const TriBit S = TriBit::Star;

IndetString sample_text() {
    return istr({{3, 4}, {5}, {6, 8}, {6, 7}, {3}, {5}, {4, 6}, {7, 8}, {4}});
}

std::vector<std::size_t> match_starts(const MatchReport& report) {
    std::vector<std::size_t> out;
    for (const WindowMatch& m : report.matches) out.push_back(m.start);
    return out;
}

// Quadratic reference for the wildcard matcher.
std::vector<std::size_t> wildcard_reference(const EncodedString& p, const EncodedString& t) {
    std::vector<std::size_t> hits;
    for (std::size_t i = 0; i + p.size() <= t.size(); ++i) {
        bool ok = true;
        for (std::size_t k = 0; k < p.size(); ++k) {
            const bool comp = p[k] == t[i + k] || p[k] == TriBit::Star || t[i + k] == TriBit::Star;
            if (!comp) {
                ok = false;
                break;
            }
        }
        if (ok) hits.push_back(i);
    }
    return hits;
}

EncodedString random_bits(std::mt19937_64& rng, std::size_t n) {
    EncodedString out(n);
    for (auto& b : out) b = static_cast<TriBit>(rng() % 3);
    return out;
}

}  // namespace

TEST_CASE("encode_binary worked examples") {
    CHECK(encode_binary(istr({{6}, {2, 3}, {5}})) == EncodedString{O, I});
    CHECK(encode_binary(sample_text()) == EncodedString{I, I, S, O, I, S, I, O});
    CHECK(encode_binary(IndetString::determinate({3, 1, 2, 4})) == EncodedString{O, I, I});
    CHECK(encode_binary(IndetString::determinate({5, 5, 5})) == EncodedString{O, O});
    CHECK_THROWS_AS(encode_binary(istr({{1}})), std::invalid_argument);
    CHECK_THROWS_AS(encode_binary(IndetString()), std::invalid_argument);
}

TEST_CASE("encode_binary of determinate strings is the adjacent comparison") {
    std::mt19937_64 rng(71);
    for (int it = 0; it < 1'000; ++it) {
        const std::size_t m = 2 + rng() % 10;
        Assignment x(m);
        for (auto& v : x) v = static_cast<Char>(rng() % 6);
        EncodedString enc = encode_binary(IndetString::determinate(x));
        REQUIRE(enc.size() == m - 1);
        for (std::size_t i = 0; i + 1 < m; ++i) {
            CHECK(enc[i] == (x[i] < x[i + 1] ? TriBit::One : TriBit::Zero));
            CHECK(enc[i] != TriBit::Star);  // determinate: no uncertainty
        }
    }
}

TEST_CASE("wildcard_match worked examples") {
    EncodedString t_enc = encode_binary(sample_text());
    CHECK(wildcard_match({O, I}, t_enc) == std::vector<std::size_t>{3, 5});
    CHECK(wildcard_match({S, S, S}, t_enc) ==
          std::vector<std::size_t>{0, 1, 2, 3, 4, 5});
    CHECK(wildcard_match({I}, {O, I, S}) == std::vector<std::size_t>{1, 2});
    CHECK_THROWS_AS(wildcard_match({}, t_enc), std::invalid_argument);
    CHECK_THROWS_AS(wildcard_match({O, I, O}, {O, I}), std::invalid_argument);
}

TEST_CASE("wildcard_match equals reference on random inputs") {
    std::mt19937_64 rng(72);
    for (int it = 0; it < 1'500; ++it) {
        const std::size_t plen = 1 + rng() % 10;
        const std::size_t tlen = plen + rng() % 40;
        EncodedString p = random_bits(rng, plen);
        EncodedString t = random_bits(rng, tlen);
        CHECK(wildcard_match(p, t) == wildcard_reference(p, t));
    }
}

TEST_CASE("wildcard_match beyond word size uses the same semantics") {
    std::mt19937_64 rng(73);
    for (int it = 0; it < 60; ++it) {
        const std::size_t plen = 65 + rng() % 30;
        const std::size_t tlen = plen + rng() % 120;
        // Bias toward stars so hits actually occur at this length.
        EncodedString p(plen), t(tlen);
        for (auto& b : p) b = rng() % 2 ? TriBit::Star : static_cast<TriBit>(rng() % 3);
        for (auto& b : t) b = rng() % 2 ? TriBit::Star : static_cast<TriBit>(rng() % 3);
        CHECK(wildcard_match(p, t) == wildcard_reference(p, t));
    }
}

TEST_CASE("verify_match methods on a single instance") {
    IndetString x = IndetString::determinate({1, 4, 3, 1});
    IndetString y = istr({{2}, {4, 5}, {3, 5}, {1, 2}});
    for (Method m : {Method::Auto, Method::Greedy, Method::Eq1, Method::Eq2,
                     Method::Alternate, Method::Naive, Method::Oracle}) {
        VerifyOutcome out = verify_match(x, y, m);
        CHECK(out.match);
        REQUIRE(out.witness.has_value());
        CHECK(is_valid_assignment(x, out.witness->first));
        CHECK(is_valid_assignment(y, out.witness->second));
        CHECK(op_iso(out.witness->first, out.witness->second));
    }
    // The LIS method reports the verdict without a witness.
    VerifyOutcome lis = verify_match(x, y, Method::Lis);
    CHECK(lis.match);
    CHECK_FALSE(lis.witness.has_value());
}

TEST_CASE("verify_match orients the determinate side automatically") {
    // Here the FIRST string is the indeterminate one.
    IndetString x = istr({{2}, {4, 5}, {3, 5}, {1, 2}});
    IndetString y = IndetString::determinate({1, 4, 3, 1});
    for (Method m : {Method::Greedy, Method::Eq1}) {
        VerifyOutcome out = verify_match(x, y, m);
        CHECK(out.match);
        REQUIRE(out.witness.has_value());
        // Witness sides still line up with the argument order.
        CHECK(is_valid_assignment(x, out.witness->first));
        CHECK(is_valid_assignment(y, out.witness->second));
        CHECK(op_iso(out.witness->first, out.witness->second));
    }
    CHECK(verify_match(x, y, Method::Lis).match);
}

TEST_CASE("verify_match input validation") {
    IndetString both_open = istr({{1, 2}, {3}});
    IndetString other = istr({{1, 9}, {2, 5}});
    CHECK_THROWS_AS(verify_match(both_open, other, Method::Greedy), std::invalid_argument);
    CHECK_THROWS_AS(verify_match(both_open, other, Method::Lis), std::invalid_argument);
    CHECK_THROWS_AS(verify_match(both_open, other, Method::Eq1), std::invalid_argument);
    CHECK_THROWS_AS(verify_match(both_open, other, Method::Alternate), std::invalid_argument);
    CHECK_THROWS_AS(verify_match(istr({{1}}), istr({{1}, {2}}), Method::Auto),
                    std::invalid_argument);
    CHECK_THROWS_AS(verify_match(IndetString(), IndetString(), Method::Auto),
                    std::invalid_argument);
    // Eq2 handles the both-open shape fine.
    CHECK(verify_match(both_open, other, Method::Eq2).match);
}

TEST_CASE("search worked example: determinate greedy with filtering") {
    IndetString p = IndetString::determinate({3, 1, 2, 4});
    IndetString t = IndetString::determinate({2, 4, 3, 5, 7, 1, 4, 8});
    SearchOptions opts;
    opts.method = Method::Greedy;
    MatchReport report = search(p, t, opts);
    CHECK(match_starts(report) == std::vector<std::size_t>{4});
    CHECK(report.stats.windows_total == 5);
    CHECK(report.stats.candidates_after_filter == 2);  // the spurious window 1 and window 4
    CHECK(report.stats.verified_matches == 1);
    REQUIRE(report.matches[0].witness.has_value());
    CHECK(report.matches[0].witness->second == Assignment{7, 1, 4, 8});
}

TEST_CASE("search worked example: indeterminate pattern over indeterminate text") {
    IndetString p = istr({{6}, {2, 3}, {5}});
    MatchReport report = search(p, sample_text(), {});
    CHECK(match_starts(report) == std::vector<std::size_t>{3});
    CHECK(report.stats.windows_total == 7);
    CHECK(report.stats.candidates_after_filter == 2);  // alignments {3,5}
    CHECK(report.stats.verified_matches == 1);
}

TEST_CASE("search worked example: general encoding") {
    IndetString p = istr({{1}, {2, 5}, {3}, {3}});
    IndetString t = istr({{5}, {0}, {1}, {1, 2}, {2}, {5}, {2, 3}, {3, 4}});
    SearchOptions opts;
    opts.method = Method::Eq2;
    MatchReport report = search(p, t, opts);
    CHECK(match_starts(report) == std::vector<std::size_t>{1, 4});
    for (const WindowMatch& m : report.matches) {
        REQUIRE(m.witness.has_value());
        CHECK(op_iso(m.witness->first, m.witness->second));
    }
}

TEST_CASE("search single-position pattern matches everywhere") {
    MatchReport report = search(istr({{7}}), sample_text(), {});
    CHECK(match_starts(report) ==
          std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6, 7, 8});
    CHECK(report.stats.windows_total == 9);
    CHECK(report.stats.candidates_after_filter == 9);  // length-1 patterns bypass filtering
}

TEST_CASE("search input validation") {
    IndetString t = sample_text();
    CHECK_THROWS_AS(search(IndetString(), t, {}), std::invalid_argument);
    CHECK_THROWS_AS(search(t, istr({{1}}), {}), std::invalid_argument);
    SearchOptions greedy;
    greedy.method = Method::Greedy;
    CHECK_THROWS_AS(search(istr({{1, 2}, {3}}), istr({{1, 9}, {2, 5}, {3, 4}}), greedy),
                    std::invalid_argument);
}

TEST_CASE("filtered and unfiltered searches agree with the oracle") {
    std::mt19937_64 meta(112233);
    for (int it = 0; it < 700; ++it) {
        InstanceGenSpec pspec, tspec;
        pspec.m = 1 + meta() % 5;
        pspec.r_max = 1 + meta() % 2;
        pspec.alphabet_size = static_cast<Char>(3 + meta() % 6);
        pspec.seed = meta();
        pspec.mode = GenMode::BothIndet;
        tspec.m = pspec.m + meta() % 14;
        tspec.r_max = pspec.r_max;
        tspec.alphabet_size = pspec.alphabet_size;
        tspec.seed = meta();
        tspec.mode = GenMode::BothIndet;
        IndetString p = gen_instance(pspec).first;
        IndetString t = gen_instance(tspec).second;

        SearchOptions filtered, unfiltered;
        unfiltered.use_filter = false;
        MatchReport rf = search(p, t, filtered);
        MatchReport ru = search(p, t, unfiltered);
        REQUIRE(match_starts(rf) == match_starts(ru));
        REQUIRE(match_starts(rf) == oracle_search(p, t));

        CHECK(rf.stats.verified_matches == ru.stats.verified_matches);
        CHECK(rf.stats.windows_total == ru.stats.windows_total);
        CHECK(ru.stats.candidates_after_filter == ru.stats.windows_total);
        CHECK(rf.stats.candidates_after_filter <= rf.stats.windows_total);
        CHECK(rf.stats.verified_matches <= rf.stats.candidates_after_filter);

        for (const WindowMatch& m : rf.matches) {
            if (!m.witness) continue;
            CHECK(is_valid_assignment(p, m.witness->first));
            CHECK(is_valid_assignment(t.window(m.start, p.length()), m.witness->second));
            CHECK(op_iso(m.witness->first, m.witness->second));
        }
    }
}

TEST_CASE("naive method matches auto with filtering disabled by definition") {
    std::mt19937_64 meta(445566);
    for (int it = 0; it < 300; ++it) {
        InstanceGenSpec pspec, tspec;
        pspec.m = 2 + meta() % 4;
        pspec.r_max = 2;
        pspec.alphabet_size = 5;
        pspec.seed = meta();
        pspec.mode = GenMode::BothIndet;
        tspec = pspec;
        tspec.m = pspec.m + 6;
        tspec.seed = meta();
        IndetString p = gen_instance(pspec).first;
        IndetString t = gen_instance(tspec).second;

        SearchOptions naive;
        naive.method = Method::Naive;
        MatchReport rn = search(p, t, naive);
        MatchReport ra = search(p, t, {});
        CHECK(match_starts(rn) == match_starts(ra));
        // Naive never filters even when the filter flag stays on.
        CHECK(rn.stats.candidates_after_filter == rn.stats.windows_total);
    }
}

TEST_CASE("StreamSearcher matches batch search incrementally") {
    std::mt19937_64 meta(778899);
    for (int it = 0; it < 400; ++it) {
        InstanceGenSpec pspec, tspec;
        pspec.m = 1 + meta() % 6;
        pspec.r_max = 1 + meta() % 3;
        pspec.alphabet_size = static_cast<Char>(3 + meta() % 5);
        pspec.seed = meta();
        pspec.mode = GenMode::BothIndet;
        tspec = pspec;
        tspec.m = pspec.m + meta() % 10;
        tspec.seed = meta();
        IndetString p = gen_instance(pspec).first;
        IndetString t = gen_instance(tspec).second;

        StreamSearcher stream(p, {});
        std::vector<std::size_t> hits;
        for (const CharSet& c : t)
            if (auto hit = stream.push(c)) hits.push_back(hit->start);
        MatchReport batch = search(p, t, {});
        REQUIRE(hits == match_starts(batch));
        CHECK(stream.stats().windows_total == batch.stats.windows_total);
        CHECK(stream.stats().candidates_after_filter == batch.stats.candidates_after_filter);
        CHECK(stream.stats().verified_matches == batch.stats.verified_matches);
        CHECK(stream.positions_consumed() == t.length());
    }
}

TEST_CASE("StreamSearcher before the first full window") {
    StreamSearcher s(istr({{1}, {2}, {3}}), {});
    CHECK_FALSE(s.push(CharSet::singleton(4)).has_value());
    CHECK_FALSE(s.push(CharSet::singleton(5)).has_value());
    CHECK(s.stats().windows_total == 0);
    auto hit = s.push(CharSet::singleton(6));
    REQUIRE(hit.has_value());
    CHECK(hit->start == 0);
    CHECK(s.stats().windows_total == 1);
    CHECK_THROWS_AS(StreamSearcher(IndetString(), SearchOptions{}), std::invalid_argument);
}

TEST_CASE("filter prunes windows on low-entropy text") {
    std::mt19937_64 rng(99001);
    std::vector<CharSet> text;
    for (int i = 0; i < 4'000; ++i) text.push_back(CharSet::singleton(static_cast<Char>(rng() % 3)));
    IndetString t(std::move(text));
    IndetString p = IndetString::determinate({0, 1, 2, 0, 2, 1, 0, 1});
    MatchReport report = search(p, t, {});
    CHECK(report.stats.windows_total == t.length() - p.length() + 1);
    CHECK(report.stats.candidates_after_filter < report.stats.windows_total);
    MatchReport unfiltered;
    SearchOptions opts;
    opts.use_filter = false;
    unfiltered = search(p, t, opts);
    CHECK(match_starts(report) == match_starts(unfiltered));
}
