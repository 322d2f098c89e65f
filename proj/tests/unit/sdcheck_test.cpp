// Copyright 2026 The sdcodes Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <random>

#include "../oracles.hpp"
#include "sdc/sdcheck.hpp"

namespace sdc {
namespace {

CodeSpec spec_of(std::size_t n, std::size_t m, std::size_t s, std::size_t r) { return {n, m, s, r, {}, Family::generic}; }

/// Brute-force decodability of a full (mr+s)-column pattern: the square
/// erased-column submatrix has a unit determinant.
bool oracle_decodable(const ParityCheckMatrix& hm, const std::vector<std::size_t>& cols) {
    const oracle::Arith ar{hm.algebra().modulus()};
    const std::size_t rows = hm.h.rows();
    const std::size_t k = cols.size();
    if (k == 0) return true;
    EXPECT_EQ(rows, k);
    std::vector<std::vector<std::uint64_t>> a(rows, std::vector<std::uint64_t>(k));
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < k; ++c) a[r][c] = hm.h(r, cols[c]).bits;
    }
    return oracle::is_unit(ar, oracle::det(ar, a));
}

TEST(ErasedColumns, MapsRowsAndDisks) {
    const CodeSpec sp = spec_of(5, 1, 2, 3);
    EXPECT_EQ(erased_columns({{2}, {}}, sp), (std::vector<std::size_t>{2, 7, 12}));
    EXPECT_EQ(erased_columns({{}, {{1, 0}}}, sp), (std::vector<std::size_t>{5}));
    EXPECT_TRUE(erased_columns({}, sp).empty());
    EXPECT_EQ(erased_columns({{0}, {{0, 1}, {2, 3}}}, sp), (std::vector<std::size_t>{0, 1, 5, 10, 13}));
}

TEST(ErasedColumns, RejectsInvalidPatterns) {
    const CodeSpec sp = spec_of(5, 1, 2, 3);
    for (const ErasurePattern& p : {ErasurePattern{{0, 1}, {}}, ErasurePattern{{5}, {}},
                                    ErasurePattern{{0}, {{1, 0}}}, ErasurePattern{{}, {{3, 0}}},
                                    ErasurePattern{{}, {{1, 1}, {1, 1}}}}) {
        try {
            erased_columns(p, sp);
            ADD_FAILURE() << format_pattern(p);
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), Errc::pattern_invalid);
        }
    }
}

TEST(EnumeratePatterns, Counts) {
    EXPECT_EQ(enumerate_patterns(spec_of(5, 1, 2, 3)).size(), 330u);
    EXPECT_EQ(enumerate_patterns(spec_of(5, 2, 2, 3)).size(), 360u);
    EXPECT_EQ(enumerate_patterns(spec_of(3, 1, 2, 5)).size(), 135u);
    EXPECT_EQ(pattern_count(spec_of(5, 2, 2, 51)), 116280u);
    EXPECT_EQ(enumerate_patterns(spec_of(4, 1, 0, 2)).size(), 4u);
}

TEST(EnumeratePatterns, OrderAndShape) {
    const CodeSpec sp = spec_of(5, 2, 2, 3);
    const auto all = enumerate_patterns(sp);
    EXPECT_EQ(all.front(), (ErasurePattern{{0, 1}, {{0, 2}, {0, 3}}}));
    EXPECT_EQ(all.back(), (ErasurePattern{{3, 4}, {{2, 1}, {2, 2}}}));
    const detail::PatternSpace space(sp);
    for (std::size_t k = 0; k < all.size(); ++k) {
        ASSERT_EQ(all[k].disks.size(), 2u);
        ASSERT_EQ(all[k].sectors.size(), 2u);
        ASSERT_NO_THROW(validate_pattern(all[k], sp));
        ASSERT_EQ(space.at(k), all[k]);
        if (k > 0) {
            const auto prev = erased_columns(all[k - 1], sp);
            const auto cur = erased_columns(all[k], sp);
            ASSERT_TRUE(all[k - 1].disks < all[k].disks || (all[k - 1].disks == all[k].disks && prev < cur));
        }
    }
}

TEST(PatternText, FormatAndParse) {
    const ErasurePattern p{{1, 3}, {{0, 2}, {4, 0}}};
    EXPECT_EQ(format_pattern(p), "d=1,3 s=0:2,4:0");
    EXPECT_EQ(parse_pattern("d=1,3 s=0:2,4:0"), p);
    EXPECT_EQ(parse_pattern("s=4:0,0:2 d=3,1"), p);
    EXPECT_EQ(format_pattern({}), "d= s=");
    EXPECT_EQ(parse_pattern("d= s="), ErasurePattern{});
    EXPECT_THROW(parse_pattern("d=1 s=0-2"), Error);
    EXPECT_THROW(parse_pattern("q=1"), Error);
}

TEST(IsPatternDecodable, SameRowAndCrossRowSectors) {
    const auto hm = build_h1(3, 5, make_field(4, 0x13));
    EXPECT_TRUE(is_pattern_decodable(hm, {}));
    EXPECT_TRUE(is_pattern_decodable(hm, {{0}, {{0, 1}, {0, 2}}}));
    EXPECT_TRUE(is_pattern_decodable(hm, {{0}, {{0, 1}, {2, 3}}}));
    EXPECT_TRUE(is_pattern_decodable(hm, {{4}, {}}));
    // Three sectors in one row: the local parity plus both global rows.
    EXPECT_TRUE(is_pattern_decodable(hm, {{}, {{1, 0}, {1, 2}, {1, 4}}}));
}

TEST(IsPatternDecodable, TooManyErasures) {
    const auto hm = build_h1(3, 5, make_field(4, 0x13));
    try {
        is_pattern_decodable(hm, {{0}, {{0, 1}, {0, 2}, {1, 1}}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::too_many_erasures);
    }
}

TEST(IsSd, Constructions) {
    const Algebra f = make_field(4, 0x13);
    auto rep = is_sd(build_h1(3, 5, f));
    EXPECT_TRUE(rep.sd);
    EXPECT_EQ(rep.patterns_checked, 330u);
    EXPECT_FALSE(rep.witness);
    rep = is_sd(build_h2(5, 3, f));
    EXPECT_TRUE(rep.sd);
    EXPECT_EQ(rep.patterns_checked, 3u * 10u);  // C(3,2) * C(5,2)
}

TEST(IsSd, CorruptedGlobalEntryHasWitness) {
    const Algebra f = make_field(4, 0x13);
    auto hm = build_h1(3, 5, f);
    hm.h(3, 0) = hm.h(3, 1);
    for (SdStrategy strategy : {SdStrategy::reduced, SdStrategy::direct}) {
        SdOptions opts;
        opts.strategy = strategy;
        const auto rep = is_sd(hm, opts);
        ASSERT_FALSE(rep.sd);
        ASSERT_TRUE(rep.witness);
        // Frozen from an independent brute-force pass over all 330 patterns;
        // it is the first of three failures.
        EXPECT_EQ(*rep.witness, parse_pattern("d=0 s=0:2,1:4"));
        EXPECT_EQ(rep.patterns_checked, 17u);
        const auto cols = erased_columns(*rep.witness, hm.spec);
        EXPECT_EQ(cols, (std::vector<std::size_t>{0, 2, 5, 9, 10}));
        EXPECT_FALSE(oracle_decodable(hm, cols));
    }
    // Exactly three failing patterns, per the same oracle.
    int failures = 0;
    for (const auto& p : enumerate_patterns(hm.spec)) failures += !is_pattern_decodable(hm, p);
    EXPECT_EQ(failures, 3);
}

// Reduced and direct strategies agree with each other and with a brute-force
// determinant oracle on random generic matrices.
TEST(IsSd, StrategiesAgreeWithOracle) {
    std::mt19937_64 rng(17);
    int sd_count = 0, non_sd = 0;
    for (const Algebra& a : {make_field(3, 0xb), make_field(4, 0x13), make_ring(5), make_ring(7)}) {
        for (int t = 0; t < 12; ++t) {
            const std::size_t n = 3 + t % 2, m = 1 + (t / 2) % 2, s = 1 + t % 3 % 2, r = 1 + (t % 3 == 0);
            if (m >= n) continue;
            Matrix g(a, s, r * n);
            for (std::size_t i = 0; i < s; ++i) {
                for (std::size_t c = 0; c < r * n; ++c) {
                    do {
                        g(i, c) = Element{rng() & a.element_mask()};
                    } while (g(i, c).is_zero());
                }
            }
            const auto hm = build_h_generic(n, m, s, r, g);
            SdOptions direct;
            direct.strategy = SdStrategy::direct;
            const auto rr = is_sd(hm);
            const auto rd = is_sd(hm, direct);
            ASSERT_EQ(rr.sd, rd.sd);
            ASSERT_EQ(rr.witness, rd.witness);
            ASSERT_EQ(rr.patterns_checked, rd.patterns_checked);
            std::optional<ErasurePattern> first;
            for (const auto& p : enumerate_patterns(hm.spec)) {
                if (!oracle_decodable(hm, erased_columns(p, hm.spec))) {
                    first = p;
                    break;
                }
            }
            ASSERT_EQ(rr.witness, first);
            (rr.sd ? sd_count : non_sd)++;
        }
    }
    EXPECT_GT(sd_count, 0);
    EXPECT_GT(non_sd, 0);
}

TEST(IsSd, ReportIndependentOfJobsAndChunking) {
    const Algebra f = make_field(4, 0x13);
    auto bad = build_h2(3, 5, f);
    bad.h(7, 9) = bad.h(7, 4);
    for (const auto& hm : {build_h2(3, 5, f), bad}) {
        SdOptions base;
        base.jobs = 1;
        const auto ref = is_sd(hm, base);
        for (unsigned jobs : {2u, 3u, 8u}) {
            for (std::uint64_t chunk : {1u, 7u, 1000u}) {
                for (SdStrategy st : {SdStrategy::reduced, SdStrategy::direct}) {
                    SdOptions o;
                    o.jobs = jobs;
                    o.chunk = chunk;
                    o.strategy = st;
                    const auto rep = is_sd(hm, o);
                    ASSERT_EQ(rep.sd, ref.sd);
                    ASSERT_EQ(rep.witness, ref.witness);
                    ASSERT_EQ(rep.patterns_checked, ref.patterns_checked);
                }
            }
        }
    }
}

TEST(IsSd, ProgressReachesTotal) {
    const auto hm = build_h1(3, 5, make_field(4, 0x13));
    std::uint64_t last = 0, total = 0;
    SdOptions o;
    o.chunk = 50;
    o.progress = [&](std::uint64_t done, std::uint64_t t) {
        EXPECT_GE(done, last);
        last = done;
        total = t;
    };
    is_sd(hm, o);
    EXPECT_EQ(last, 330u);
    EXPECT_EQ(total, 330u);
}

// Both constructions are SD for every admissible (r, n) in the small algebras.
TEST(IsSd, ConstructionsOverSmallAlgebras) {
    for (const Algebra& a : {make_field(4, 0x13), make_ring(5), make_ring(7), make_ring(17)}) {
        const std::size_t ord = a.order_of_alpha();
        for (std::size_t n = 2; n <= ord; ++n) {
            for (std::size_t r = 1; r * n <= ord; ++r) {
                const auto h1 = build_h1(r, n, a);
                ASSERT_TRUE(is_sd(h1).sd) << text::descriptor(a.spec()) << " r=" << r << " n=" << n;
                if (n >= 3) {
                    ASSERT_TRUE(is_sd(build_h2(r, n, a)).sd) << text::descriptor(a.spec()) << " r=" << r;
                }
            }
        }
    }
    const Algebra g = make_field(8, 0x11d);
    for (auto [r, n] : {std::pair{17, 15}, {51, 5}, {85, 3}}) {
        EXPECT_TRUE(is_sd(build_h1(r, n, g)).sd) << r << "x" << n;
        EXPECT_TRUE(is_sd(build_h2(r, n, g)).sd) << r << "x" << n;
    }
    EXPECT_TRUE(is_sd(build_h1(5, 51, g)).sd);
}

// With a non-primitive alpha the order bound is what matters, not the field.
TEST(IsSd, NonPrimitiveAlphaWithinOrder) {
    const Algebra f = make_field(4, 0x1f);  // O(alpha) = 5
    EXPECT_TRUE(is_sd(build_h1(1, 5, f)).sd);
    EXPECT_THROW(build_h1(2, 3, f), Error);
}

TEST(Shorten, MatchesDirectConstruction) {
    const Algebra f = make_field(4, 0x13);
    EXPECT_EQ(shorten(build_h1(3, 5, f), 2), build_h1(2, 5, f));
    EXPECT_EQ(shorten(build_h2(5, 3, f), 4), build_h2(4, 3, f));
    EXPECT_EQ(shorten(build_h2(5, 3, f), 1), build_h2(1, 3, f));
    try {
        shorten(build_h1(3, 5, f), 3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::bad_row_count);
    }
    EXPECT_THROW(shorten(build_h1(3, 5, f), 0), Error);
}

TEST(Shorten, PreservesSd) {
    std::mt19937_64 rng(23);
    const Algebra f = make_field(8, 0x11d);
    int tested = 0;
    for (int t = 0; t < 60 && tested < 8; ++t) {
        Matrix g(f, 2, 12);
        for (auto& row : {0, 1}) {
            for (std::size_t c = 0; c < 12; ++c) g(row, c) = Element{1 + rng() % 255};
        }
        const auto hm = build_h_generic(4, 1, 2, 3, g);
        if (!is_sd(hm).sd) continue;
        ++tested;
        for (std::size_t r2 = 1; r2 < 3; ++r2) EXPECT_TRUE(is_sd(shorten(hm, r2)).sd);
    }
    EXPECT_EQ(tested, 8);
}

}  // namespace
}  // namespace sdc
