// Copyright 2026 The layercode Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "layercode/css_code.h"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "oracles.h"

using namespace layercode;
using namespace layercode::testing;

TEST(CssCode, validate_examples) {
    CssCode c422(BitMatrix::from_strings({"1111"}), BitMatrix::from_strings({"1111"}));
    EXPECT_TRUE(validate(c422, {.check_rates = false}).ok());
    EXPECT_EQ(c422.k(), 2u);

    CssCode bad(BitMatrix::from_strings({"1000"}), BitMatrix::from_strings({"1000"}));
    auto report = validate(bad, {.check_rates = false});
    ASSERT_FALSE(report.ok());
    EXPECT_EQ(report.violations[0].kind, ViolationKind::Orthogonality);

    EXPECT_TRUE(validate(CssCode::steane()).ok());
    EXPECT_EQ(CssCode::steane().k(), 1u);
}

TEST(CssCode, rate_violation_reported) {
    // Three checks on four qubits is a rate of 3/4.
    CssCode c(BitMatrix::from_strings({"1100", "0011", "1111"}), BitMatrix::from_strings({"1111"}));
    auto report = validate(c);
    bool rate = false;
    for (const auto &v : report.violations) {
        rate |= v.kind == ViolationKind::RateOutOfRange;
    }
    EXPECT_TRUE(rate);
}

TEST(CssCode, text_round_trip_and_swap) {
    CssCode s = CssCode::steane();
    CssCode back = CssCode::from_text(s.to_text());
    EXPECT_EQ(back.hx, s.hx);
    EXPECT_EQ(back.hz, s.hz);
    CssCode c(BitMatrix::from_strings({"1111", "1100"}), BitMatrix::from_strings({"1111"}));
    EXPECT_EQ(c.swapped().hx, c.hz);
    EXPECT_EQ(c.swapped().hz, c.hx);
    EXPECT_THROW(CssCode::from_text("HZ\n1 2\n11\n"), std::invalid_argument);
}

TEST(SampleCss, shapes_and_orthogonality) {
    Rng rng(3);
    for (int t = 0; t < 50; t++) {
        CssCode c = sample_css(11, 5, 5, rng);
        EXPECT_EQ(c.hx.rows(), 5u);
        EXPECT_EQ(c.hz.rows(), 5u);
        EXPECT_EQ(c.n(), 11u);
        EXPECT_TRUE(validate(c).ok());
        EXPECT_EQ(c.k(), 11 - rank(c.hx) - rank(c.hz));
    }
    EXPECT_THROW(sample_css(4, 2, 1, rng), std::invalid_argument);
}

TEST(SampleCss, fraction_with_logicals_matches_exact_value) {
    // n = 7 with three checks of each type.
    const double exact = prob_css_has_logicals(7, 3, 3);
    Rng rng(4);
    const int samples = 20000;
    int hits = 0;
    for (int t = 0; t < samples; t++) {
        hits += sample_css(7, 3, 3, rng).k() >= 1;
    }
    double f = (double)hits / samples;
    double sigma = std::sqrt(exact * (1 - exact) / samples);
    EXPECT_NEAR(f, exact, 3 * sigma);
}

TEST(SampleCss, distance_one_well_represented_at_n11) {
    Rng rng(5);
    std::map<size_t, int> by_min_distance;
    int k1 = 0;
    for (int t = 0; t < 10000; t++) {
        CssCode c = sample_css(11, 5, 5, rng);
        if (c.k() != 1) {
            continue;
        }
        k1++;
        auto d = min_distance(c, 11);
        ASSERT_TRUE(d);
        by_min_distance[std::min(d->first, d->second)]++;
    }
    ASSERT_GT(k1, 1000);
    // About 31% of k = 1 codes have a weight-1 logical at this seed; the
    // mode is distance 2.
    EXPECT_GT(by_min_distance[1], k1 / 5);
    EXPECT_GT(by_min_distance[1], by_min_distance[3]);
}

TEST(MinDistance, examples) {
    CssCode c422(BitMatrix::from_strings({"1111"}), BitMatrix::from_strings({"1111"}));
    auto d = min_distance(c422, 4);
    ASSERT_TRUE(d);
    EXPECT_EQ(d->second, 2u);
    auto ds = min_distance(CssCode::steane(), 7);
    ASSERT_TRUE(ds);
    EXPECT_EQ(ds->first, 3u);
    EXPECT_EQ(ds->second, 3u);
    // w_max below the distance finds nothing.
    EXPECT_FALSE(min_distance(CssCode::steane(), 2));
    EXPECT_THROW(min_distance(CssCode(BitMatrix::from_strings({"11"}), BitMatrix::from_strings({"11"})), 2),
                 std::domain_error);
}

TEST(MinDistance, matches_full_enumeration) {
    Rng rng(6);
    int checked = 0;
    for (int t = 0; t < 300 && checked < 100; t++) {
        size_t n = 5 + 2 * (t % 4);
        CssCode c = sample_css(n, (n - 1) / 2, (n - 1) / 2, rng);
        if (c.k() == 0) {
            continue;
        }
        auto d = min_distance(c, n);
        ASSERT_TRUE(d);
        EXPECT_EQ(d->second, brute_min_logical_weight(c.hx, c.hz));
        EXPECT_EQ(d->first, brute_min_logical_weight(c.hz, c.hx));
        checked++;
    }
    EXPECT_GE(checked, 50);
}

TEST(EnergyBarrier, examples) {
    CssCode c422(BitMatrix::from_strings({"1111"}), BitMatrix::from_strings({"1111"}));
    EXPECT_EQ(energy_barrier_bruteforce(c422, PauliType::Z), 1u);
    CssCode rep(BitMatrix::from_strings({"110", "011"}), BitMatrix(0, 3));
    EXPECT_EQ(energy_barrier_bruteforce(rep, PauliType::Z), 1u);
    EXPECT_THROW(energy_barrier_bruteforce(CssCode(BitMatrix::identity(3), BitMatrix(0, 3)), PauliType::Z),
                 std::domain_error);
}

TEST(EnergyBarrier, matches_path_search_and_distance_bound) {
    Rng rng(7);
    int checked = 0;
    for (int t = 0; t < 400 && checked < 120; t++) {
        size_t n = 3 + t % 6;
        size_t m = std::max<size_t>(1, (n - 1) / 2);
        CssCode c = sample_css(n, m, std::max<size_t>(1, m - t % 2), rng);
        if (c.k() == 0) {
            continue;
        }
        for (PauliType type : {PauliType::Z, PauliType::X}) {
            size_t b = energy_barrier_bruteforce(c, type);
            const BitMatrix &checks = type == PauliType::Z ? c.hx : c.hz;
            const BitMatrix &stabs = type == PauliType::Z ? c.hz : c.hx;
            EXPECT_EQ(b, threshold_path_barrier(checks, stabs));
            EXPECT_EQ(b == 0, uncovered_logical_exists(checks, stabs));
            EXPECT_LE(b, checks.rows());
        }
        checked++;
    }
    EXPECT_GE(checked, 100);
}

TEST(YSet, examples) {
    YSet y = build_y_set(BitMatrix::from_strings({"1111"}));
    std::set<std::string> got;
    for (const auto &e : y) {
        got.insert(e.vec.to_string());
    }
    EXPECT_EQ(got, (std::set<std::string>{"1000", "1100", "1110", "1111"}));
    EXPECT_TRUE(build_y_set(BitMatrix(0, 5)).empty());
}

TEST(YSet, elements_reproduce_from_tags) {
    Rng rng(8);
    for (int t = 0; t < 50; t++) {
        BitMatrix hz(3, 6);
        std::bernoulli_distribution coin(0.5);
        for (size_t r = 0; r < 3; r++) {
            for (size_t c = 0; c < 6; c++) {
                hz.set(r, c, coin(rng));
            }
        }
        YSet y = build_y_set(hz);
        EXPECT_LE(y.size(), 18u);
        std::set<std::string> distinct;
        for (const auto &e : y) {
            EXPECT_TRUE(e.vec.any());
            BitVector expect(6);
            for (size_t c = 0; c < e.cut; c++) {
                expect.set(c, hz.get(e.row, c));
            }
            EXPECT_EQ(e.vec, expect);
            distinct.insert(e.vec.to_string());
        }
        EXPECT_EQ(distinct.size(), y.size());
    }
}

TEST(DecodeMinWeight, steane_single_errors) {
    CssCode s = CssCode::steane();
    EXPECT_EQ(decode_min_weight(s, BitVector(3)), BitVector(7));
    for (size_t q = 0; q < 7; q++) {
        BitVector e(7);
        e.flip(q);
        BitVector c = decode_min_weight(s, s.hx.multiply(e));
        EXPECT_EQ(c.weight(), 1u);
        EXPECT_TRUE(in_rowspace(s.hz, e ^ c));
    }
}

TEST(DecodeMinWeight, optimal_against_enumeration) {
    Rng rng(9);
    for (int t = 0; t < 40; t++) {
        CssCode c = sample_css(9, 4, 4, rng);
        for (uint64_t s = 0; s < 16; s++) {
            BitVector syn(4);
            for (size_t i = 0; i < 4; i++) {
                syn.set(i, s >> i & 1);
            }
            size_t best = brute_min_weight_with_syndrome(c.hx, syn);
            if (best == SIZE_MAX) {
                EXPECT_THROW(decode_min_weight(c, syn), std::domain_error);
                continue;
            }
            BitVector d = decode_min_weight(c, syn);
            EXPECT_EQ(c.hx.multiply(d), syn);
            EXPECT_EQ(d.weight(), best);
        }
    }
}

TEST(DecodeMinYWeight, minimal_against_small_subsets) {
    Rng rng(10);
    for (int t = 0; t < 30; t++) {
        CssCode c = sample_css(7, 3, 3, rng);
        YSet y = build_y_set(c.hz);
        EXPECT_EQ(decode_min_y_weight(c, BitVector(3)), BitVector(7));
        for (size_t i = 0; i < y.size(); i++) {
            BitVector syn = c.hx.multiply(y[i].vec);
            BitVector d = decode_min_y_weight(c, syn);
            EXPECT_EQ(c.hx.multiply(d), syn);
            EXPECT_LE(y_weight_upper_bound(y, d, 1), 1u) << "single element not found at weight 1";
            for (size_t j = i + 1; j < y.size(); j++) {
                BitVector syn2 = c.hx.multiply(y[i].vec ^ y[j].vec);
                BitVector d2 = decode_min_y_weight(c, syn2);
                EXPECT_EQ(c.hx.multiply(d2), syn2);
                EXPECT_LE(y_weight_upper_bound(y, d2, 2), 2u);
            }
        }
    }
}

TEST(InputDecoder, matches_direct_decoders) {
    Rng rng(11);
    for (int t = 0; t < 20; t++) {
        CssCode c = sample_css(9, 4, 4, rng);
        InputDecoder minw(c, InputDecoder::Kind::MinWeight);
        InputDecoder miny(c, InputDecoder::Kind::MinYWeight);
        for (uint64_t s = 0; s < 16; s++) {
            BitVector syn(4);
            for (size_t i = 0; i < 4; i++) {
                syn.set(i, s >> i & 1);
            }
            if (brute_min_weight_with_syndrome(c.hx, syn) == SIZE_MAX) {
                continue;
            }
            EXPECT_EQ(minw.decode(syn), decode_min_weight(c, syn));
            // Y elements need not span every syndrome.
            BitMatrix ysyn(0, 4);
            for (const YElement &y : build_y_set(c.hz)) {
                ysyn.append_row(c.hx.multiply(y.vec));
            }
            if (in_rowspace(ysyn, syn)) {
                EXPECT_EQ(c.hx.multiply(miny.decode(syn)), syn);
            } else {
                EXPECT_THROW(miny.decode(syn), std::domain_error);
            }
        }
    }
}

TEST(LogicalPairs, symplectic) {
    Rng rng(12);
    for (int t = 0; t < 30; t++) {
        CssCode c = sample_css(9, 3, 3, rng);
        SymplecticBasis b = logical_pairs(c);
        ASSERT_EQ(b.z.size(), c.k());
        ASSERT_EQ(b.x.size(), c.k());
        for (size_t i = 0; i < c.k(); i++) {
            EXPECT_FALSE(c.hx.multiply(b.z[i]).any());
            EXPECT_FALSE(c.hz.multiply(b.x[i]).any());
            for (size_t j = 0; j < c.k(); j++) {
                EXPECT_EQ(b.z[i].dot(b.x[j]), i == j);
            }
        }
    }
}
