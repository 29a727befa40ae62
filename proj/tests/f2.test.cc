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

#include "layercode/f2.h"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <sstream>

using namespace layercode;

namespace {

BitMatrix random_matrix(size_t rows, size_t cols, Rng &rng) {
    BitMatrix m(rows, cols);
    std::bernoulli_distribution coin(0.5);
    for (size_t r = 0; r < rows; r++) {
        for (size_t c = 0; c < cols; c++) {
            m.set(r, c, coin(rng));
        }
    }
    return m;
}

BitVector from_mask(size_t n, uint64_t mask) {
    BitVector v(n);
    for (size_t i = 0; i < n; i++) {
        if (mask >> i & 1) {
            v.flip(i);
        }
    }
    return v;
}

// Rank by counting the span: 2^rank distinct combinations of the rows.
size_t rank_by_span(const BitMatrix &m) {
    std::vector<BitVector> span{BitVector(m.cols())};
    for (size_t r = 0; r < m.rows(); r++) {
        BitVector row = m.row(r);
        bool present = false;
        for (const auto &s : span) {
            present |= s == row;
        }
        if (present) {
            continue;
        }
        size_t k = span.size();
        for (size_t i = 0; i < k; i++) {
            span.push_back(span[i] ^ row);
        }
    }
    size_t rank = 0;
    while ((size_t{1} << rank) < span.size()) {
        rank++;
    }
    return rank;
}

}  // namespace

TEST(BitVector, weight_xor_and_support) {
    BitVector a = BitVector::from_string("1011001");
    BitVector b = BitVector::from_string("0110011");
    EXPECT_EQ(a.weight(), 4u);
    EXPECT_EQ((a ^ b).to_string(), "1101010");
    EXPECT_EQ((a ^ b) ^ b, a);
    EXPECT_EQ(a ^ BitVector(7), a);
    EXPECT_EQ(a.support(), (std::vector<size_t>{0, 2, 3, 6}));
    EXPECT_EQ(a.dot(b), false);
    EXPECT_THROW(BitVector::from_string("10x"), std::invalid_argument);
    EXPECT_THROW(a.dot(BitVector(3)), std::invalid_argument);
}

TEST(BitVector, long_vectors_cross_word_boundaries) {
    BitVector v = BitVector::from_support(200, {0, 63, 64, 127, 199});
    EXPECT_EQ(v.weight(), 5u);
    EXPECT_TRUE(v.get(64));
    EXPECT_FALSE(v.get(65));
    v.flip(64);
    EXPECT_EQ(v.weight(), 4u);
    EXPECT_EQ(BitVector::from_string(v.to_string()), v);
}

TEST(BitMatrix, rank_examples) {
    EXPECT_EQ(rank(BitMatrix::identity(3)), 3u);
    EXPECT_EQ(rank(BitMatrix(4, 4)), 0u);
    EXPECT_EQ(rank(BitMatrix::from_strings({"1111"})), 1u);
}

TEST(BitMatrix, rank_matches_span_enumeration) {
    Rng rng(11);
    for (int t = 0; t < 200; t++) {
        BitMatrix m = random_matrix(1 + t % 7, 1 + t % 9, rng);
        EXPECT_EQ(rank(m), rank_by_span(m));
    }
}

TEST(BitMatrix, rank_nullity) {
    Rng rng(12);
    for (int t = 0; t < 200; t++) {
        BitMatrix m = random_matrix(1 + t % 13, 1 + t % 17, rng);
        BitMatrix k = kernel_basis(m);
        EXPECT_EQ(rank(m) + k.rows(), m.cols());
        EXPECT_EQ(rank(k), k.rows());
        EXPECT_TRUE(m.multiply(k.transposed()).is_zero());
    }
}

TEST(BitMatrix, kernel_examples) {
    EXPECT_EQ(kernel_basis(BitMatrix::identity(5)).rows(), 0u);
    BitMatrix k = kernel_basis(BitMatrix(3, 3));
    EXPECT_EQ(k.rows(), 3u);
    EXPECT_EQ(rank(k), 3u);
    BitMatrix k4 = kernel_basis(BitMatrix::from_strings({"1111"}));
    ASSERT_EQ(k4.rows(), 3u);
    for (size_t r = 0; r < 3; r++) {
        EXPECT_EQ(k4.row_weight(r) % 2, 0u);
    }
    EXPECT_EQ(rank(k4), 3u);
}

TEST(BitMatrix, solve_examples) {
    BitVector b = BitVector::from_string("1011");
    auto x = solve(BitMatrix::identity(4), b);
    ASSERT_TRUE(x);
    EXPECT_EQ(*x, b);
    EXPECT_FALSE(solve(BitMatrix(4, 4), b));
    EXPECT_THROW(solve(BitMatrix(3, 4), b), std::invalid_argument);
}

TEST(BitMatrix, solve_matches_exhaustive_search) {
    Rng rng(13);
    for (int t = 0; t < 300; t++) {
        BitMatrix m = random_matrix(6, 8, rng);
        BitVector b = random_matrix(1, 6, rng).row(0);
        bool exists = false;
        for (uint64_t mask = 0; mask < 256; mask++) {
            exists |= m.multiply(from_mask(8, mask)) == b;
        }
        auto x = solve(m, b);
        EXPECT_EQ(x.has_value(), exists);
        if (x) {
            EXPECT_EQ(m.multiply(*x), b);
        } else {
            // Inconsistent: the augmented matrix has larger rank.
            BitMatrix aug(6, 9);
            for (size_t r = 0; r < 6; r++) {
                for (size_t c = 0; c < 8; c++) {
                    aug.set(r, c, m.get(r, c));
                }
                aug.set(r, 8, b.get(r));
            }
            EXPECT_GT(rank(aug), rank(m));
        }
    }
}

TEST(BitMatrix, solve_sets_free_variables_to_zero) {
    // x0 + x1 = 1 with x1 free gives x = (1, 0).
    auto x = solve(BitMatrix::from_strings({"11"}), BitVector::from_string("1"));
    ASSERT_TRUE(x);
    EXPECT_EQ(x->to_string(), "10");
}

TEST(BitMatrix, in_rowspace_examples) {
    BitMatrix m = BitMatrix::from_strings({"1111"});
    EXPECT_TRUE(in_rowspace(m, BitVector(4)));
    EXPECT_TRUE(in_rowspace(m, m.row(0)));
    EXPECT_FALSE(in_rowspace(m, BitVector::from_string("1100")));
    EXPECT_THROW(in_rowspace(m, BitVector(3)), std::invalid_argument);
}

TEST(BitMatrix, text_round_trip) {
    Rng rng(14);
    BitMatrix m = random_matrix(5, 70, rng);
    EXPECT_EQ(BitMatrix::from_text(m.to_text()), m);
    EXPECT_EQ(BitMatrix::from_strings({"101", "011"}).to_text(), "2 3\n101\n011\n");
    EXPECT_THROW(BitMatrix::from_text("2 3\n101\n"), std::invalid_argument);
}

TEST(BitMatrix, inverse_of_random_invertible) {
    Rng rng(15);
    int found = 0;
    for (int t = 0; t < 100; t++) {
        BitMatrix m = random_matrix(6, 6, rng);
        auto inv = inverse(m);
        EXPECT_EQ(inv.has_value(), rank(m) == 6);
        if (inv) {
            found++;
            EXPECT_EQ(m.multiply(*inv), BitMatrix::identity(6));
        }
    }
    EXPECT_GT(found, 0);
}

TEST(SampleOrthogonal, always_orthogonal) {
    Rng rng(16);
    for (int t = 0; t < 100; t++) {
        BitMatrix hz = random_matrix(3, 9, rng);
        BitMatrix hx = sample_orthogonal(hz, 4, rng);
        EXPECT_TRUE(hx.multiply(hz.transposed()).is_zero());
    }
}

TEST(SampleOrthogonal, zero_constraint_gives_all_vectors) {
    Rng rng(17);
    std::map<std::string, int> counts;
    for (int t = 0; t < 4000; t++) {
        counts[sample_orthogonal(BitMatrix(1, 3), 1, rng).row(0).to_string()]++;
    }
    EXPECT_EQ(counts.size(), 8u);
}

TEST(SampleOrthogonal, uniform_over_kernel) {
    // ker(1111) has 8 elements; chi-squared with 7 dof at 3 sigma.
    Rng rng(18);
    BitMatrix hz = BitMatrix::from_strings({"1111"});
    std::map<std::string, int> counts;
    const int samples = 10000;
    for (int t = 0; t < samples; t++) {
        BitVector v = sample_orthogonal(hz, 1, rng).row(0);
        ASSERT_EQ(v.weight() % 2, 0u);
        counts[v.to_string()]++;
    }
    ASSERT_EQ(counts.size(), 8u);
    double chi2 = 0, e = samples / 8.0;
    for (auto &[k, c] : counts) {
        chi2 += (c - e) * (c - e) / e;
    }
    EXPECT_LT(chi2, 7 + 3 * std::sqrt(14.0));
}

TEST(RowReducer, matches_rank) {
    Rng rng(19);
    for (int t = 0; t < 50; t++) {
        BitMatrix m = random_matrix(10, 12, rng);
        RowReducer red(12);
        for (size_t r = 0; r < m.rows(); r++) {
            red.insert(m.row(r));
        }
        EXPECT_EQ(red.rank(), rank(m));
        for (size_t r = 0; r < m.rows(); r++) {
            EXPECT_TRUE(red.contains(m.row(r)));
        }
    }
}

TEST(SparseRank, matches_dense_rank) {
    Rng rng(20);
    for (int t = 0; t < 100; t++) {
        BitMatrix m = random_matrix(8 + t % 5, 15, rng);
        std::vector<std::vector<uint32_t>> rows;
        for (size_t r = 0; r < m.rows(); r++) {
            std::vector<uint32_t> row;
            for (size_t c : m.row(r).support()) {
                row.push_back((uint32_t)c);
            }
            rows.push_back(row);
        }
        EXPECT_EQ(sparse_rank(15, rows), rank(m));
    }
}
