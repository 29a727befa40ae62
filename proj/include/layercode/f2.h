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

#ifndef LAYERCODE_F2_H
#define LAYERCODE_F2_H

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "layercode/rng.h"

namespace layercode {

/// A fixed-length vector over F2, packed into 64-bit words.
class BitVector {
   public:
    BitVector() = default;
    explicit BitVector(size_t length);

    static BitVector from_string(std::string_view bits);
    static BitVector from_support(size_t length, const std::vector<size_t> &support);

    size_t size() const {
        return length_;
    }
    bool get(size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1;
    }
    void set(size_t i, bool value);
    void flip(size_t i) {
        words_[i >> 6] ^= uint64_t{1} << (i & 63);
    }
    void clear();

    size_t weight() const;
    bool any() const;
    /// Parity of the bitwise AND.
    bool dot(const BitVector &other) const;
    std::vector<size_t> support() const;
    std::string to_string() const;

    BitVector &operator^=(const BitVector &other);
    BitVector operator^(const BitVector &other) const;
    bool operator==(const BitVector &other) const;
    bool operator!=(const BitVector &other) const {
        return !(*this == other);
    }
    bool operator<(const BitVector &other) const;

    uint64_t *words() {
        return words_.data();
    }
    const uint64_t *words() const {
        return words_.data();
    }
    size_t num_words() const {
        return words_.size();
    }

   private:
    size_t length_ = 0;
    std::vector<uint64_t> words_;
};

/// Dense row-major matrix over F2.
class BitMatrix {
   public:
    BitMatrix() = default;
    BitMatrix(size_t rows, size_t cols);

    static BitMatrix identity(size_t n);
    static BitMatrix from_rows(const std::vector<BitVector> &rows, size_t cols);
    static BitMatrix from_strings(const std::vector<std::string> &rows);

    size_t rows() const {
        return rows_;
    }
    size_t cols() const {
        return cols_;
    }
    size_t stride() const {
        return stride_;
    }

    bool get(size_t r, size_t c) const {
        return (data_[r * stride_ + (c >> 6)] >> (c & 63)) & 1;
    }
    void set(size_t r, size_t c, bool value);
    void flip(size_t r, size_t c) {
        data_[r * stride_ + (c >> 6)] ^= uint64_t{1} << (c & 63);
    }

    uint64_t *row_words(size_t r) {
        return data_.data() + r * stride_;
    }
    const uint64_t *row_words(size_t r) const {
        return data_.data() + r * stride_;
    }
    BitVector row(size_t r) const;
    void set_row(size_t r, const BitVector &v);
    void append_row(const BitVector &v);
    void xor_row_into(size_t src, size_t dst);
    void swap_rows(size_t a, size_t b);
    size_t row_weight(size_t r) const;
    size_t col_weight(size_t c) const;

    BitMatrix transposed() const;
    /// this * v, with v a column vector of length cols().
    BitVector multiply(const BitVector &v) const;
    /// this * other.
    BitMatrix multiply(const BitMatrix &other) const;
    bool is_zero() const;

    bool operator==(const BitMatrix &other) const;
    bool operator!=(const BitMatrix &other) const {
        return !(*this == other);
    }

    /// "rows cols" header then one 0/1 string per row.
    void write_text(std::ostream &out) const;
    static BitMatrix read_text(std::istream &in);
    std::string to_text() const;
    static BitMatrix from_text(const std::string &text);

   private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    size_t stride_ = 0;
    std::vector<uint64_t> data_;
};

/// Reduced row echelon form with the pivot column of each nonzero row.
struct Echelon {
    BitMatrix reduced;
    std::vector<size_t> pivots;
};

Echelon row_reduce(BitMatrix m);
size_t rank(const BitMatrix &m);
/// Some x with m x = b, free variables set to 0; absent when inconsistent.
std::optional<BitVector> solve(const BitMatrix &m, const BitVector &b);
BitMatrix kernel_basis(const BitMatrix &m);
bool in_rowspace(const BitMatrix &m, const BitVector &v);
std::optional<BitMatrix> inverse(const BitMatrix &m);
/// Rows drawn independently and uniformly from ker(hz).
BitMatrix sample_orthogonal(const BitMatrix &hz, size_t row_count, Rng &rng);

/// Incremental echelon basis used for repeated span-membership queries.
class RowReducer {
   public:
    explicit RowReducer(size_t cols);
    /// Reduces v against the stored basis in place.
    void reduce(BitVector &v) const;
    bool contains(const BitVector &v) const;
    /// Adds v if independent; returns whether it was.
    bool insert(BitVector v);
    size_t rank() const {
        return basis_.size();
    }

   private:
    size_t cols_;
    std::vector<BitVector> basis_;
    std::vector<size_t> pivots_;
};

/// Rank of a sparse matrix given as sorted column-index lists.
/// Uses greedy low-fill pivoting; suited to large geometrically local
/// check matrices where dense elimination is too slow.
size_t sparse_rank(size_t cols, std::vector<std::vector<uint32_t>> rows);

}  // namespace layercode

#endif
