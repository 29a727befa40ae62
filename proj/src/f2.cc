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

#include <algorithm>
#include <bit>
#include <functional>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace layercode {

namespace {

size_t words_for(size_t bits) {
    return (bits + 63) >> 6;
}

}  // namespace

BitVector::BitVector(size_t length) : length_(length), words_(words_for(length), 0) {
}

BitVector BitVector::from_string(std::string_view bits) {
    BitVector v(bits.size());
    for (size_t i = 0; i < bits.size(); i++) {
        if (bits[i] == '1') {
            v.flip(i);
        } else if (bits[i] != '0') {
            throw std::invalid_argument("bit string contains a character other than 0 or 1");
        }
    }
    return v;
}

BitVector BitVector::from_support(size_t length, const std::vector<size_t> &support) {
    BitVector v(length);
    for (size_t i : support) {
        if (i >= length) {
            throw std::out_of_range("support index exceeds vector length");
        }
        v.flip(i);
    }
    return v;
}

void BitVector::set(size_t i, bool value) {
    uint64_t mask = uint64_t{1} << (i & 63);
    if (value) {
        words_[i >> 6] |= mask;
    } else {
        words_[i >> 6] &= ~mask;
    }
}

void BitVector::clear() {
    std::fill(words_.begin(), words_.end(), 0);
}

size_t BitVector::weight() const {
    size_t w = 0;
    for (uint64_t word : words_) {
        w += std::popcount(word);
    }
    return w;
}

bool BitVector::any() const {
    for (uint64_t word : words_) {
        if (word) {
            return true;
        }
    }
    return false;
}

bool BitVector::dot(const BitVector &other) const {
    if (other.length_ != length_) {
        throw std::invalid_argument("dot: length mismatch");
    }
    uint64_t acc = 0;
    for (size_t k = 0; k < words_.size(); k++) {
        acc ^= words_[k] & other.words_[k];
    }
    return std::popcount(acc) & 1;
}

std::vector<size_t> BitVector::support() const {
    std::vector<size_t> out;
    for (size_t k = 0; k < words_.size(); k++) {
        uint64_t word = words_[k];
        while (word) {
            out.push_back((k << 6) + std::countr_zero(word));
            word &= word - 1;
        }
    }
    return out;
}

std::string BitVector::to_string() const {
    std::string s(length_, '0');
    for (size_t i = 0; i < length_; i++) {
        if (get(i)) {
            s[i] = '1';
        }
    }
    return s;
}

BitVector &BitVector::operator^=(const BitVector &other) {
    if (other.length_ != length_) {
        throw std::invalid_argument("xor: length mismatch");
    }
    for (size_t k = 0; k < words_.size(); k++) {
        words_[k] ^= other.words_[k];
    }
    return *this;
}

BitVector BitVector::operator^(const BitVector &other) const {
    BitVector r = *this;
    r ^= other;
    return r;
}

bool BitVector::operator==(const BitVector &other) const {
    return length_ == other.length_ && words_ == other.words_;
}

bool BitVector::operator<(const BitVector &other) const {
    if (length_ != other.length_) {
        return length_ < other.length_;
    }
    return to_string() < other.to_string();
}

BitMatrix::BitMatrix(size_t rows, size_t cols)
    : rows_(rows), cols_(cols), stride_(words_for(cols)), data_(rows * words_for(cols), 0) {
}

BitMatrix BitMatrix::identity(size_t n) {
    BitMatrix m(n, n);
    for (size_t i = 0; i < n; i++) {
        m.flip(i, i);
    }
    return m;
}

BitMatrix BitMatrix::from_rows(const std::vector<BitVector> &rows, size_t cols) {
    BitMatrix m(rows.size(), cols);
    for (size_t r = 0; r < rows.size(); r++) {
        m.set_row(r, rows[r]);
    }
    return m;
}

BitMatrix BitMatrix::from_strings(const std::vector<std::string> &rows) {
    size_t cols = rows.empty() ? 0 : rows[0].size();
    BitMatrix m(rows.size(), cols);
    for (size_t r = 0; r < rows.size(); r++) {
        if (rows[r].size() != cols) {
            throw std::invalid_argument("ragged rows");
        }
        m.set_row(r, BitVector::from_string(rows[r]));
    }
    return m;
}

void BitMatrix::set(size_t r, size_t c, bool value) {
    uint64_t mask = uint64_t{1} << (c & 63);
    uint64_t &word = data_[r * stride_ + (c >> 6)];
    if (value) {
        word |= mask;
    } else {
        word &= ~mask;
    }
}

BitVector BitMatrix::row(size_t r) const {
    BitVector v(cols_);
    std::copy(row_words(r), row_words(r) + stride_, v.words());
    return v;
}

void BitMatrix::set_row(size_t r, const BitVector &v) {
    if (v.size() != cols_) {
        throw std::invalid_argument("set_row: length mismatch");
    }
    std::copy(v.words(), v.words() + stride_, row_words(r));
}

void BitMatrix::append_row(const BitVector &v) {
    if (v.size() != cols_) {
        throw std::invalid_argument("append_row: length mismatch");
    }
    data_.insert(data_.end(), v.words(), v.words() + stride_);
    rows_++;
}

void BitMatrix::xor_row_into(size_t src, size_t dst) {
    const uint64_t *s = row_words(src);
    uint64_t *d = row_words(dst);
    for (size_t k = 0; k < stride_; k++) {
        d[k] ^= s[k];
    }
}

void BitMatrix::swap_rows(size_t a, size_t b) {
    if (a == b) {
        return;
    }
    std::swap_ranges(row_words(a), row_words(a) + stride_, row_words(b));
}

size_t BitMatrix::row_weight(size_t r) const {
    size_t w = 0;
    for (size_t k = 0; k < stride_; k++) {
        w += std::popcount(row_words(r)[k]);
    }
    return w;
}

size_t BitMatrix::col_weight(size_t c) const {
    size_t w = 0;
    for (size_t r = 0; r < rows_; r++) {
        w += get(r, c);
    }
    return w;
}

BitMatrix BitMatrix::transposed() const {
    BitMatrix t(cols_, rows_);
    for (size_t r = 0; r < rows_; r++) {
        const uint64_t *w = row_words(r);
        for (size_t k = 0; k < stride_; k++) {
            uint64_t word = w[k];
            while (word) {
                size_t c = (k << 6) + std::countr_zero(word);
                t.flip(c, r);
                word &= word - 1;
            }
        }
    }
    return t;
}

BitVector BitMatrix::multiply(const BitVector &v) const {
    if (v.size() != cols_) {
        throw std::invalid_argument("multiply: length mismatch");
    }
    BitVector out(rows_);
    for (size_t r = 0; r < rows_; r++) {
        const uint64_t *w = row_words(r);
        uint64_t acc = 0;
        for (size_t k = 0; k < stride_; k++) {
            acc ^= w[k] & v.words()[k];
        }
        if (std::popcount(acc) & 1) {
            out.flip(r);
        }
    }
    return out;
}

BitMatrix BitMatrix::multiply(const BitMatrix &other) const {
    if (other.rows_ != cols_) {
        throw std::invalid_argument("multiply: shape mismatch");
    }
    BitMatrix out(rows_, other.cols_);
    for (size_t r = 0; r < rows_; r++) {
        for (size_t c = 0; c < cols_; c++) {
            if (get(r, c)) {
                uint64_t *d = out.row_words(r);
                const uint64_t *s = other.row_words(c);
                for (size_t k = 0; k < out.stride_; k++) {
                    d[k] ^= s[k];
                }
            }
        }
    }
    return out;
}

bool BitMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](uint64_t w) { return w == 0; });
}

bool BitMatrix::operator==(const BitMatrix &other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

void BitMatrix::write_text(std::ostream &out) const {
    out << rows_ << " " << cols_ << "\n";
    for (size_t r = 0; r < rows_; r++) {
        out << row(r).to_string() << "\n";
    }
}

BitMatrix BitMatrix::read_text(std::istream &in) {
    size_t rows, cols;
    if (!(in >> rows >> cols)) {
        throw std::invalid_argument("matrix text: missing 'rows cols' header");
    }
    BitMatrix m(rows, cols);
    for (size_t r = 0; r < rows; r++) {
        std::string line;
        if (cols == 0) {
            continue;
        }
        if (!(in >> line) || line.size() != cols) {
            throw std::invalid_argument("matrix text: bad row " + std::to_string(r));
        }
        m.set_row(r, BitVector::from_string(line));
    }
    return m;
}

std::string BitMatrix::to_text() const {
    std::ostringstream ss;
    write_text(ss);
    return ss.str();
}

BitMatrix BitMatrix::from_text(const std::string &text) {
    std::istringstream ss(text);
    return read_text(ss);
}

Echelon row_reduce(BitMatrix m) {
    Echelon e;
    size_t r = 0;
    for (size_t c = 0; c < m.cols() && r < m.rows(); c++) {
        size_t p = r;
        while (p < m.rows() && !m.get(p, c)) {
            p++;
        }
        if (p == m.rows()) {
            continue;
        }
        m.swap_rows(p, r);
        for (size_t i = 0; i < m.rows(); i++) {
            if (i != r && m.get(i, c)) {
                m.xor_row_into(r, i);
            }
        }
        e.pivots.push_back(c);
        r++;
    }
    e.reduced = std::move(m);
    return e;
}

size_t rank(const BitMatrix &m) {
    RowReducer reducer(m.cols());
    for (size_t r = 0; r < m.rows(); r++) {
        reducer.insert(m.row(r));
    }
    return reducer.rank();
}

std::optional<BitVector> solve(const BitMatrix &m, const BitVector &b) {
    if (b.size() != m.rows()) {
        throw std::invalid_argument("solve: right-hand side length must equal row count");
    }
    BitMatrix aug(m.rows(), m.cols() + 1);
    for (size_t r = 0; r < m.rows(); r++) {
        for (size_t c = 0; c < m.cols(); c++) {
            if (m.get(r, c)) {
                aug.flip(r, c);
            }
        }
        if (b.get(r)) {
            aug.flip(r, m.cols());
        }
    }
    Echelon e = row_reduce(std::move(aug));
    BitVector x(m.cols());
    for (size_t i = 0; i < e.pivots.size(); i++) {
        if (e.pivots[i] == m.cols()) {
            return std::nullopt;
        }
        if (e.reduced.get(i, m.cols())) {
            x.flip(e.pivots[i]);
        }
    }
    return x;
}

BitMatrix kernel_basis(const BitMatrix &m) {
    Echelon e = row_reduce(m);
    std::vector<int64_t> pivot_row(m.cols(), -1);
    for (size_t i = 0; i < e.pivots.size(); i++) {
        pivot_row[e.pivots[i]] = (int64_t)i;
    }
    BitMatrix basis(0, m.cols());
    for (size_t f = 0; f < m.cols(); f++) {
        if (pivot_row[f] >= 0) {
            continue;
        }
        BitVector v(m.cols());
        v.flip(f);
        for (size_t i = 0; i < e.pivots.size(); i++) {
            if (e.reduced.get(i, f)) {
                v.flip(e.pivots[i]);
            }
        }
        basis.append_row(v);
    }
    return basis;
}

bool in_rowspace(const BitMatrix &m, const BitVector &v) {
    if (v.size() != m.cols()) {
        throw std::invalid_argument("in_rowspace: length mismatch");
    }
    RowReducer reducer(m.cols());
    for (size_t r = 0; r < m.rows(); r++) {
        reducer.insert(m.row(r));
    }
    return reducer.contains(v);
}

std::optional<BitMatrix> inverse(const BitMatrix &m) {
    size_t n = m.rows();
    if (m.cols() != n) {
        throw std::invalid_argument("inverse: matrix must be square");
    }
    BitMatrix aug(n, 2 * n);
    for (size_t r = 0; r < n; r++) {
        for (size_t c = 0; c < n; c++) {
            if (m.get(r, c)) {
                aug.flip(r, c);
            }
        }
        aug.flip(r, n + r);
    }
    Echelon e = row_reduce(std::move(aug));
    if (e.pivots.size() < n || e.pivots[n - 1] >= n) {
        return std::nullopt;
    }
    BitMatrix inv(n, n);
    for (size_t r = 0; r < n; r++) {
        for (size_t c = 0; c < n; c++) {
            if (e.reduced.get(r, n + c)) {
                inv.flip(r, c);
            }
        }
    }
    return inv;
}

BitMatrix sample_orthogonal(const BitMatrix &hz, size_t row_count, Rng &rng) {
    BitMatrix basis = kernel_basis(hz);
    BitMatrix out(row_count, hz.cols());
    std::bernoulli_distribution coin(0.5);
    for (size_t r = 0; r < row_count; r++) {
        for (size_t b = 0; b < basis.rows(); b++) {
            if (coin(rng)) {
                const uint64_t *s = basis.row_words(b);
                uint64_t *d = out.row_words(r);
                for (size_t k = 0; k < out.stride(); k++) {
                    d[k] ^= s[k];
                }
            }
        }
    }
    return out;
}

RowReducer::RowReducer(size_t cols) : cols_(cols) {
}

void RowReducer::reduce(BitVector &v) const {
    if (v.size() != cols_) {
        throw std::invalid_argument("RowReducer: length mismatch");
    }
    for (size_t i = 0; i < basis_.size(); i++) {
        if (v.get(pivots_[i])) {
            v ^= basis_[i];
        }
    }
}

bool RowReducer::contains(const BitVector &v) const {
    BitVector w = v;
    reduce(w);
    return !w.any();
}

bool RowReducer::insert(BitVector v) {
    reduce(v);
    if (!v.any()) {
        return false;
    }
    size_t p = v.support().front();
    // Keep the basis fully reduced on pivots so reduce() is a single pass.
    for (size_t i = 0; i < basis_.size(); i++) {
        if (basis_[i].get(p)) {
            basis_[i] ^= v;
        }
    }
    basis_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
}

size_t sparse_rank(size_t cols, std::vector<std::vector<uint32_t>> rows) {
    std::vector<std::vector<uint32_t>> col_rows(cols);
    std::vector<uint32_t> count(cols, 0);
    for (uint32_t r = 0; r < rows.size(); r++) {
        auto &row = rows[r];
        std::sort(row.begin(), row.end());
        // Duplicate entries cancel over F2.
        std::vector<uint32_t> cleaned;
        for (size_t i = 0; i < row.size();) {
            size_t j = i;
            while (j < row.size() && row[j] == row[i]) {
                j++;
            }
            if ((j - i) & 1) {
                if (row[i] >= cols) {
                    throw std::out_of_range("sparse_rank: column index out of range");
                }
                cleaned.push_back(row[i]);
            }
            i = j;
        }
        row = std::move(cleaned);
        for (uint32_t c : row) {
            col_rows[c].push_back(r);
            count[c]++;
        }
    }

    using Entry = std::pair<uint32_t, uint32_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;
    for (uint32_t c = 0; c < cols; c++) {
        if (count[c]) {
            heap.push({count[c], c});
        }
    }
    std::vector<char> alive(rows.size(), 1);
    std::vector<uint32_t> stamp(rows.size(), UINT32_MAX);
    std::vector<uint32_t> merged;
    size_t result = 0;
    while (!heap.empty()) {
        auto [cnt, c] = heap.top();
        heap.pop();
        if (cnt == 0 || count[c] != cnt) {
            continue;
        }
        std::vector<uint32_t> live;
        for (uint32_t r : col_rows[c]) {
            if (alive[r] && stamp[r] != c && std::binary_search(rows[r].begin(), rows[r].end(), c)) {
                stamp[r] = c;
                live.push_back(r);
            }
        }
        col_rows[c].clear();
        uint32_t p = live[0];
        for (uint32_t r : live) {
            if (rows[r].size() < rows[p].size() || (rows[r].size() == rows[p].size() && r < p)) {
                p = r;
            }
        }
        result++;
        const auto &prow = rows[p];
        for (uint32_t r : live) {
            if (r == p) {
                continue;
            }
            merged.clear();
            const auto &a = rows[r];
            size_t i = 0, j = 0;
            while (i < a.size() || j < prow.size()) {
                if (j == prow.size() || (i < a.size() && a[i] < prow[j])) {
                    merged.push_back(a[i++]);
                } else if (i == a.size() || prow[j] < a[i]) {
                    uint32_t x = prow[j++];
                    merged.push_back(x);
                    col_rows[x].push_back(r);
                    count[x]++;
                    heap.push({count[x], x});
                } else {
                    uint32_t x = a[i];
                    i++;
                    j++;
                    count[x]--;
                    if (x != c) {
                        heap.push({count[x], x});
                    }
                }
            }
            rows[r].swap(merged);
        }
        for (uint32_t x : prow) {
            count[x]--;
            if (x != c) {
                heap.push({count[x], x});
            }
        }
        alive[p] = 0;
        rows[p].clear();
    }
    return result;
}

}  // namespace layercode
